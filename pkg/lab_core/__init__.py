"""Run orchestration for the command-line subcommands."""
