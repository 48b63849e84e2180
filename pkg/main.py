"""Entry point for the centrifugal quantum states toolkit."""

from ui.cli import run


def main() -> None:
    run()


if __name__ == "__main__":
    main()
