"""Numerical tuning constants (solver tolerances, grids, iteration caps)."""

# Airy kernel
AIRY_UNSCALED_LIMIT = 1e4  # |z| beyond which only scaled evaluation is supported
AIRY_TAYLOR_REACH = 1.0  # |Im z| * sqrt(max(1, |Re z|)) below which the real-axis Taylor path is used
AIRY_TAYLOR_MAX_TERMS = 200
AIRY_TAYLOR_TOL = 1e-17

# Resonance solver
NEWTON_MAX_ITER = 100
NEWTON_RESIDUAL_TOL = 1e-9
NEWTON_STEP_TOL = 1e-10
NEWTON_IMAG_REL_TOL = 1e-8
NEWTON_MAX_HALVINGS = 30
ROOT_DISTINCT_TOL = 1e-6
DEFAULT_N_MAX = 8
BRACKET_POINTS_PER_UNIT = 50
BRACKET_MARGIN = 2.0
FALLBACK_IMAG_SEED = -1e-3

# Flux model
OVERLAP_NODES = 200
SWEEP_MIN_SUCCESS = 0.9
LOG_TAU_FLOOR = -50.0

# Roughness model
EF_ASSUMPTION_FACTOR = 10.0
SCALING_SLOPE = 17.0 / 8.0

# Shooting oracle
SHOOTING_STEP = 1e-3
SHOOTING_MAX_STEP = 1e-3
SHOOTING_EXTERIOR_REACH = 15.0
SHOOTING_MIN_EXTERIOR_REACH = 5.0
SHOOTING_INTERIOR_MARGIN = 4.0
SHOOTING_RENORM = 1e100
SECANT_MAX_ITER = 60
SECANT_TOL = 1e-12
SECANT_FIRST_STEP = 1e-3
ORACLE_IMAG_FLOOR = 1e-6  # widths below this are compared on the real part only
