"""Output formatting, chart layout, and CLI defaults."""

# CSV output
CSV_FLOAT_FORMAT = "{:.11e}"  # 12 significant digits
CSV_LINE_TERMINATOR = "\n"
CSV_DELIMITER = ","

DEFAULT_THREADS = 1
LOG_FORMAT = "%(asctime)s %(levelname)s %(message)s"

# Exit codes
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_CONVERGENCE_FAILURE = 3
EXIT_PARTIAL_SWEEP = 4

# Chart rendering (pixels)
CHART_WIDTH = 1000
CHART_HEIGHT = 640
CHART_MARGIN_LEFT = 90
CHART_MARGIN_RIGHT = 30
CHART_MARGIN_TOP = 50
CHART_MARGIN_BOTTOM = 70
CHART_TICKS = 6

TITLE_FONT_SIZE = 32
TEXT_FONT_SIZE = 22

BG_COLOR = (22, 22, 28)
AXIS_COLOR = (200, 200, 210)
GRID_COLOR = (45, 45, 55)
TEXT_COLOR = (230, 230, 240)
SERIES_COLORS = [
    (140, 220, 255),
    (255, 150, 110),
    (150, 230, 140),
    (230, 200, 90),
    (200, 140, 230),
    (235, 235, 235),
]
