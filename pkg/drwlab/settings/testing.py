# drwlab/settings/testing.py
"""
Testing settings
"""

from .base import *

# Smaller budgets keep runaway cases fast
DRWLAB_TERM_BUDGET = 200_000
DRWLAB_MAX_COORDINATES = 20_000

DRWLAB_DEFAULT_WINDOW = '-6:6'
DRWLAB_WINDOW_GUARD = 2
DRWLAB_JOBS = 1

# Disable logging during tests
LOGGING_CONFIG = None

# Keep slow-call warnings out of captured CLI output
DRWLAB_SLOW_CALL_SECONDS = 600.0
