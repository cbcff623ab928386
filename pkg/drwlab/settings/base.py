# drwlab/settings/base.py
"""
Base settings for drwlab.
"""

from pathlib import Path
from decouple import config

BASE_DIR = Path(__file__).resolve().parent.parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='drwlab-insecure-change-me')

DEBUG = config('DEBUG', default=False, cast=bool)

# Application definition
INSTALLED_APPS = [
    'rest_framework',
]

USE_TZ = True

# Arithmetic budgets
DRWLAB_TERM_BUDGET = config('DRWLAB_TERM_BUDGET', default=2_000_000, cast=int)
DRWLAB_MAX_COORDINATES = config('DRWLAB_MAX_COORDINATES', default=200_000, cast=int)

# Windows
DRWLAB_WINDOW_GUARD = config('DRWLAB_WINDOW_GUARD', default=4, cast=int)
DRWLAB_DEFAULT_WINDOW = config('DRWLAB_DEFAULT_WINDOW', default='-12:12')

# Runner
DRWLAB_JOBS = config('DRWLAB_JOBS', default=1, cast=int)
DRWLAB_SLOW_CALL_SECONDS = config('DRWLAB_SLOW_CALL_SECONDS', default=1.0, cast=float)

# Property tests
DRWLAB_HYPOTHESIS_MAX_EXAMPLES = config('DRWLAB_HYPOTHESIS_MAX_EXAMPLES', default=50, cast=int)

# Logging
DRWLAB_LOG_LEVEL = config('DRWLAB_LOG_LEVEL', default='INFO')
LOG_DIR = Path(config('DRWLAB_LOG_DIR', default=str(BASE_DIR / 'logs')))

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': DRWLAB_LOG_LEVEL,
            'class': 'logging.FileHandler',
            'filename': str(LOG_DIR / 'drwlab.log'),
            'formatter': 'verbose',
        },
        'console': {
            'level': 'WARNING',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console', 'file'],
        'level': DRWLAB_LOG_LEVEL,
    },
}

LOGGING_CONFIG = 'logging.config.dictConfig'
