# drwlab/settings/production.py
"""
Production settings for long verification sweeps
"""

from .base import *

DEBUG = False

DRWLAB_JOBS = config('DRWLAB_JOBS', default=4, cast=int)
DRWLAB_SLOW_CALL_SECONDS = config('DRWLAB_SLOW_CALL_SECONDS', default=10.0, cast=float)

LOGGING['handlers']['console']['level'] = 'ERROR'
