# drwlab/settings/development.py
"""
Development settings
"""

from .base import *

DEBUG = True

DRWLAB_LOG_LEVEL = 'DEBUG'
LOGGING['root']['level'] = 'DEBUG'
LOGGING['handlers']['file']['level'] = 'DEBUG'
