# drwlab/conf.py - Django settings bootstrap and logging
import logging
import os

import django
from django.conf import settings

ENVIRONMENT_VARIABLE = 'DJANGO_SETTINGS_MODULE'
DEFAULT_SETTINGS_MODULE = 'drwlab.settings.development'

logger = logging.getLogger(__name__)


def configure_logging(default=DEFAULT_SETTINGS_MODULE):
    """Point DJANGO_SETTINGS_MODULE at drwlab settings and run django.setup()

    django.setup() applies settings.LOGGING through LOGGING_CONFIG; the file
    handler needs LOG_DIR to exist first. With LOGGING_CONFIG = None logging
    is left alone.
    """
    os.environ.setdefault(ENVIRONMENT_VARIABLE, default)
    if settings.LOGGING_CONFIG is not None:
        settings.LOG_DIR.mkdir(parents=True, exist_ok=True)
    django.setup()
    logger.debug(f"Settings loaded from {settings.SETTINGS_MODULE}")
