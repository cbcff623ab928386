# conftest.py
import os

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'drwlab.settings.testing')

import django  # noqa: E402
from django.conf import settings  # noqa: E402
from hypothesis import settings as hypothesis_settings  # noqa: E402

django.setup()

hypothesis_settings.register_profile('drwlab', max_examples=settings.DRWLAB_HYPOTHESIS_MAX_EXAMPLES, deadline=None)
hypothesis_settings.load_profile('drwlab')
