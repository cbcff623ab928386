# core/decorators.py - Shared decorators
import logging
import time
from functools import wraps

from django.conf import settings

from core.exceptions import ContextMismatch

logger = logging.getLogger(__name__)


def timed(threshold=None):
    """Log calls slower than threshold seconds (settings default when None)"""

    def decorator(func):
        @wraps(func)
        def _wrapped(*args, **kwargs):
            start = time.perf_counter()
            result = func(*args, **kwargs)
            duration = time.perf_counter() - start
            limit = threshold
            if limit is None:
                limit = settings.DRWLAB_SLOW_CALL_SECONDS
            if duration > limit:
                logger.warning(f"Slow call: {func.__qualname__} took {duration:.2f}s")
            return result

        return _wrapped

    return decorator


def same_context(func):
    """Ensure both operands share ctx and degree"""

    @wraps(func)
    def _wrapped(x, y, *args, **kwargs):
        if x.ctx != y.ctx:
            raise ContextMismatch(f"Context mismatch: {x.ctx} vs {y.ctx}")
        if getattr(x, 'q', None) != getattr(y, 'q', None):
            raise ContextMismatch(f"Degree mismatch: {x.q} vs {y.q}")
        return func(x, y, *args, **kwargs)

    return _wrapped
