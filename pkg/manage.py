#!/usr/bin/env python
"""drwlab's command-line utility."""
import os


def main():
    """Run drwlab commands."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'drwlab.settings.development')
    try:
        import django  # noqa: F401
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    from cli.commands import main as run
    run()


if __name__ == '__main__':
    main()
