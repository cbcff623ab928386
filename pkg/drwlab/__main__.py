import os

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'drwlab.settings.development')

from cli.commands import main  # noqa: E402

main()
