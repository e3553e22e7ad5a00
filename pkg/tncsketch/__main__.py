"""Allow running the command line with python -m tncsketch."""

import sys

from .cli import main

sys.exit(main())
