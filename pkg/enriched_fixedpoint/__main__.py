"""Permite `python -m enriched_fixedpoint ...`."""

import sys

from .cli import main

sys.exit(main())
