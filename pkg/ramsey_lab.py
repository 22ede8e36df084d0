#!/usr/bin/env python3
"""
Ramsey Lab command-line entry point.

Run from the project root:
    python ramsey_lab.py ramsey --g k2n:1 --h wheel:3 --expect 7
"""

import sys

from src.cli.main import main


if __name__ == '__main__':
    sys.exit(main())
