"""Command-line entry point: python app.py <command> [options]."""

import sys

from tridiag.cli import main

if __name__ == "__main__":
    sys.exit(main())
