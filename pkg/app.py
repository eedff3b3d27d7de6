#!/usr/bin/env python3
"""
igusa-locus
Command-line calculator for quaternionic loci in Igusa's threefold.

This is the main entry point for the application.
Run with: python app.py analyze 6
"""

import sys

from igusa_locus.cli import main


if __name__ == "__main__":
    sys.exit(main())
