"""
Script to run the nonface command line

    python run.py reproduce $NON_ORL_ROOT --base-seed 42 --format markdown --out tables.md
"""
import sys

from nonface.main import main

if __name__ == "__main__":
    sys.exit(main())
