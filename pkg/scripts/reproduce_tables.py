#!/usr/bin/env python3
"""Recompute all six benchmark tables and print them with diffs.

Usage: python scripts/reproduce_tables.py [--format text|csv|json]
"""

import argparse
import sys

from ergocert.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--format", choices=("text", "csv", "json"), default="text")
    args = parser.parse_args()
    status = 0
    for number in range(1, 7):
        print(f"\n### table {number}\n")
        status |= cli_main(["table", str(number), "--format", args.format])
    return status


if __name__ == "__main__":
    sys.exit(main())
