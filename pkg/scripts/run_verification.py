#!/usr/bin/env python3
"""Run every oracle suite (renewal, matrix, Monte Carlo) and exit nonzero on
any failed check.

Usage: python scripts/run_verification.py [--seed N] [--format text|json]
"""

import argparse
import sys

from ergocert.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("text", "json"), default="text")
    args = parser.parse_args()
    return cli_main(["verify", "all", "--seed", str(args.seed), "--format", args.format])


if __name__ == "__main__":
    sys.exit(main())
