#!/usr/bin/env python3
"""
Audit catalog groups against the reference tables and the main theorem.

Usage:
    python scripts/run_verification.py [--group ID] [--verbose]

Examples:
    # Every catalog group
    python scripts/run_verification.py

    # One group, with relation counts
    python scripts/run_verification.py --group GL2F3 --verbose
"""

import sys
import os
import argparse

# Add parent directory to path so we can import from src
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from dotenv import load_dotenv

from src.core.config import setup_logging
from src.core.errors import UnknownGroup
from src.core.verification_runner import VerificationRunner, print_summary
from src.curves.genus2 import resolve_group_id


def main():
    load_dotenv()

    parser = argparse.ArgumentParser(description="Verify genus-2 decompositions")
    parser.add_argument("--group", "-g", action="append",
                        help="Group id or alias; repeat for several (default: all)")
    parser.add_argument("--verbose", "-v", action="store_true",
                        help="Show relation counts per group")
    args = parser.parse_args()

    setup_logging()

    try:
        groups = [resolve_group_id(name) for name in args.group] if args.group else None
    except UnknownGroup as e:
        print(f"❌ {e}")
        sys.exit(2)

    print(f"🔍 Verifying {len(groups) if groups else 'all'} group(s)")
    print(f"{'='*70}")

    runner = VerificationRunner(verbose=args.verbose)
    summary = runner.run_all(groups)
    print_summary(summary)
    sys.exit(0 if summary["success"] else 1)


if __name__ == "__main__":
    main()
