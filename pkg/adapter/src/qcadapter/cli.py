"""
Line-protocol entry point: submission on stdin, one JSON result on stdout.

This is the command the evaluation service is configured with
(``qc-adapter``); a produced result line always exits 0, and the JSON
``status`` field carries the outcome.
"""
from __future__ import annotations

import argparse
import sys

from .child import DEFAULT_ALLOWLIST
from .runner import execute_submission


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="qc-adapter")
    parser.add_argument("--allow", default=",".join(DEFAULT_ALLOWLIST),
                        help="comma-separated import allowlist")
    parser.add_argument("--timeout", type=float, default=10.0)
    args = parser.parse_args(argv)
    allowlist = [name.strip() for name in args.allow.split(",") if name.strip()]
    result = execute_submission(sys.stdin.read(), allowlist, args.timeout)
    print(result.to_json_line())
    return 0


if __name__ == "__main__":
    sys.exit(main())
