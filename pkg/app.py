import argparse
import logging
import sys

import config
from commands import modules, verify
from models.errors import FIModuleError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fimod", description="Exact computations with truncated FI-modules")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # one sub-parser per command module
    modules.register(subparsers)
    verify.register(subparsers)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else config.LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except FIModuleError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
