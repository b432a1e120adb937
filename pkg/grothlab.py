# grothlab.py
import argparse
import json
import logging
import sys
from concurrent.futures.process import BrokenProcessPool
from typing import List, Optional

# 可选：读取 .env
try:
    from dotenv import load_dotenv
    load_dotenv()
except Exception:
    pass

# === Handlers ===
from handlers.perm import register as perm_register
from handlers.pipedreams import register as pipedreams_register
from handlers.poly import register as poly_register
from handlers.raising import register as raise_register
from handlers.support import register as support_register
from handlers.verify import register as verify_register
from utils.errors import InvariantViolation, MalformedInputError, PreconditionError
from utils.settings import get_settings

log = logging.getLogger("grothlab")

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_INVARIANT = 4
EXIT_RESOURCES = 5


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grothlab",
        description="Grothendieck polynomials from pipe dreams: compute, inspect, raise and verify.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    # 注册各子命令
    poly_register(sub)        # poly
    support_register(sub)     # support
    pipedreams_register(sub)  # pipedreams
    perm_register(sub)        # perm
    raise_register(sub)       # raise
    verify_register(sub)      # verify
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse：--help 为 0，用法错误为 2
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        settings = get_settings()
    except MalformedInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    # 日志走 stderr，stdout 只留结果
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return args.func(args)
    except MalformedInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InvariantViolation as e:
        print(f"internal invariant violated: {e}", file=sys.stderr)
        payload = e.payload
        if hasattr(payload, "to_dict"):
            print(json.dumps(payload.to_dict(), sort_keys=True), file=sys.stderr)
        return EXIT_INVARIANT
    except (MemoryError, BrokenProcessPool) as e:
        log.error("resources exhausted: %r", e)
        print(f"resources exhausted: {e!r}", file=sys.stderr)
        return EXIT_RESOURCES


if __name__ == "__main__":
    sys.exit(main())
