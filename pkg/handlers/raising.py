# handlers/raising.py
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Tuple

from utils.errors import MalformedInputError
from utils.perm_core import parse_permutation
from utils.pipedream_engine import PipeDream
from utils.schemas import PipeDreamModel, dumps, parse_model_json
from utils.weight_raiser import raise_to_traced, raise_weight

log = logging.getLogger("raising")


def _read_pipe_dream(path: Optional[str]) -> PipeDream:
    if path:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise MalformedInputError(f"cannot read {path}: {e}") from e
    else:
        text = sys.stdin.read()
    m = parse_model_json(PipeDreamModel, text)
    return PipeDream.from_crosses(m.n, m.crosses)


def _parse_target(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as e:
        raise MalformedInputError(f"malformed target {text!r}: {e}") from e


# -------- raise --------
def cmd_raise(args: argparse.Namespace) -> int:
    w = parse_permutation(args.perm)
    P = _read_pipe_dream(args.file)
    debug = True if args.debug else None

    if args.target is not None:
        target = _parse_target(args.target)
        Q, traces = raise_to_traced(P, w, target, debug=debug)
        log.info("raised %s to %s in %d calls", w, target, len(traces))
        print(dumps({
            "perm": str(w),
            "target": list(target),
            "final": Q.to_dict(),
            "final_weight": list(Q.weight()),
            "raises": [rt.to_dict() for rt in traces],
        }))
        return 0

    Q, rt = raise_weight(P, w, args.row, debug=debug)
    log.info("raised row %d of %s in %d steps", args.row, w, len(rt.steps))
    print(dumps(rt.to_dict()))
    return 0


# ---- 注册 ----
def register(subparsers) -> None:
    p = subparsers.add_parser("raise", help="raise the weight of a pipe dream (JSON on stdin or --file)")
    p.add_argument("--perm", required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--row", type=int, help="raise this row by one")
    which.add_argument("--target", help="raise to this weight, e.g. 1,1,0")
    p.add_argument("--file", help="read the pipe dream JSON from this file instead of stdin")
    p.add_argument("--debug", action="store_true", help="check every surgery step")
    p.set_defaults(func=cmd_raise)
