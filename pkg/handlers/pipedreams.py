# handlers/pipedreams.py
import argparse
import logging
from pathlib import Path

from utils.perm_core import coxeter_length, parse_permutation
from utils.pipedream_engine import enumerate_pipe_dreams, trace
from utils.render import draw_pipe_dream
from utils.schemas import dumps

log = logging.getLogger("pipedreams")


# -------- pipedreams --------
def cmd_pipedreams(args: argparse.Namespace) -> int:
    w = parse_permutation(args.perm)
    ell = coxeter_length(w)
    found = [P for P in enumerate_pipe_dreams(w) if not args.reduced_only or P.size == ell]

    if args.png:
        out_dir = Path(args.png)
        for k, P in enumerate(found, start=1):
            draw_pipe_dream(P, out_dir / f"{w}_{k:03d}.png")
        log.info("saved %d pictures under %s", len(found), out_dir)

    if args.count:
        print(dumps({"perm": str(w), "count": len(found)}) if args.json else len(found))
        return 0

    if args.json:
        print(dumps({
            "perm": str(w),
            "count": len(found),
            "pipe_dreams": [P.to_dict() for P in found],
        }))
        return 0

    for k, P in enumerate(found, start=1):
        tr = trace(P)
        kind = "reduced" if tr.reduced else f"{len(tr.fake_crosses)} fake"
        print(f"# {k}  weight {tr.weight}  {kind}")
        print(P.render(tr.fake_crosses))
        print()
    print(f"{len(found)} pipe dreams")
    return 0


# ---- 注册 ----
def register(subparsers) -> None:
    p = subparsers.add_parser("pipedreams", help="list or count the pipe dreams of a permutation")
    p.add_argument("perm")
    p.add_argument("--count", action="store_true")
    p.add_argument("--reduced-only", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--png", metavar="DIR", help="also save one PNG per pipe dream into DIR")
    p.set_defaults(func=cmd_pipedreams)
