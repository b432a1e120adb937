# handlers/poly.py
import argparse

from utils.perm_core import parse_permutation
from utils.poly_algebra import grothendieck, schubert, top_component
from utils.schemas import dumps


# -------- poly --------
def cmd_poly(args: argparse.Namespace) -> int:
    w = parse_permutation(args.perm)
    compute = schubert if args.kind == "schubert" else grothendieck
    f = compute(w, engine=args.engine)
    if args.top:
        f = top_component(f)
    print(dumps(f.to_dict()) if args.json else f.render())
    return 0


# ---- 注册 ----
def register(subparsers) -> None:
    p = subparsers.add_parser("poly", help="Schubert / Grothendieck polynomial of a permutation")
    p.add_argument("perm", help="one-line notation, e.g. 2413 or 2,4,1,3")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--schubert", dest="kind", action="store_const", const="schubert")
    kind.add_argument("--grothendieck", dest="kind", action="store_const", const="grothendieck")
    p.add_argument("--engine", choices=["pipedream", "recursion"], default="pipedream")
    p.add_argument("--top", action="store_true", help="only the top-degree component")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_poly, kind="grothendieck")
