# handlers/support.py
import argparse
import logging

from utils.discrete_convex import interval_union
from utils.perm_core import max_weight_formula, parse_permutation, require_fireworks
from utils.poly_algebra import grothendieck_pd, schubert_pd, support
from utils.schemas import dumps

log = logging.getLogger("support")


# -------- support --------
def cmd_support(args: argparse.Namespace) -> int:
    w = parse_permutation(args.perm)
    if args.formula:
        # 区间并公式只对 fireworks 成立
        require_fireworks(w)
        points = interval_union(support(schubert_pd(w)), max_weight_formula(w))
    else:
        points = support(grothendieck_pd(w))
    log.info("support of G_%s: %d points", w, len(points))

    if args.json:
        print(dumps({
            "perm": str(w),
            "formula": bool(args.formula),
            "points": [list(p) for p in points.sorted_points()],
        }))
    else:
        for p in points.sorted_points():
            print(p)
    return 0


# ---- 注册 ----
def register(subparsers) -> None:
    p = subparsers.add_parser("support", help="support of the Grothendieck polynomial")
    p.add_argument("perm")
    p.add_argument("--formula", action="store_true",
                   help="use the interval-union formula (fireworks permutations only)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_support)
