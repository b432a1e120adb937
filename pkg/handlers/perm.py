# handlers/perm.py
import argparse

from utils.perm_core import (
    coxeter_length,
    descending_runs,
    is_fireworks,
    is_layered,
    lehmer_code,
    max_weight,
    parse_permutation,
    pi_of,
    rothe_diagram,
    upward_closure,
)
from utils.schemas import dumps


# -------- perm --------
def cmd_perm(args: argparse.Namespace) -> int:
    w = parse_permutation(args.perm)
    fireworks = is_fireworks(w)
    D = rothe_diagram(w)
    closure = upward_closure(D)
    info = {
        "perm": str(w),
        "n": w.n,
        "length": coxeter_length(w),
        "lehmer_code": list(lehmer_code(w)),
        "runs": [list(r) for r in descending_runs(w)],
        "fireworks": fireworks,
        "layered": is_layered(w),
        "pi": str(pi_of(w)) if fireworks else None,
        "rothe": D.to_dict(),
        "closure": closure.to_dict(),
        "max_weight": list(max_weight(w)),
    }
    if args.json:
        print(dumps(info))
        return 0

    print(f"w = {w}  (n = {w.n}, length {info['length']})")
    print(f"lehmer code  {tuple(info['lehmer_code'])}")
    print(f"runs         {' | '.join(f'[{a},{b}]' for a, b in descending_runs(w))}")
    print(f"fireworks    {fireworks}")
    print(f"layered      {info['layered']}")
    if fireworks:
        print(f"pi(w)        {info['pi']}")
    print(f"wt(closure)  {tuple(info['max_weight'])}")
    print("Rothe diagram:")
    print(D.render())
    print("upward closure:")
    print(closure.render())
    return 0


# ---- 注册 ----
def register(subparsers) -> None:
    p = subparsers.add_parser("perm", help="runs, pattern classes and diagrams of a permutation")
    p.add_argument("perm")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_perm)
