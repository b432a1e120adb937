# handlers/verify.py
import argparse
import sys

from utils.schemas import VerificationJob, dumps, parse_model
from utils.settings import get_settings
from utils.verifier import CLAIMS, run_job


# -------- verify --------
def cmd_verify(args: argparse.Namespace) -> int:
    settings = get_settings()
    job = parse_model(VerificationJob, {
        "claim": args.claim,
        "n": args.n,
        "filter": args.filter,
        "seed": settings.seed if args.seed is None else args.seed,
        # --jobs > GROTHLAB_THREADS > 1
        "parallelism": args.jobs or settings.threads,
        "samples": args.samples,
        "fail_fast": args.fail_fast,
    })
    progress = not args.quiet and sys.stderr.isatty()
    summary = run_job(job, progress=progress, debug=True if args.debug else None)

    if args.json:
        print(dumps(summary))
    else:
        for r in summary.reports:
            detail = r.note or f"lhs-rhs {r.lhs_minus_rhs} rhs-lhs {r.rhs_minus_lhs}"
            print(f"FAIL {r.claim} {r.instance}: {detail}")
        print(summary.line())
    return 0 if summary.failures == 0 else 1


# ---- 注册 ----
def register(subparsers) -> None:
    p = subparsers.add_parser("verify", help="brute-force sweep of a claim")
    p.add_argument("claim", choices=sorted(CLAIMS))
    p.add_argument("--n", type=int, required=True, help="permutation size / dimension bound")
    p.add_argument("--filter", choices=["all", "fireworks", "layered"])
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, default=200, help="random diagrams for psp-formula")
    p.add_argument("--jobs", type=int, help="worker processes (overrides GROTHLAB_THREADS)")
    p.add_argument("--fail-fast", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--quiet", action="store_true", help="no progress bar")
    p.add_argument("--debug", action="store_true", help="per-step checks inside the raise claims")
    p.set_defaults(func=cmd_verify)
