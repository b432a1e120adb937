# utils/verifier.py
# -*- coding: utf-8 -*-
"""
批量验证：按 claim 生成实例流，串行或多进程逐个检查，汇总成 SweepSummary。
多进程用 ProcessPoolExecutor.map，结果顺序与实例顺序一致，和调度无关。
"""
import itertools
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from tqdm import tqdm

from utils import discrete_convex, weight_raiser
from utils.errors import PreconditionError
from utils.perm_core import Diagram, Permutation, all_permutations, is_fireworks, is_layered
from utils.schemas import Report, SweepSummary, VerificationJob
from utils.settings import get_settings

log = logging.getLogger("verifier")

PSP_DENSITY = 0.4


@dataclass(frozen=True)
class ClaimSpec:
    needs_fireworks: bool
    kind: str  # "perm" | "diagram" | "subsets"


CLAIMS: Dict[str, ClaimSpec] = {
    "main-support": ClaimSpec(True, "perm"),
    "m-convex": ClaimSpec(True, "perm"),
    "layered": ClaimSpec(True, "perm"),
    "raise-sweep": ClaimSpec(True, "perm"),
    "raise-completeness": ClaimSpec(True, "perm"),
    "schub-support": ClaimSpec(False, "perm"),
    "oracle-equiv": ClaimSpec(False, "perm"),
    "lower-bound": ClaimSpec(False, "perm"),
    "column-bound": ClaimSpec(False, "perm"),
    "psp-formula": ClaimSpec(False, "diagram"),
    "psp-inclusion": ClaimSpec(False, "subsets"),
}


# -----------------------
# Instances
# -----------------------
def effective_filter(job: VerificationJob) -> Optional[str]:
    spec = CLAIMS[job.claim]
    if spec.kind != "perm":
        return None
    flt = job.filter or ("fireworks" if spec.needs_fireworks else "all")
    if spec.needs_fireworks and flt == "all":
        raise PreconditionError(f"claim {job.claim} only holds for fireworks permutations; "
                                f"use --filter fireworks or layered")
    return flt


def permutations_for(n: int, flt: str) -> Iterator[Permutation]:
    for w in all_permutations(n):
        if flt == "fireworks" and not is_fireworks(w):
            continue
        if flt == "layered" and not is_layered(w):
            continue
        yield w


def random_diagrams(n: int, samples: int, seed: int) -> Iterator[Diagram]:
    """行列数都在 [1, n]，每格独立以 PSP_DENSITY 的概率放入"""
    rng = random.Random(seed)
    for _ in range(samples):
        rows, cols = rng.randint(1, n), rng.randint(1, n)
        cells = frozenset(
            (r, c)
            for r in range(1, rows + 1)
            for c in range(1, cols + 1)
            if rng.random() < PSP_DENSITY
        )
        yield Diagram(rows, cols, cells)


def nested_subsets(n: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """所有 A ⊆ B ⊆ [n]，A 非空且 max(A) = max(B)"""
    for top in range(1, n + 1):
        rest = range(1, top)
        for kb in range(len(rest) + 1):
            for extra_b in itertools.combinations(rest, kb):
                for ka in range(len(extra_b) + 1):
                    for extra_a in itertools.combinations(extra_b, ka):
                        yield extra_a + (top,), extra_b + (top,)


def build_tasks(job: VerificationJob, debug: bool) -> List[Tuple[str, Any, bool]]:
    spec = CLAIMS[job.claim]
    if spec.kind == "perm":
        flt = effective_filter(job)
        return [(job.claim, w.images, debug) for w in permutations_for(job.n, flt)]
    if spec.kind == "diagram":
        return [(job.claim, (k, D.to_dict()), debug)
                for k, D in enumerate(random_diagrams(job.n, job.samples, job.seed))]
    return [(job.claim, (A, B, job.n), debug) for A, B in nested_subsets(job.n)]


# -----------------------
# Checks
# -----------------------
_PERM_CHECKS: Dict[str, Callable[..., Report]] = {
    "main-support": discrete_convex.check_main_support,
    "m-convex": discrete_convex.check_m_convex,
    "layered": discrete_convex.check_layered_domination,
    "schub-support": discrete_convex.check_schub_support,
    "oracle-equiv": discrete_convex.check_oracle_equiv,
    "lower-bound": discrete_convex.check_lower_bound,
    "column-bound": discrete_convex.check_column_bound,
}


def run_task(task: Tuple[str, Any, bool]) -> Report:
    """单个实例；模块级函数，可以被子进程 pickle"""
    claim, payload, debug = task
    if claim == "raise-sweep":
        return weight_raiser.check_raise_sweep(Permutation(payload), debug=debug)
    if claim == "raise-completeness":
        return weight_raiser.check_raise_completeness(Permutation(payload), debug=debug)
    if claim in _PERM_CHECKS:
        return _PERM_CHECKS[claim](Permutation(payload))
    if claim == "psp-formula":
        k, data = payload
        return discrete_convex.check_psp_formula(Diagram.from_dict(data), instance=f"#{k}")
    if claim == "psp-inclusion":
        A, B, n = payload
        return discrete_convex.check_psp_inclusion(A, B, n)
    raise PreconditionError(f"unknown claim {claim!r}")


# -----------------------
# Sweep
# -----------------------
def run_job(job: VerificationJob, progress: bool = False, debug: Optional[bool] = None) -> SweepSummary:
    if debug is None:
        debug = get_settings().debug
    tasks = build_tasks(job, debug)
    log.info("verify %s: n=%d, %d instances, %d worker(s)", job.claim, job.n, len(tasks), job.parallelism)

    failures: List[Report] = []
    checked = 0
    executor = None
    if job.parallelism > 1 and len(tasks) > 1:
        executor = ProcessPoolExecutor(max_workers=job.parallelism)
        chunk = max(1, len(tasks) // (job.parallelism * 8))
        results = executor.map(run_task, tasks, chunksize=chunk)
    else:
        results = map(run_task, tasks)

    try:
        bar = tqdm(results, total=len(tasks), desc=job.claim, file=sys.stderr,
                   disable=not progress, leave=False)
        for report in bar:
            checked += 1
            if not report.ok:
                failures.append(report)
                log.warning("%s failed on %s: %s", job.claim, report.instance,
                            report.note or report.lhs_minus_rhs or report.rhs_minus_lhs)
                if job.fail_fast:
                    break
    finally:
        if executor is not None:
            executor.shutdown(wait=True, cancel_futures=True)

    summary = SweepSummary(
        claim=job.claim,
        n=job.n,
        filter=effective_filter(job),
        seed=job.seed,
        checked=checked,
        failures=len(failures),
        reports=failures,
    )
    log.info("verify %s: %s", job.claim, summary.line())
    return summary
