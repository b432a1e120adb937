# utils/weight_raiser.py
# -*- coding: utf-8 -*-
"""
fireworks 置换的 pipe dream 升权手术：把第 a 行的权重 +1，
a 之前的行原样不动，a 之后的行只可能变小。

每一步都在当前 pipe dream 的 trace 上重新判 case：
  Case 0  T 的 secondary j > i：T 换成 cross（必然是 fake），结束；
  Case 1  i > j 且 i 在 a 行以下不是任何 real cross 的 primary：
          T' = i 与 j 真正交叉的格子，沿 (T, T') 重连；
  Case 2  i 在 a 行以下是某个 real cross 的 primary：
          T' 取最高的那个，ℓ = T' 的 secondary，S = a 行 ℓ 为 primary 的格子，
          m = S 的 secondary，S' = m 与 ℓ 的交叉，沿 (S, S') 重连。
重连 = 起点放 cross，去掉两点之间涉及这对管道的 fake cross，终点换成 bump。
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from utils.discrete_convex import LatticePointSet, interval_union
from utils.errors import InvariantViolation, PreconditionError
from utils.perm_core import (
    Cell,
    Permutation,
    WeightVector,
    coxeter_length,
    left_to_right_maxima,
    max_weight_formula,
    require_fireworks,
)
from utils.pipedream_engine import (
    PipeDream,
    TraceResult,
    bad_primary_crosses,
    enumerate_pipe_dreams,
    tile_key,
    trace,
)
from utils.poly_algebra import grothendieck_pd, support
from utils.schemas import PipeDreamModel, RaiseStepModel, RaiseTraceModel, Report
from utils.settings import get_settings

log = logging.getLogger("weight_raiser")


# -----------------------
# Records
# -----------------------
@dataclass(frozen=True)
class RaiseStep:
    case: int
    tiles: Dict[str, Cell]
    pipes: Dict[str, int]
    removed_fakes: Tuple[Cell, ...]
    row_weight: int

    def to_dict(self) -> dict:
        return RaiseStepModel(
            case=self.case,
            tiles=self.tiles,
            pipes=self.pipes,
            removed_fakes=list(self.removed_fakes),
            row_weight=self.row_weight,
        ).model_dump(mode="json")


@dataclass
class RaiseTrace:
    w: Permutation
    row: int
    start: PipeDream
    steps: List[RaiseStep] = field(default_factory=list)
    final: Optional[PipeDream] = None

    def to_dict(self) -> dict:
        final = self.final or self.start
        return RaiseTraceModel(
            perm=str(self.w),
            row=self.row,
            start=PipeDreamModel(**self.start.to_dict()),
            final=PipeDreamModel(**final.to_dict()),
            final_weight=list(final.weight()),
            steps=[s.to_dict() for s in self.steps],
        ).model_dump(mode="json")


# -----------------------
# Helpers
# -----------------------
def _violation(msg: str, rt: RaiseTrace, cur: PipeDream) -> InvariantViolation:
    rt.final = cur
    log.error("raise %s row %d: %s", rt.w, rt.row, msg)
    return InvariantViolation(msg, payload=rt)


def _check_preconditions(P: PipeDream, w: Permutation) -> Tuple[TraceResult, WeightVector]:
    require_fireworks(w)
    if P.n != w.n:
        raise PreconditionError(f"pipe dream has size {P.n} but {w} has size {w.n}")
    tr = trace(P)
    if tr.demazure != w:
        raise PreconditionError(f"pipe dream traces to {tr.demazure}, not {w}")
    return tr, max_weight_formula(w)


def _rewire(cur: PipeDream, tr: TraceResult, start: Cell, end: Cell,
            pair: FrozenSet[int]) -> Tuple[PipeDream, Tuple[Cell, ...]]:
    lo, hi = tile_key(start), tile_key(end)
    removed = tuple(sorted(
        (c for c in tr.fake_crosses
         if lo < tile_key(c) < hi and pair & set(tr.tile_pipes[c])),
        key=tile_key,
    ))
    return cur.with_cross(start).without_crosses(removed + (end,)), removed


def _crossings_between(tr: TraceResult, start: Cell, end: Cell, pipe: int) -> Dict[int, Cell]:
    lo, hi = tile_key(start), tile_key(end)
    out = {}
    for (p, q), cell in tr.real_pairs.items():
        if pipe in (p, q) and lo < tile_key(cell) < hi:
            out[q if p == pipe else p] = cell
    return out


def _propagation_gaps(tr: TraceResult, start: Cell, end: Cell, pair: Sequence[int]) -> List[int]:
    """两条管道之间夹住的区域里，只和其中一条真正交叉的其他管道"""
    p, q = pair
    with_p = set(_crossings_between(tr, start, end, p)) - {q}
    with_q = set(_crossings_between(tr, start, end, q)) - {p}
    return sorted(with_p ^ with_q)


# -----------------------
# raise_weight
# -----------------------
def raise_weight(P: PipeDream, w: Permutation, a: int,
                 debug: Optional[bool] = None) -> Tuple[PipeDream, RaiseTrace]:
    if debug is None:
        debug = get_settings().debug
    tr, maxwt = _check_preconditions(P, w)
    n = w.n
    if not 1 <= a <= n:
        raise PreconditionError(f"row {a} out of range for n={n}")
    old = tr.weight[a - 1]
    if old >= maxwt[a - 1]:
        raise PreconditionError(
            f"row {a} already has the maximal weight {maxwt[a - 1]} for {w}")

    rt = RaiseTrace(w=w, row=a, start=P)
    cur = P

    if debug:
        bad = bad_primary_crosses(tr)
        if bad:
            raise _violation(f"crosses with a left-to-right maximum as primary pipe: {bad}", rt, cur)

    # 选 T：a 行 primary 不是从左到右最大值的 bump 里列号最小的
    ltr = left_to_right_maxima(w)
    candidates = [
        (c, tr.tile_pipes[(a, c)][0])
        for c in range(1, n - a + 1)
        if not P.has_cross((a, c)) and tr.tile_pipes[(a, c)][0] not in ltr
    ]
    if not candidates:
        raise _violation(f"no bump in row {a} has a usable primary pipe", rt, cur)
    _, i = min(candidates)

    last_case1_col: Optional[int] = None
    last_gap: Optional[int] = None
    cap = 4 * n * n

    for _ in range(cap):
        T = tr.primary_tile(i, a)
        if T is None or cur.has_cross(T):
            raise _violation(f"pipe {i} is not primary of a bump in row {a}", rt, cur)
        j = tr.tile_pipes[T][1]

        if i < j:
            # Case 0：新 cross 是 fake，走线不变
            cur = cur.with_cross(T)
            step_case, tiles, pipes, removed = 0, {"T": T}, {"i": i, "j": j}, ()
        else:
            below = [c for c in tr.real_crosses if c[0] > a and tr.tile_pipes[c][0] == i]
            if below:
                Tp = min(below, key=tile_key)
                ell = tr.tile_pipes[Tp][1]
                if debug:
                    for r in range(a, Tp[0]):
                        C = tr.primary_tile(ell, r)
                        if C is not None and cur.has_cross(C):
                            raise _violation(
                                f"pipe {ell} is primary of the cross {C} above row {Tp[0]}", rt, cur)
                S = tr.primary_tile(ell, a)
                if S is None or cur.has_cross(S):
                    raise _violation(f"pipe {ell} is not primary of a bump in row {a}", rt, cur)
                m = tr.tile_pipes[S][1]
                if m >= ell:
                    raise _violation(f"secondary pipe {m} of {S} is not below {ell}", rt, cur)
                Sp = tr.real_pairs.get((m, ell))
                if Sp is None or not tile_key(S) < tile_key(Sp) <= tile_key(Tp):
                    raise _violation(f"pipes {m} and {ell} do not cross between {S} and {Tp}", rt, cur)
                gap = S[1] - T[1]
                if gap <= 0 or (last_gap is not None and gap >= last_gap):
                    raise _violation(f"S={S} is not moving toward T={T}", rt, cur)
                last_gap = gap
                if debug:
                    stray = _propagation_gaps(tr, S, Sp, (m, ell))
                    if stray:
                        raise _violation(f"pipes {stray} cross only one of {m}, {ell}", rt, cur)
                cur, removed = _rewire(cur, tr, S, Sp, frozenset({m, ell}))
                step_case = 2
                tiles = {"T": T, "T'": Tp, "S": S, "S'": Sp}
                pipes = {"i": i, "l": ell, "m": m}
            else:
                Tp = tr.real_pairs.get((j, i))
                if Tp is None or tile_key(Tp) <= tile_key(T):
                    raise _violation(f"pipes {j} and {i} do not cross after {T}", rt, cur)
                if debug and w.position(j) <= w.position(i):
                    raise _violation(f"pipe {j} exits above pipe {i}", rt, cur)
                if last_case1_col is not None and T[1] >= last_case1_col:
                    raise _violation(f"T={T} did not move left", rt, cur)
                last_case1_col = T[1]
                if debug:
                    stray = _propagation_gaps(tr, T, Tp, (j, i))
                    if stray:
                        raise _violation(f"pipes {stray} cross only one of {j}, {i}", rt, cur)
                cur, removed = _rewire(cur, tr, T, Tp, frozenset({i, j}))
                step_case, tiles, pipes = 1, {"T": T, "T'": Tp}, {"i": i, "j": j}

        prev = tr
        tr = trace(cur)
        now = tr.weight[a - 1]
        rt.steps.append(RaiseStep(step_case, tiles, pipes, removed, now))
        log.debug("raise %s row %d: case %d tiles %s row weight %d", w, a, step_case, tiles, now)

        if tr.demazure != w:
            raise _violation(f"case {step_case} step changed the permutation to {tr.demazure}", rt, cur)
        if now not in (old, old + 1):
            raise _violation(f"row {a} weight went from {old} to {now}", rt, cur)
        if debug:
            if cur.rows[:a - 1] != P.rows[:a - 1]:
                raise _violation(f"rows above {a} changed", rt, cur)
            if any(x > y for x, y in zip(tr.weight[a:], prev.weight[a:])):
                raise _violation(f"a row below {a} gained weight", rt, cur)
        if now == old + 1:
            break
    else:
        raise _violation(f"no progress after {cap} steps", rt, cur)

    # 最终结果无论是否 debug 都复核一遍
    final_wt = tr.weight
    start_wt = P.weight()
    if (cur.rows[:a - 1] != P.rows[:a - 1]
            or final_wt[a - 1] != start_wt[a - 1] + 1
            or any(x > y for x, y in zip(final_wt[a:], start_wt[a:]))):
        raise _violation(f"weight {final_wt} does not raise {start_wt} at row {a}", rt, cur)

    rt.final = cur
    return cur, rt


# -----------------------
# raise_to / reachable_support
# -----------------------
def raise_to_traced(P: PipeDream, w: Permutation, target: Sequence[int],
                    debug: Optional[bool] = None) -> Tuple[PipeDream, List[RaiseTrace]]:
    tr, maxwt = _check_preconditions(P, w)
    target = tuple(int(x) for x in target)
    if len(target) != w.n:
        raise PreconditionError(f"target {target} needs {w.n} entries")
    for k, (lo, t, hi) in enumerate(zip(tr.weight, target, maxwt), start=1):
        if t < lo:
            raise PreconditionError(f"target {target} is below the weight {tr.weight} in row {k}")
        if t > hi:
            raise PreconditionError(f"target {target} exceeds the maximal weight {maxwt} in row {k}")

    cur, traces = P, []
    wt = tr.weight
    while wt != target:
        a = next(k for k in range(1, w.n + 1) if wt[k - 1] < target[k - 1])
        cur, rt = raise_weight(cur, w, a, debug=debug)
        traces.append(rt)
        wt = cur.weight()
    return cur, traces


def raise_to(P: PipeDream, w: Permutation, target: Sequence[int],
             debug: Optional[bool] = None) -> PipeDream:
    return raise_to_traced(P, w, target, debug=debug)[0]


def reachable_support(w: Permutation, debug: Optional[bool] = None) -> LatticePointSet:
    """对区间并公式里的每个目标，从下方的 reduced pipe dream 出发 raise_to"""
    require_fireworks(w)
    ell = coxeter_length(w)
    reduced: Dict[WeightVector, PipeDream] = {}
    for P in enumerate_pipe_dreams(w):
        if P.size == ell:
            reduced.setdefault(P.weight(), P)
    lows = LatticePointSet(w.n, frozenset(reduced))
    reached = set()
    for target in interval_union(lows, max_weight_formula(w)).sorted_points():
        start = next(P for wt, P in sorted(reduced.items())
                     if all(x <= y for x, y in zip(wt, target)))
        Q = raise_to(start, w, target, debug=debug)
        got = trace(Q)
        if got.demazure != w or got.weight != target:
            raise InvariantViolation(f"raise_to reached {got.weight} for {w}, wanted {target}")
        reached.add(got.weight)
    return LatticePointSet(w.n, frozenset(reached))


# -----------------------
# Reports
# -----------------------
def check_raise_sweep(w: Permutation, debug: Optional[bool] = None) -> Report:
    """所有 P ∈ PD(w)、所有可升的行：独立重新 trace 检查四条结论"""
    require_fireworks(w)
    maxwt = max_weight_formula(w)
    failures = []
    count = 0
    seen = 0
    for P in enumerate_pipe_dreams(w):
        seen += 1
        wt = P.weight()
        for a in range(1, w.n + 1):
            if wt[a - 1] >= maxwt[a - 1]:
                continue
            count += 1
            try:
                Q, _ = raise_weight(P, w, a, debug=debug)
            except InvariantViolation as e:
                failures.append(f"P={list(P.crosses)} a={a}: {e}")
                continue
            got = trace(Q)
            qw = got.weight
            ok = (
                got.demazure == w
                and qw[:a - 1] == wt[:a - 1]
                and Q.rows[:a - 1] == P.rows[:a - 1]
                and qw[a - 1] == wt[a - 1] + 1
                and all(x <= y for x, y in zip(qw[a:], wt[a:]))
            )
            if not ok:
                failures.append(f"P={list(P.crosses)} a={a}: got weight {qw}")
    if not seen:
        raise InvariantViolation(f"PD({w}) came out empty")
    note = f"{count} raises"
    if failures:
        note += "; " + "; ".join(failures[:5])
    return Report(claim="raise-sweep", instance=str(w), ok=not failures, note=note)


def check_raise_completeness(w: Permutation, debug: Optional[bool] = None) -> Report:
    lhs = reachable_support(w, debug=debug)
    rhs = support(grothendieck_pd(w))
    extra = lhs.points - rhs.points
    missing = rhs.points - lhs.points
    return Report(
        claim="raise-completeness",
        instance=str(w),
        ok=not extra and not missing,
        lhs_minus_rhs=[list(p) for p in sorted(extra)],
        rhs_minus_lhs=[list(p) for p in sorted(missing)],
    )
