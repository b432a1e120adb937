# utils/discrete_convex.py
# -*- coding: utf-8 -*-
"""
格点集合：Schubert matroid 的基 / spanning set 指示向量、Minkowski 和、区间并、
M-convex 交换公理检查，以及各条 support 公式的对照检查（返回 Report）。
多面体本身从不构造，只处理格点。
"""
import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from utils.errors import PreconditionError
from utils.perm_core import (
    Diagram,
    Permutation,
    max_weight_formula,
    pi_of,
    require_fireworks,
    rothe_diagram,
    row_weight,
    upward_closure,
)
from utils.poly_algebra import (
    grothendieck_pd,
    grothendieck_rec,
    homogenize_support,
    schubert_pd,
    schubert_rec,
    support,
    top_component,
)
from utils.schemas import Report

log = logging.getLogger("discrete_convex")

Point = Tuple[int, ...]


# -----------------------
# LatticePointSet
# -----------------------
@dataclass(frozen=True)
class LatticePointSet:
    dim: int
    points: FrozenSet[Point]

    def __post_init__(self):
        if self.dim < 1:
            raise PreconditionError("lattice point set needs positive dimension")
        pts = frozenset(tuple(int(x) for x in p) for p in self.points)
        for p in pts:
            if len(p) != self.dim:
                raise PreconditionError(f"point {p} is not of dimension {self.dim}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, dim: int, points: Iterable[Sequence[int]]) -> "LatticePointSet":
        return cls(dim, frozenset(tuple(p) for p in points))

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.points

    def sorted_points(self) -> List[Point]:
        return sorted(self.points)

    def _same_dim(self, other: "LatticePointSet") -> None:
        if other.dim != self.dim:
            raise PreconditionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def union(self, other: "LatticePointSet") -> "LatticePointSet":
        self._same_dim(other)
        return LatticePointSet(self.dim, self.points | other.points)

    def difference(self, other: "LatticePointSet") -> "LatticePointSet":
        self._same_dim(other)
        return LatticePointSet(self.dim, self.points - other.points)

    def issubset(self, other: "LatticePointSet") -> bool:
        self._same_dim(other)
        return self.points <= other.points


def fundamental_weight(k: int, n: int) -> Point:
    """ω_k = e_1 + ... + e_k"""
    if not 0 <= k <= n:
        raise PreconditionError(f"fundamental weight index {k} out of range for n={n}")
    return (1,) * k + (0,) * (n - k)


def _indicator(cells: Iterable[int], n: int) -> Point:
    v = [0] * n
    for b in cells:
        v[b - 1] = 1
    return tuple(v)


def _normalize_subset(S: Iterable[int], n: int) -> List[int]:
    s = sorted(set(int(x) for x in S))
    if s and (s[0] < 1 or s[-1] > n):
        raise PreconditionError(f"subset {s} is not inside [{n}]")
    return s


# -----------------------
# Schubert matroids
# -----------------------
def schubert_matroid_bases(S: Iterable[int], n: int) -> LatticePointSet:
    """B = {b_1 < ... < b_r} ⊆ [s_r]，b_i <= s_i；空集只给零向量"""
    s = _normalize_subset(S, n)
    if not s:
        return LatticePointSet(n, frozenset({(0,) * n}))
    r = len(s)
    pts = set()
    for B in itertools.combinations(range(1, s[-1] + 1), r):
        if all(b <= si for b, si in zip(B, s)):
            pts.add(_indicator(B, n))
    return LatticePointSet(n, frozenset(pts))


def schubert_spanning_sets(S: Iterable[int], n: int) -> LatticePointSet:
    """B' ⊆ [s_r]，|B'| >= r，前 r 个元素满足 b_i <= s_i"""
    s = _normalize_subset(S, n)
    if not s:
        return LatticePointSet(n, frozenset({(0,) * n}))
    r, top = len(s), s[-1]
    pts = set()
    for size in range(r, top + 1):
        for B in itertools.combinations(range(1, top + 1), size):
            if all(b <= si for b, si in zip(B[:r], s)):
                pts.add(_indicator(B, n))
    return LatticePointSet(n, frozenset(pts))


# -----------------------
# Sumsets / intervals
# -----------------------
def minkowski_sumset(sets: Sequence[LatticePointSet], dim: Optional[int] = None) -> LatticePointSet:
    """逐对求和 + 去重；空列表给原点"""
    sets = list(sets)
    if not sets:
        if dim is None:
            raise PreconditionError("empty sumset needs an explicit dimension")
        return LatticePointSet(dim, frozenset({(0,) * dim}))
    d = sets[0].dim
    for other in sets[1:]:
        if other.dim != d:
            raise PreconditionError(f"dimension mismatch in sumset: {d} vs {other.dim}")
    acc = set(sets[0].points)
    for other in sets[1:]:
        acc = {tuple(x + y for x, y in zip(p, q)) for p in acc for q in other.points}
    return LatticePointSet(d, frozenset(acc))


def interval_union(lows: LatticePointSet, high: Sequence[int]) -> LatticePointSet:
    """∪_{α ∈ lows} [α, high]"""
    high = tuple(high)
    if len(high) != lows.dim:
        raise PreconditionError(f"upper bound {high} is not of dimension {lows.dim}")
    pts = set()
    for a in lows:
        for k, (lo, hi) in enumerate(zip(a, high), start=1):
            if lo > hi:
                raise PreconditionError(f"{a} exceeds {high} in coordinate {k}")
        pts.update(itertools.product(*(range(lo, hi + 1) for lo, hi in zip(a, high))))
    return LatticePointSet(lows.dim, frozenset(pts))


def column_base_sumset(D: Diagram) -> LatticePointSet:
    return minkowski_sumset([schubert_matroid_bases(col, D.n_rows) for col in D.columns()],
                            dim=D.n_rows)


def column_spanning_sumset(D: Diagram) -> LatticePointSet:
    return minkowski_sumset([schubert_spanning_sets(col, D.n_rows) for col in D.columns()],
                            dim=D.n_rows)


# -----------------------
# M-convexity
# -----------------------
@dataclass(frozen=True)
class ExchangeCheck:
    ok: bool
    # (α, β, i)：α_i > β_i 但找不到可交换的 j
    witness: Optional[Tuple[Point, Point, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def is_m_convex(S: LatticePointSet) -> ExchangeCheck:
    pts = S.points
    for alpha in sorted(pts, reverse=True):
        for beta in sorted(pts):
            for i in range(S.dim):
                if alpha[i] <= beta[i]:
                    continue
                found = False
                for j in range(S.dim):
                    if alpha[j] >= beta[j]:
                        continue
                    a2 = list(alpha)
                    a2[i] -= 1
                    a2[j] += 1
                    b2 = list(beta)
                    b2[i] += 1
                    b2[j] -= 1
                    if tuple(a2) in pts and tuple(b2) in pts:
                        found = True
                        break
                if not found:
                    return ExchangeCheck(False, (alpha, beta, i + 1))
    return ExchangeCheck(True)


# -----------------------
# Reports
# -----------------------
def _as_lists(points: Iterable[Point]) -> List[List[int]]:
    return [list(p) for p in sorted(points)]


def _compare(claim: str, instance: str, lhs: LatticePointSet, rhs: LatticePointSet,
             note: Optional[str] = None) -> Report:
    extra = lhs.points - rhs.points
    missing = rhs.points - lhs.points
    return Report(
        claim=claim,
        instance=instance,
        ok=not extra and not missing,
        lhs_minus_rhs=_as_lists(extra),
        rhs_minus_lhs=_as_lists(missing),
        note=note,
    )


def _contained(claim: str, instance: str, lhs: LatticePointSet, rhs: LatticePointSet,
               note: Optional[str] = None) -> Report:
    """单向：lhs ⊆ rhs"""
    extra = lhs.points - rhs.points
    return Report(claim=claim, instance=instance, ok=not extra,
                  lhs_minus_rhs=_as_lists(extra), note=note)


def _supports(w: Permutation):
    return support(grothendieck_pd(w)), support(schubert_pd(w))


def check_main_support(w: Permutation) -> Report:
    """枚举得到的 supp(G_w) = 区间并公式 = 按列 spanning sumset"""
    require_fireworks(w)
    groth, schub = _supports(w)
    by_intervals = interval_union(schub, max_weight_formula(w))
    by_columns = column_spanning_sumset(rothe_diagram(w))
    report = _compare("main-support", str(w), groth, by_intervals)
    if by_columns.points != groth.points:
        report.ok = False
        report.note = (
            f"column formula differs: extra {_as_lists(by_columns.points - groth.points)}, "
            f"missing {_as_lists(groth.points - by_columns.points)}"
        )
    return report


def check_psp_formula(D: Diagram, instance: Optional[str] = None) -> Report:
    lhs = column_spanning_sumset(D)
    rhs = interval_union(column_base_sumset(D), row_weight(upward_closure(D)))
    name = instance or "D=" + str(sorted(D.cells))
    return _compare("psp-formula", name, lhs, rhs)


def check_psp_inclusion(A: Iterable[int], B: Iterable[int], n: int) -> Report:
    """A ⊆ B，max(A) = max(B) 时 B 的 spanning 点都是 A 的 spanning 点"""
    a, b = set(A), set(B)
    if not a or not a <= b or max(a) != max(b):
        raise PreconditionError(f"need nonempty A ⊆ B with max(A) = max(B): A={sorted(a)}, B={sorted(b)}")
    lhs = schubert_spanning_sets(b, n)
    rhs = schubert_spanning_sets(a, n)
    return _contained("psp-inclusion", f"A={sorted(a)},B={sorted(b)}", lhs, rhs)


def check_layered_domination(w: Permutation) -> Report:
    require_fireworks(w)
    pi = pi_of(w)
    lhs = support(grothendieck_pd(w))
    rhs = lhs if pi == w else support(grothendieck_pd(pi))
    return _contained("layered", str(w), lhs, rhs, note=f"pi(w)={pi}")


def check_schub_support(w: Permutation) -> Report:
    _, schub = _supports(w)
    return _compare("schub-support", str(w), schub, column_base_sumset(rothe_diagram(w)))


def check_lower_bound(w: Permutation) -> Report:
    """supp(G_w) 的每个点都支配 supp(S_w) 的某个点"""
    groth, schub = _supports(w)
    lows = schub.sorted_points()
    bad = [b for b in groth if not any(all(x <= y for x, y in zip(a, b)) for a in lows)]
    return Report(claim="lower-bound", instance=str(w), ok=not bad, lhs_minus_rhs=_as_lists(bad))


def check_column_bound(w: Permutation) -> Report:
    """任意 w：supp(G_w) ⊆ 按列 spanning sumset；顶次项不是单项式时必须是真包含"""
    G = grothendieck_pd(w)
    lhs = support(G)
    rhs = column_spanning_sumset(rothe_diagram(w))
    report = _contained("column-bound", str(w), lhs, rhs)
    if len(top_component(G)) > 1:
        report.note = "top component is not a monomial"
        if lhs.points == rhs.points:
            report.ok = False
            report.note += "; inclusion is not strict"
    return report


def check_m_convex(w: Permutation) -> Report:
    require_fireworks(w)
    d = sum(max_weight_formula(w))
    S = homogenize_support(support(grothendieck_pd(w)), d)
    res = is_m_convex(S)
    note = None
    if not res.ok:
        alpha, beta, i = res.witness
        note = f"exchange fails for alpha={list(alpha)}, beta={list(beta)}, i={i}"
    return Report(claim="m-convex", instance=str(w), ok=res.ok, note=note)


def check_oracle_equiv(w: Permutation) -> Report:
    """pipe dream 求和与 divided difference 递推逐系数一致"""
    pos, neg, notes = set(), set(), []
    for name, pd, rec in (
        ("schubert", schubert_pd(w), schubert_rec(w)),
        ("grothendieck", grothendieck_pd(w), grothendieck_rec(w)),
    ):
        diff = pd - rec
        if diff.is_zero():
            continue
        notes.append(f"{name}: pd - rec = {diff.render()}")
        for exp, coef in diff.items():
            (pos if coef > 0 else neg).add(exp)
    return Report(
        claim="oracle-equiv",
        instance=str(w),
        ok=not notes,
        lhs_minus_rhs=_as_lists(pos),
        rhs_minus_lhs=_as_lists(neg),
        note="; ".join(notes) or None,
    )
