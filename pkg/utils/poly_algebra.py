# utils/poly_algebra.py
# -*- coding: utf-8 -*-
"""
稀疏整系数多项式，Schubert / Grothendieck 多项式的两条计算路径：
pipe dream 求和，以及从 w0 出发的 (isobaric) divided difference 递推（对拍用）。
"""
import logging
import random
from functools import lru_cache
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from utils.errors import InvariantViolation, PreconditionError
from utils.perm_core import Permutation, coxeter_length, swap_positions
from utils.pipedream_engine import enumerate_pipe_dreams

log = logging.getLogger("poly_algebra")

Exponent = Tuple[int, ...]


# -----------------------
# SparsePolynomial
# -----------------------
class SparsePolynomial:
    """exponent tuple -> 非零 int 系数；构造后不再修改"""

    __slots__ = ("n_vars", "_terms")

    def __init__(self, n_vars: int, terms: Optional[Mapping[Exponent, int]] = None):
        if n_vars < 1:
            raise PreconditionError("polynomial needs at least one variable")
        self.n_vars = n_vars
        clean: Dict[Exponent, int] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n_vars or any(e < 0 for e in exp):
                raise PreconditionError(f"bad exponent {exp} for {n_vars} variables")
            if coef:
                clean[exp] = int(coef)
        self._terms = clean

    # ---- constructors ----
    @classmethod
    def zero(cls, n_vars: int) -> "SparsePolynomial":
        return cls(n_vars)

    @classmethod
    def one(cls, n_vars: int) -> "SparsePolynomial":
        return cls(n_vars, {(0,) * n_vars: 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coef: int = 1) -> "SparsePolynomial":
        return cls(len(exp), {tuple(exp): coef})

    # ---- access ----
    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.n_vars == other.n_vars and self._terms == other._terms

    def __hash__(self):
        return hash((self.n_vars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.render()!r})"

    # ---- arithmetic ----
    def _check(self, other: "SparsePolynomial") -> None:
        if other.n_vars != self.n_vars:
            raise PreconditionError(f"variable count mismatch: {self.n_vars} vs {other.n_vars}")

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check(other)
        out = dict(self._terms)
        for exp, coef in other._terms.items():
            out[exp] = out.get(exp, 0) + coef
        return SparsePolynomial(self.n_vars, out)

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial(self.n_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self + (-other)

    def times_one_minus(self, k: int) -> "SparsePolynomial":
        """(1 - x_k)·f"""
        out = dict(self._terms)
        for exp, coef in self._terms.items():
            bumped = exp[:k - 1] + (exp[k - 1] + 1,) + exp[k:]
            out[bumped] = out.get(bumped, 0) - coef
        return SparsePolynomial(self.n_vars, out)

    def swap_variables(self, i: int) -> "SparsePolynomial":
        """s_i：交换 x_i 与 x_{i+1}"""
        out = {}
        for exp, coef in self._terms.items():
            e = list(exp)
            e[i - 1], e[i] = e[i], e[i - 1]
            out[tuple(e)] = coef
        return SparsePolynomial(self.n_vars, out)

    # ---- degree structure ----
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self._terms), default=-1)

    def homogeneous_component(self, d: int) -> "SparsePolynomial":
        return SparsePolynomial(self.n_vars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def lowest_component(self) -> "SparsePolynomial":
        return self.homogeneous_component(self.min_degree())

    # ---- output ----
    def render(self) -> str:
        if not self._terms:
            return "0"
        parts: List[str] = []
        for exp in sorted(self._terms, key=lambda e: (sum(e), e)):
            coef = self._terms[exp]
            factors = []
            for k, e in enumerate(exp, start=1):
                if e == 1:
                    factors.append(f"x{k}")
                elif e > 1:
                    factors.append(f"x{k}^{e}")
            mag = abs(coef)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if not parts:
                parts.append(body if coef > 0 else f"-{body}")
            else:
                parts.append(("+ " if coef > 0 else "- ") + body)
        return " ".join(parts)

    def to_dict(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "terms": [{"exp": list(e), "coef": self._terms[e]} for e in sorted(self._terms)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SparsePolynomial":
        from utils.schemas import PolynomialModel, parse_model
        m = parse_model(PolynomialModel, data)
        out: Dict[Exponent, int] = {}
        for t in m.terms:
            out[tuple(t.exp)] = out.get(tuple(t.exp), 0) + t.coef
        return cls(m.n_vars, out)


# -----------------------
# Support helpers
# -----------------------
def support(f: SparsePolynomial) -> "LatticePointSet":
    from utils.discrete_convex import LatticePointSet
    return LatticePointSet(f.n_vars, frozenset(f._terms))


def top_component(f: SparsePolynomial) -> SparsePolynomial:
    return f.homogeneous_component(f.degree())


def homogenize_support(S: "LatticePointSet", d: int) -> "LatticePointSet":
    """α -> (α, d - |α|)，维数 +1"""
    from utils.discrete_convex import LatticePointSet
    pts = set()
    for a in S:
        total = sum(a)
        if total > d:
            raise PreconditionError(f"degree {d} below |{a}| = {total}")
        pts.add(tuple(a) + (d - total,))
    return LatticePointSet(S.dim + 1, frozenset(pts))


# -----------------------
# Divided differences
# -----------------------
def _check_index(f: SparsePolynomial, i: int) -> None:
    if not 1 <= i <= f.n_vars - 1:
        raise PreconditionError(f"operator index {i} out of range for {f.n_vars} variables")


def divided_difference(f: SparsePolynomial, i: int) -> SparsePolynomial:
    """
    ∂_i 逐单项计算：
      (x_i^a x_{i+1}^b - x_i^b x_{i+1}^a)/(x_i - x_{i+1})
        = x_i^b x_{i+1}^b · Σ_{k=0}^{a-b-1} x_i^{a-b-1-k} x_{i+1}^k     (a > b)
    a < b 时取相反数，a == b 为 0。
    """
    _check_index(f, i)
    out: Dict[Exponent, int] = {}
    for exp, coef in f.items():
        a, b = exp[i - 1], exp[i]
        if a == b:
            continue
        sign = 1
        if a < b:
            a, b, sign = b, a, -1
        for k in range(a - b):
            e = list(exp)
            e[i - 1] = b + (a - b - 1 - k)
            e[i] = b + k
            key = tuple(e)
            out[key] = out.get(key, 0) + sign * coef
    return SparsePolynomial(f.n_vars, out)


def isobaric_divided_difference(f: SparsePolynomial, i: int) -> SparsePolynomial:
    """∂̄_i(f) = ∂_i((1 - x_{i+1}) f)"""
    _check_index(f, i)
    return divided_difference(f.times_one_minus(i + 1), i)


# -----------------------
# Schubert / Grothendieck
# -----------------------
def poly_from_pipe_dreams(w: Permutation, reduced_only: bool) -> SparsePolynomial:
    ell = coxeter_length(w)
    out: Dict[Exponent, int] = {}
    seen = 0
    for P in enumerate_pipe_dreams(w):
        seen += 1
        excess = P.size - ell
        if reduced_only and excess:
            continue
        wt = P.weight()
        out[wt] = out.get(wt, 0) + (-1 if excess % 2 else 1)
    if not seen:
        raise InvariantViolation(f"PD({w}) came out empty")
    return SparsePolynomial(w.n, out)


def schubert_pd(w: Permutation) -> SparsePolynomial:
    return poly_from_pipe_dreams(w, reduced_only=True)


def grothendieck_pd(w: Permutation) -> SparsePolynomial:
    return poly_from_pipe_dreams(w, reduced_only=False)


AscentChoice = Union[str, random.Random]


def _ascent_path(w: Permutation, choose: AscentChoice) -> List[int]:
    """从 w 沿上升位置走到 w0，记录每步用的 s_i"""
    path = []
    cur = w
    while True:
        ascents = [i for i in range(1, cur.n) if cur(i) < cur(i + 1)]
        if not ascents:
            return path
        if choose == "first":
            i = ascents[0]
        elif choose == "last":
            i = ascents[-1]
        elif isinstance(choose, random.Random):
            i = choose.choice(ascents)
        else:
            raise PreconditionError(f"unknown ascent choice {choose!r}")
        path.append(i)
        cur = swap_positions(cur, i)


def _top_monomial(n: int) -> SparsePolynomial:
    return SparsePolynomial.monomial(tuple(n - k for k in range(1, n + 1)))


def _recurse(w: Permutation, op: Callable[[SparsePolynomial, int], SparsePolynomial],
             choose: AscentChoice) -> SparsePolynomial:
    path = _ascent_path(w, choose)
    log.debug("recursion for %s along %s", w, path)
    f = _top_monomial(w.n)
    # G_w = op_{i1}(op_{i2}(...op_{ik}(G_w0)))
    for i in reversed(path):
        f = op(f, i)
    return f


@lru_cache(maxsize=4096)
def _schubert_cached(images: Tuple[int, ...]) -> SparsePolynomial:
    return _recurse(Permutation(images), divided_difference, "first")


@lru_cache(maxsize=4096)
def _grothendieck_cached(images: Tuple[int, ...]) -> SparsePolynomial:
    return _recurse(Permutation(images), isobaric_divided_difference, "first")


def schubert_rec(w: Permutation, choose: AscentChoice = "first") -> SparsePolynomial:
    if choose == "first":
        return _schubert_cached(w.images)
    return _recurse(w, divided_difference, choose)


def grothendieck_rec(w: Permutation, choose: AscentChoice = "first") -> SparsePolynomial:
    if choose == "first":
        return _grothendieck_cached(w.images)
    return _recurse(w, isobaric_divided_difference, choose)


def grothendieck(w: Permutation, engine: str = "pipedream") -> SparsePolynomial:
    if engine == "pipedream":
        return grothendieck_pd(w)
    if engine == "recursion":
        return grothendieck_rec(w)
    raise PreconditionError(f"unknown engine {engine!r}")


def schubert(w: Permutation, engine: str = "pipedream") -> SparsePolynomial:
    if engine == "pipedream":
        return schubert_pd(w)
    if engine == "recursion":
        return schubert_rec(w)
    raise PreconditionError(f"unknown engine {engine!r}")


def check_path_independence(w: Permutation, rng: random.Random) -> SparsePolynomial:
    """两条不同的上升路径必须给出同一个 G_w"""
    f = grothendieck_rec(w, "first")
    g = grothendieck_rec(w, rng)
    if f != g:
        raise InvariantViolation(f"recursion depends on the path for {w}: {f.render()} vs {g.render()}")
    return f
