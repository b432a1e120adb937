# utils/perm_core.py
# -*- coding: utf-8 -*-
"""
置换、fireworks / layered 判定、下降段、Rothe 图、向上闭包与最大权重。
全部 1-indexed；所有类型构造后不可变。
"""
import itertools
import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from utils.errors import InvariantViolation, MalformedInputError, PreconditionError

log = logging.getLogger("perm_core")

Cell = Tuple[int, int]
WeightVector = Tuple[int, ...]


# -----------------------
# Types
# -----------------------
@dataclass(frozen=True)
class Permutation:
    images: Tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        n = len(imgs)
        if n == 0:
            raise MalformedInputError("empty permutation")
        seen = set()
        for v in imgs:
            if v < 1 or v > n or v in seen:
                raise MalformedInputError(f"not a permutation of [{n}]: offending value {v}")
            seen.add(v)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(v) for v in self.images)
        return ",".join(str(v) for v in self.images)

    @cached_property
    def _inverse_images(self) -> Tuple[int, ...]:
        inv = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return tuple(inv)

    def inverse(self) -> "Permutation":
        return Permutation(self._inverse_images)

    def position(self, value: int) -> int:
        """w^{-1}(value)"""
        return self._inverse_images[value - 1]


@dataclass(frozen=True)
class Diagram:
    n_rows: int
    n_cols: int
    cells: FrozenSet[Cell]

    def __post_init__(self):
        if self.n_rows < 1 or self.n_cols < 1:
            raise MalformedInputError("diagram dimensions must be positive")
        cells = frozenset((int(r), int(c)) for r, c in self.cells)
        for r, c in cells:
            if not (1 <= r <= self.n_rows and 1 <= c <= self.n_cols):
                raise MalformedInputError(
                    f"cell ({r},{c}) outside {self.n_rows}x{self.n_cols} grid")
        object.__setattr__(self, "cells", cells)

    def column(self, j: int) -> FrozenSet[int]:
        return frozenset(r for r, c in self.cells if c == j)

    def columns(self) -> List[FrozenSet[int]]:
        return [self.column(j) for j in range(1, self.n_cols + 1)]

    def __len__(self) -> int:
        return len(self.cells)

    def to_dict(self) -> dict:
        return {
            "n_rows": self.n_rows,
            "n_cols": self.n_cols,
            "cells": [list(c) for c in sorted(self.cells)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Diagram":
        from utils.schemas import DiagramModel, parse_model
        m = parse_model(DiagramModel, data)
        return cls(m.n_rows, m.n_cols, frozenset(tuple(c) for c in m.cells))

    def render(self) -> str:
        lines = []
        for r in range(1, self.n_rows + 1):
            lines.append("".join("#" if (r, c) in self.cells else "."
                                 for c in range(1, self.n_cols + 1)))
        return "\n".join(lines)


# -----------------------
# Construction / parsing
# -----------------------
_DIGITS = re.compile(r"^[1-9]+$")


def parse_permutation(text: str) -> Permutation:
    """'2413' 或 '2,4,1,3'；n > 9 只能用逗号形式"""
    s = (text or "").strip()
    if not s:
        raise MalformedInputError("empty permutation text")
    if "," in s:
        try:
            images = [int(part) for part in s.split(",")]
        except ValueError as e:
            raise MalformedInputError(f"malformed permutation {text!r}: {e}") from e
    elif _DIGITS.match(s):
        images = [int(ch) for ch in s]
    else:
        raise MalformedInputError(f"malformed permutation {text!r}")
    return Permutation(tuple(images))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest_element(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def all_permutations(n: int) -> Iterator[Permutation]:
    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation(p)


def fireworks_permutations(n: int) -> Iterator[Permutation]:
    return (w for w in all_permutations(n) if is_fireworks(w))


def layered_permutations(n: int) -> Iterator[Permutation]:
    return (w for w in all_permutations(n) if is_layered(w))


def swap_positions(w: Permutation, i: int) -> Permutation:
    """w·s_i：交换第 i、i+1 位"""
    if not 1 <= i < w.n:
        raise PreconditionError(f"s_{i} out of range for n={w.n}")
    imgs = list(w.images)
    imgs[i - 1], imgs[i] = imgs[i], imgs[i - 1]
    return Permutation(tuple(imgs))


# -----------------------
# Statistics
# -----------------------
def coxeter_length(w: Permutation) -> int:
    imgs = w.images
    return sum(1 for i in range(w.n) for j in range(i + 1, w.n) if imgs[i] > imgs[j])


def lehmer_code(w: Permutation) -> WeightVector:
    imgs = w.images
    return tuple(sum(1 for j in range(i + 1, w.n) if imgs[j] < imgs[i]) for i in range(w.n))


def left_to_right_maxima(w: Permutation) -> FrozenSet[int]:
    out, best = set(), 0
    for v in w.images:
        if v > best:
            out.add(v)
            best = v
    return frozenset(out)


def descending_runs(w: Permutation) -> List[Tuple[int, int]]:
    """极大下降段，返回位置区间 [a, b]（1-indexed，闭区间）"""
    runs = []
    start = 1
    for i in range(2, w.n + 1):
        if w(i) > w(i - 1):
            runs.append((start, i - 1))
            start = i
    runs.append((start, w.n))
    return runs


def initial_terms(w: Permutation) -> FrozenSet[int]:
    return frozenset(w(a) for a, _ in descending_runs(w))


# -----------------------
# Pattern classes
# -----------------------
def _fireworks_by_pattern(w: Permutation) -> bool:
    # 3-12：i < j, w(j) < w(j+1) < w(i)
    imgs = w.images
    for j in range(1, w.n - 1):
        if imgs[j] < imgs[j + 1]:
            for i in range(j):
                if imgs[i] > imgs[j + 1]:
                    return False
    return True


def _fireworks_by_runs(w: Permutation) -> bool:
    heads = [w(a) for a, _ in descending_runs(w)]
    return all(x < y for x, y in zip(heads, heads[1:]))


def is_fireworks(w: Permutation) -> bool:
    by_pattern = _fireworks_by_pattern(w)
    if by_pattern != _fireworks_by_runs(w):
        raise InvariantViolation(f"fireworks characterizations disagree on {w}")
    return by_pattern


def _contains_pattern(w: Permutation, pattern: Sequence[int]) -> bool:
    k = len(pattern)
    for idx in itertools.combinations(range(w.n), k):
        vals = [w.images[i] for i in idx]
        order = sorted(range(k), key=lambda t: vals[t])
        ranks = [0] * k
        for r, t in enumerate(order, start=1):
            ranks[t] = r
        if tuple(ranks) == tuple(pattern):
            return True
    return False


def _layered_by_blocks(w: Permutation) -> bool:
    lengths = [b - a + 1 for a, b in descending_runs(w)]
    return layered_from_blocks(lengths) == w


def is_layered(w: Permutation) -> bool:
    by_pattern = not (_contains_pattern(w, (2, 3, 1)) or _contains_pattern(w, (3, 1, 2)))
    if by_pattern != _layered_by_blocks(w):
        raise InvariantViolation(f"layered characterizations disagree on {w}")
    return by_pattern


def layered_from_blocks(blocks: Iterable[int]) -> Permutation:
    blocks = list(blocks)
    if not blocks or any(int(b) < 1 for b in blocks):
        raise PreconditionError(f"block sizes must be positive and nonempty: {blocks}")
    images: List[int] = []
    c_prev = 0
    for b in blocks:
        c = c_prev + int(b)
        images.extend(range(c, c_prev, -1))
        c_prev = c
    return Permutation(tuple(images))


def require_fireworks(w: Permutation) -> None:
    if not is_fireworks(w):
        raise PreconditionError(f"{w} is not a fireworks permutation")


def pi_of(w: Permutation) -> Permutation:
    """π(w)：块大小取 w 的下降段长度的 layered 置换"""
    require_fireworks(w)
    return layered_from_blocks(b - a + 1 for a, b in descending_runs(w))


# -----------------------
# Diagrams
# -----------------------
def rothe_diagram(w: Permutation) -> Diagram:
    cells = frozenset(
        (i, j)
        for i in range(1, w.n + 1)
        for j in range(1, w(i))
        if i < w.position(j)
    )
    return Diagram(w.n, w.n, cells)


def upward_closure(D: Diagram) -> Diagram:
    lowest: Dict[int, int] = {}
    for r, c in D.cells:
        lowest[c] = max(lowest.get(c, 0), r)
    cells = frozenset((r, c) for c, bottom in lowest.items() for r in range(1, bottom + 1))
    return Diagram(D.n_rows, D.n_cols, cells)


def row_weight(D: Diagram) -> WeightVector:
    wt = [0] * D.n_rows
    for r, _ in D.cells:
        wt[r - 1] += 1
    return tuple(wt)


def max_weight_formula(w: Permutation) -> WeightVector:
    """wt(D̄(w))，按"非下降段首项"的计数公式；与闭包计算互相校验"""
    require_fireworks(w)
    heads = initial_terms(w)
    tails = [j for j in range(1, w.n + 1) if w(j) not in heads]
    formula = tuple(sum(1 for j in tails if j > a) for a in range(1, w.n + 1))
    closure = row_weight(upward_closure(rothe_diagram(w)))
    if formula != closure:
        raise InvariantViolation(
            f"max weight formula {formula} != closure weight {closure} for {w}")
    return formula


def max_weight(w: Permutation) -> WeightVector:
    """任意 w 的 wt(D̄(w))（不要求 fireworks）"""
    return row_weight(upward_closure(rothe_diagram(w)))
