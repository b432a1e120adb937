# utils/pipedream_engine.py
# -*- coding: utf-8 -*-
"""
Pipe dream：阶梯形 {(i,j): i+j <= n} 上的 cross / bump 铺砌。

约定（与 PD(2413) 的例子对齐）：
  - 管道按顶边列号 1..n 编号，向下、向左走，从左边界出去；
  - 反对角线 i+j = n+1 上放半 bump，列 n+1-i 的管道在第 i 行转向左；
  - 第 r 行左边界出去的管道号就是 δ(P)(r)，即管道 j 从第 δ(P)^{-1}(j) 行出去；
  - 一对已经真正交叉过的管道再遇到 cross 时按 bump 处理，记为 fake。

交叉位置按行存成 bitmask：第 r 行的 bit c-1 对应格子 (r, c)。
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from utils.errors import MalformedInputError
from utils.perm_core import Cell, Permutation, WeightVector, coxeter_length

log = logging.getLogger("pipedream_engine")

Pair = Tuple[int, int]


def tile_key(cell: Cell) -> Tuple[int, int]:
    """管道行进顺序：行升序，同行列降序（越靠后 key 越大）"""
    return (cell[0], -cell[1])


def staircase_cells(n: int) -> List[Cell]:
    return [(r, c) for r in range(1, n) for c in range(n - r, 0, -1)]


# -----------------------
# Types
# -----------------------
@dataclass(frozen=True)
class PipeDream:
    n: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(m) for m in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.n < 1 or len(rows) != self.n:
            raise MalformedInputError(f"pipe dream needs {self.n} row masks, got {len(rows)}")
        for r, mask in enumerate(rows, start=1):
            if mask < 0 or mask >> (self.n - r):
                raise MalformedInputError(f"row {r} has crosses outside the staircase")

    @classmethod
    def empty(cls, n: int) -> "PipeDream":
        return cls(n, (0,) * n)

    @classmethod
    def from_crosses(cls, n: int, crosses: Iterable[Cell]) -> "PipeDream":
        rows = [0] * n
        for r, c in crosses:
            if not (1 <= r and 1 <= c and r + c <= n):
                raise MalformedInputError(f"cross ({r},{c}) outside staircase of size {n}")
            rows[r - 1] |= 1 << (c - 1)
        return cls(n, tuple(rows))

    @property
    def crosses(self) -> Tuple[Cell, ...]:
        return tuple(
            (r, c)
            for r, mask in enumerate(self.rows, start=1)
            for c in range(1, self.n - r + 1)
            if mask >> (c - 1) & 1
        )

    def has_cross(self, cell: Cell) -> bool:
        r, c = cell
        return bool(self.rows[r - 1] >> (c - 1) & 1)

    def with_cross(self, cell: Cell) -> "PipeDream":
        r, c = cell
        rows = list(self.rows)
        rows[r - 1] |= 1 << (c - 1)
        return PipeDream(self.n, tuple(rows))

    def without_crosses(self, cells: Iterable[Cell]) -> "PipeDream":
        rows = list(self.rows)
        for r, c in cells:
            rows[r - 1] &= ~(1 << (c - 1))
        return PipeDream(self.n, tuple(rows))

    @property
    def size(self) -> int:
        return sum(bin(m).count("1") for m in self.rows)

    def weight(self) -> WeightVector:
        return tuple(bin(m).count("1") for m in self.rows)

    def to_dict(self) -> dict:
        return {"n": self.n, "crosses": [list(c) for c in self.crosses]}

    @classmethod
    def from_dict(cls, data: dict) -> "PipeDream":
        from utils.schemas import PipeDreamModel, parse_model
        m = parse_model(PipeDreamModel, data)
        return cls.from_crosses(m.n, m.crosses)

    def render(self, fakes: FrozenSet[Cell] = frozenset()) -> str:
        """'+' cross，'.' bump，'*' fake cross（给了 fakes 时）"""
        lines = []
        for r in range(1, self.n + 1):
            chars = []
            for c in range(1, self.n - r + 1):
                if (r, c) in fakes:
                    chars.append("*")
                else:
                    chars.append("+" if self.has_cross((r, c)) else ".")
            lines.append(" ".join(chars))
        return "\n".join(lines)


@dataclass(frozen=True)
class TraceResult:
    demazure: Permutation
    real_crosses: FrozenSet[Cell]
    fake_crosses: FrozenSet[Cell]
    # 每个格子：(primary = 从底边出去的管道, secondary = 从左边出去的管道)
    tile_pipes: Dict[Cell, Tuple[int, int]] = field(compare=False)
    # 每对真正交叉的管道 (lo, hi) -> 交叉所在格子
    real_pairs: Dict[Pair, Cell] = field(compare=False)
    weight: WeightVector

    @property
    def reduced(self) -> bool:
        return not self.fake_crosses

    def primary_tile(self, pipe: int, row: int) -> Optional[Cell]:
        n = self.demazure.n
        for c in range(1, n - row + 1):
            if self.tile_pipes[(row, c)][0] == pipe:
                return (row, c)
        return None


# -----------------------
# Tracing
# -----------------------
def trace(P: PipeDream) -> TraceResult:
    n = P.n
    down = list(range(1, n + 1))  # down[c-1]：从上方进入当前行第 c 列的管道
    crossed = set()
    exits: List[int] = []
    real, fake = [], []
    tile_pipes: Dict[Cell, Tuple[int, int]] = {}
    real_pairs: Dict[Pair, Cell] = {}

    for r in range(1, n + 1):
        mask = P.rows[r - 1]
        h = down.pop()  # 反对角线半 bump：最右一列的管道转向左
        for c in range(n - r, 0, -1):
            t = down[c - 1]
            if mask >> (c - 1) & 1:
                pair = (t, h) if t < h else (h, t)
                if pair not in crossed:
                    crossed.add(pair)
                    real.append((r, c))
                    real_pairs[pair] = (r, c)
                    tile_pipes[(r, c)] = (t, h)
                    continue
                fake.append((r, c))
            # bump（或 fake cross）：上进左出，右进下出
            tile_pipes[(r, c)] = (h, t)
            down[c - 1], h = h, t
        exits.append(h)

    return TraceResult(
        demazure=Permutation(tuple(exits)),
        real_crosses=frozenset(real),
        fake_crosses=frozenset(fake),
        tile_pipes=tile_pipes,
        real_pairs=real_pairs,
        weight=P.weight(),
    )


def bad_primary_crosses(tr: TraceResult) -> List[Cell]:
    """第 r 行的 cross，primary 管道是 w(r)…w(n) 的从左到右最大值；正常情况下应为空"""
    w = tr.demazure
    bad = []
    for r, c in sorted(tr.real_crosses | tr.fake_crosses):
        best, maxima = 0, set()
        for v in w.images[r - 1:]:
            if v > best:
                maxima.add(v)
                best = v
        if tr.tile_pipes[(r, c)][0] in maxima:
            bad.append((r, c))
    return bad


def drop_fakes(P: PipeDream) -> PipeDream:
    """P^red：fake cross 换成 bump；走线不变，所以 δ 不变且结果是 reduced"""
    tr = trace(P)
    if tr.reduced:
        return P
    return P.without_crosses(tr.fake_crosses)


# -----------------------
# Enumeration
# -----------------------
def enumerate_pipe_dreams(w: Permutation) -> Iterator[PipeDream]:
    """
    PD(w) 的剪枝 DFS。行从上到下，行内从右到左逐格选 bump/cross，
    维护进入各列的管道与已交叉管道对（bitmask）。
    剪枝：行结束时左边界出去的管道必须是 w(r)。
    管道经 bump 会往左走，离开的行没有按列的上界，不能据此剪枝。
    先 bump 后 cross，于是输出按行 bitmask 元组字典序。
    """
    n = w.n
    target = w.images
    masks = [0] * n

    def pair_bit(a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        return 1 << ((a - 1) * n + (b - 1))

    def fill_row(r: int, c: int, down: List[int], h: int, crossed: int, mask: int):
        if c == 0:
            if h != target[r - 1]:
                return
            masks[r - 1] = mask
            yield from next_row(r + 1, down, crossed)
            masks[r - 1] = 0
            return

        t = down[c - 1]
        bumped = down.copy()
        bumped[c - 1] = h
        yield from fill_row(r, c - 1, bumped, t, crossed, mask)

        bit = pair_bit(t, h)
        if crossed & bit:
            # fake：走线同 bump
            yield from fill_row(r, c - 1, bumped, t, crossed, mask | 1 << (c - 1))
        else:
            yield from fill_row(r, c - 1, down, h, crossed | bit, mask | 1 << (c - 1))

    def next_row(r: int, down: List[int], crossed: int):
        if r == n:
            if down[0] == target[n - 1]:
                yield PipeDream(n, tuple(masks))
            return
        yield from fill_row(r, n - r, down[:-1], down[-1], crossed, 0)

    yield from next_row(1, list(range(1, n + 1)), 0)


def naive_pipe_dreams(w: Permutation) -> Iterator[PipeDream]:
    """暴力：所有 2^(n(n-1)/2) 种铺砌逐个 trace 过滤。只用于小 n 对拍"""
    n = w.n
    choices = [range(1 << (n - r)) for r in range(1, n + 1)]
    for rows in itertools.product(*choices):
        P = PipeDream(n, rows)
        if trace(P).demazure == w:
            yield P


def count_pipe_dreams(w: Permutation, reduced_only: bool = False) -> int:
    ell = coxeter_length(w)
    return sum(1 for P in enumerate_pipe_dreams(w) if not reduced_only or P.size == ell)
