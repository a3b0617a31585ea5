"""Sum-rank weights, fixed-weight sampling and error decompositions.

Word layouts:
  plain       list of n elements
  vertical    s rows of n elements (s x n matrix)
  horizontal  s*n elements, component-major (y_1 | y_2 | ... | y_s)

Per block i the sum-rank weight is the F_q-rank of an F_q matrix:
  plain       m x n_i           (ext of the block)
  vertical    (s m) x n_i       (ext of the s x n_i column block)
  horizontal  m x (s n_i)       (ext of the block concatenated across components)
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from . import linalg
from .gf import FieldTower

MODES = ("plain", "vertical", "horizontal")


class ShapeMismatch(ValueError):
    pass


class InfeasibleWeight(ValueError):
    pass


@dataclass(frozen=True)
class LengthPartition:
    blocks: tuple[int, ...]

    def __init__(self, blocks: Sequence[int]):
        blocks = tuple(int(b) for b in blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise ValueError("block lengths must be positive")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(self.blocks)

    @property
    def ell(self) -> int:
        return len(self.blocks)

    @property
    def offsets(self) -> list[int]:
        out, acc = [], 0
        for b in self.blocks:
            out.append(acc)
            acc += b
        return out

    def slices(self) -> list[slice]:
        return [slice(o, o + b) for o, b in zip(self.offsets, self.blocks)]

    def split(self, v: Sequence[int]) -> list[list[int]]:
        return [list(v[sl]) for sl in self.slices()]

    def scaled(self, s: int) -> "LengthPartition":
        return LengthPartition([s * b for b in self.blocks])


@dataclass(frozen=True)
class RankPartition:
    ranks: tuple[int, ...]

    def __init__(self, ranks: Sequence[int]):
        object.__setattr__(self, "ranks", tuple(int(r) for r in ranks))

    @property
    def total(self) -> int:
        return sum(self.ranks)


def as_partition(p) -> LengthPartition:
    return p if isinstance(p, LengthPartition) else LengthPartition(p)


# ---------------------------------------------------------------------------
# block matrices over F_q

def _block_rows(t: FieldTower, x, p: LengthPartition, mode: str, s: int) -> list[list[list[int]]]:
    """The F_q matrix of every block (see module docstring)."""
    F = t.qm
    m = t.m
    out = []
    if mode == "plain":
        if len(x) != p.n:
            raise ShapeMismatch(f"expected length {p.n}, got {len(x)}")
        for sl in p.slices():
            cols = [F.digits(v) for v in x[sl]]
            out.append([[c[d] for c in cols] for d in range(m)])
    elif mode == "vertical":
        if len(x) != s or any(len(r) != p.n for r in x):
            raise ShapeMismatch(f"expected {s} x {p.n} matrix")
        for sl in p.slices():
            rows = []
            for r in x:
                cols = [F.digits(v) for v in r[sl]]
                rows.extend([c[d] for c in cols] for d in range(m))
            out.append(rows)
    elif mode == "horizontal":
        if len(x) != s * p.n:
            raise ShapeMismatch(f"expected length {s * p.n}, got {len(x)}")
        n = p.n
        for sl in p.slices():
            cols = [F.digits(v) for j in range(s) for v in x[j * n:(j + 1) * n][sl]]
            out.append([[c[d] for c in cols] for d in range(m)])
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return out


def rank_partition(t: FieldTower, x, p, mode: str = "plain", s: int = 1) -> RankPartition:
    p = as_partition(p)
    K = t.base
    return RankPartition([linalg.rank(K, M) for M in _block_rows(t, x, p, mode, s)])


def weight(t: FieldTower, x, p, mode: str = "plain", s: int = 1) -> int:
    return rank_partition(t, x, p, mode, s).total


# ---------------------------------------------------------------------------
# fixed-weight sampling

def count_rank(q: int, a: int, b: int, r: int) -> int:
    """Number of a x b matrices over F_q of rank r."""
    if r < 0 or r > min(a, b):
        return 0
    num = 1
    for i in range(r):
        num *= (q ** a - q ** i) * (q ** b - q ** i)
    den = 1
    for i in range(r):
        den *= q ** r - q ** i
    return num // den


def block_shape(t: FieldTower, n_i: int, mode: str, s: int) -> tuple[int, int]:
    if mode == "plain":
        return t.m, n_i
    if mode == "vertical":
        return s * t.m, n_i
    if mode == "horizontal":
        return t.m, s * n_i
    raise ValueError(f"unknown mode {mode!r}")


def max_weight(t: FieldTower, p, mode: str = "plain", s: int = 1) -> int:
    p = as_partition(p)
    return sum(min(block_shape(t, b, mode, s)) for b in p.blocks)


def _sample_partition(t, p, mode, s, tau, rng) -> tuple[int, ...]:
    caps = [min(block_shape(t, b, mode, s)) for b in p.blocks]
    comps, weights = [], []
    for r in product(*[range(c + 1) for c in caps]):
        if sum(r) != tau:
            continue
        w = 1
        for ri, b in zip(r, p.blocks):
            w *= count_rank(t.q, *block_shape(t, b, mode, s), ri)
        comps.append(r)
        weights.append(w)
    if not comps:
        raise InfeasibleWeight(f"no word of weight {tau}")
    u = rng.randrange(sum(weights))
    for r, w in zip(comps, weights):
        if u < w:
            return r
        u -= w
    raise AssertionError


def _full_rank(K, rows: int, cols: int, rng: random.Random) -> list[list[int]]:
    """Uniform rows x cols matrix over K of rank min(rows, cols), by rejection."""
    target = min(rows, cols)
    while True:
        M = [[rng.randrange(K.order) for _ in range(cols)] for _ in range(rows)]
        if linalg.rank(K, M) == target:
            return M


def _independent(t: FieldTower, count: int, width: int, rng: random.Random) -> list[list[int]]:
    """`count` vectors of F_{q^m}^width whose F_q-coordinates are independent.

    Returned as `width` rows of `count` elements (a width x count matrix)."""
    F = t.qm
    m = t.m
    U = _full_rank(t.base, width * m, count, rng)
    return [[F.from_digits(U[j * m + d][c] for d in range(m)) for c in range(count)]
            for j in range(width)]


@dataclass
class ErrorPart:
    """Values and locations of one error type.

    values     vertical: s x t matrix (list of s rows); horizontal/plain: length t
    locations  per block an F_q matrix of shape t_i x (n_i or s n_i)
    Columns of values (entries for horizontal) are ordered block by block."""

    values: list
    locations: list[list[list[int]]]
    ranks: tuple[int, ...]

    @property
    def t(self) -> int:
        return sum(self.ranks)

    def value_blocks(self, mode: str) -> list:
        """Values split by block: vertical gives s x t_i matrices, else vectors."""
        out, o = [], 0
        for r in self.ranks:
            if mode == "vertical":
                out.append([row[o:o + r] for row in self.values])
            else:
                out.append(list(self.values[o:o + r]))
            o += r
        return out


def _recompose_part(t: FieldTower, part: ErrorPart, p: LengthPartition, mode: str, s: int):
    F = t.qm
    n = p.n
    vb = part.value_blocks(mode)
    if mode == "vertical":
        E = [[0] * n for _ in range(s)]
        for (A, B, sl) in zip(vb, part.locations, p.slices()):
            for j in range(s):
                for c in range(sl.stop - sl.start):
                    acc = 0
                    for r in range(len(B)):
                        if B[r][c]:
                            acc = F.add(acc, F.mul(A[j][r], B[r][c]))
                    E[j][sl.start + c] = acc
        return E
    width = s if mode == "horizontal" else 1
    e = [0] * (width * n)
    for (a, B, sl, ni) in zip(vb, part.locations, p.slices(), p.blocks):
        for j in range(width):
            for c in range(ni):
                acc = 0
                for r in range(len(B)):
                    b = B[r][j * ni + c]
                    if b:
                        acc = F.add(acc, F.mul(a[r], b))
                e[j * n + sl.start + c] = acc
    return e


def add_words(t: FieldTower, x, y, mode: str):
    F = t.qm
    if mode == "vertical":
        return [[F.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(x, y)]
    return [F.add(a, b) for a, b in zip(x, y)]


def sub_words(t: FieldTower, x, y, mode: str):
    F = t.qm
    if mode == "vertical":
        return [[F.sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(x, y)]
    return [F.sub(a, b) for a, b in zip(x, y)]


def zero_word(p: LengthPartition, mode: str, s: int):
    if mode == "vertical":
        return [[0] * p.n for _ in range(s)]
    return [0] * ((s if mode == "horizontal" else 1) * p.n)


@dataclass
class ErrorDecomposition:
    mode: str
    s: int
    parts: dict[str, ErrorPart] = field(default_factory=dict)

    def part(self, kind: str) -> ErrorPart | None:
        return self.parts.get(kind)

    @property
    def t(self) -> int:
        return sum(pt.t for pt in self.parts.values())

    def recompose(self, t: FieldTower, p) -> list:
        p = as_partition(p)
        out = zero_word(p, self.mode, self.s)
        for pt in self.parts.values():
            out = add_words(t, out, _recompose_part(t, pt, p, self.mode, self.s), self.mode)
        return out


def sample_part(t: FieldTower, p, mode: str, s: int, tau: int,
                rng: random.Random) -> ErrorPart:
    """Factored uniform draw of a weight-tau word.

    The word A*B is uniform on its fixed-weight set: the rank partition is
    drawn with exact counts, and every rank-r block has the same number of
    full-rank factorizations U*V."""
    p = as_partition(p)
    s = 1 if mode == "plain" else s
    if tau < 0 or tau > max_weight(t, p, mode, s):
        raise InfeasibleWeight(f"weight {tau} is infeasible")
    ranks = _sample_partition(t, p, mode, s, tau, rng)
    K = t.base
    width = s if mode == "vertical" else 1
    values_cols: list[list[int]] = []
    locs = []
    for r, ni in zip(ranks, p.blocks):
        A = _independent(t, r, width, rng) if r else [[] for _ in range(width)]
        cols = s * ni if mode == "horizontal" else ni
        B = _full_rank(K, r, cols, rng) if r else []
        values_cols.append(A)
        locs.append(B)
    if mode == "vertical":
        values = [sum((A[j] for A in values_cols), []) for j in range(s)]
    else:
        values = sum((A[0] for A in values_cols), [])
    return ErrorPart(values, locs, tuple(ranks))


def sample_fixed_weight(t: FieldTower, p, mode: str, s: int, tau: int,
                        rng: random.Random):
    """A word drawn uniformly from the words of sum-rank weight tau."""
    p = as_partition(p)
    part = sample_part(t, p, mode, s, tau, rng)
    return _recompose_part(t, part, p, mode, 1 if mode == "plain" else s)


def full_rank_decompose(t: FieldTower, e, p, mode: str = "plain", s: int = 1) -> ErrorDecomposition:
    """Canonical decomposition e = A B: B is the reduced row echelon basis of
    each block's row space, A the block columns at its pivots."""
    p = as_partition(p)
    s = 1 if mode == "plain" else s
    K = t.base
    F = t.qm
    m = t.m
    mats = _block_rows(t, e, p, mode, s)
    locs, ranks, vals_v, vals_h = [], [], [[] for _ in range(s)], []
    for M in mats:
        R, piv = linalg.rref(K, M)
        B = R[:len(piv)]
        locs.append(B)
        ranks.append(len(piv))
        for c in piv:
            col = [row[c] for row in M]
            if mode == "vertical":
                for j in range(s):
                    vals_v[j].append(F.from_digits(col[j * m:(j + 1) * m]))
            else:
                vals_h.append(F.from_digits(col))
    values = vals_v if mode == "vertical" else vals_h
    return ErrorDecomposition(mode, s, {"F": ErrorPart(values, locs, tuple(ranks))})


# ---------------------------------------------------------------------------
# erasure channel

@dataclass
class ErasureSideInfo:
    """Known part of the error: values of the row erasures and locations of
    the column erasures, each with its per-block ranks."""

    row_values: list                       # A_R (s x t_R) or a_R (length t_R)
    row_ranks: tuple[int, ...]
    col_locations: list[list[list[int]]]   # B_C per block
    col_ranks: tuple[int, ...]

    @property
    def t_R(self) -> int:
        return sum(self.row_ranks)

    @property
    def t_C(self) -> int:
        return sum(self.col_ranks)

    @classmethod
    def none(cls, p, mode: str, s: int) -> "ErasureSideInfo":
        p = as_partition(p)
        ell = p.ell
        rv = [[] for _ in range(s)] if mode == "vertical" else []
        return cls(rv, (0,) * ell, [[] for _ in range(ell)], (0,) * ell)


@dataclass
class ErasureInstance:
    received: list
    side: ErasureSideInfo
    truth: ErrorDecomposition
    error: list
    rejections: int


def make_erasure_instance(t: FieldTower, c, p, mode: str, s: int, t_F: int, t_R: int,
                          t_C: int, rng: random.Random, max_rejections: int = 10_000
                          ) -> ErasureInstance:
    """y = c + E_F + E_R + E_C with independent fixed-weight parts, redrawn
    until the weights add up."""
    p = as_partition(p)
    if t_F + t_R + t_C > max_weight(t, p, mode, s):
        raise InfeasibleWeight("total weight is infeasible")
    for rejections in range(max_rejections):
        parts = {k: sample_part(t, p, mode, s, w, rng)
                 for k, w in (("F", t_F), ("R", t_R), ("C", t_C))}
        truth = ErrorDecomposition(mode, s, parts)
        E = truth.recompose(t, p)
        if weight(t, E, p, mode, s) == t_F + t_R + t_C:
            break
    else:
        raise InfeasibleWeight("weights never added up")
    side = ErasureSideInfo(parts["R"].values, parts["R"].ranks,
                           parts["C"].locations, parts["C"].ranks)
    return ErasureInstance(add_words(t, c, E, mode), side, truth, E, rejections)
