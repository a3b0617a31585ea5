"""Linearized Reed-Solomon component codes."""
from __future__ import annotations

import random
from typing import Sequence

from . import linalg
from .gf import FieldTower
from .skew import SkewRing, expand, trim
from .subroutines import fq_rank
from .sumrank import LengthPartition, ShapeMismatch, as_partition


class CodeError(ValueError):
    pass


class DependentBetaBlock(CodeError):
    pass


class ConjugateXiEntries(CodeError):
    pass


class BadDimension(CodeError):
    pass


class BlockTooWide(CodeError):
    pass


class DegreeTooHigh(CodeError):
    pass


class KernelDimensionUnexpected(CodeError):
    pass


def default_beta(t: FieldTower, p: LengthPartition) -> list[int]:
    return [t.elem(i) for b in p.blocks for i in range(b)]


def default_xi(t: FieldTower, ell: int) -> list[int]:
    reps = t.conjugacy_representatives()
    if ell > len(reps):
        raise ConjugateXiEntries(f"only {len(reps)} nontrivial conjugacy classes")
    return reps[:ell]


class LrsCode:
    """LRS[beta, xi; n, k] with derived h, H, G and location lookup tables.

    Rings: ``R`` is F_{q^m}[x; theta], ``Rinv`` the theta^{-1} twin.
    Per-entry parameter vectors: ``xi_e`` (xi), ``xi_t`` (theta^{-1}(xi)) and
    ``xi_h`` (theta^{-1}(xi^{-1})); per-block versions drop the ``_e``.
    """

    def __init__(self, tower: FieldTower, partition, k: int,
                 beta: Sequence[int] | None = None, xi: Sequence[int] | None = None):
        p = as_partition(partition)
        t = tower
        F = t.qm
        self.tower, self.partition, self.k = t, p, k
        n = p.n
        self.n = n
        if not 1 <= k < n:
            raise BadDimension(f"need 1 <= k < n, got k={k}, n={n}")
        if any(b > t.m for b in p.blocks):
            raise BlockTooWide(f"block lengths must not exceed m={t.m}")
        beta = list(beta) if beta is not None else default_beta(t, p)
        xi = list(xi) if xi is not None else default_xi(t, p.ell)
        if len(beta) != n or len(xi) != p.ell:
            raise ShapeMismatch("beta needs n entries and xi one per block")
        for blk in p.split(beta):
            if fq_rank(t, blk) != len(blk):
                raise DependentBetaBlock(f"block {blk} is F_q-dependent")
        if any(a == 0 for a in xi) or len({t.norm(a) for a in xi}) != len(xi):
            raise ConjugateXiEntries("xi entries must be nonzero and pairwise non-conjugate")
        self.beta, self.xi = beta, xi
        self.R = SkewRing(t, 1)
        self.Rinv = SkewRing(t, -1)
        self.xi_tilde = [t.theta(a, -1) for a in xi]
        self.xi_hat = [t.theta(F.inv(a), -1) for a in xi]
        self.xi_e = expand(xi, p.blocks)
        self.xi_t = expand(self.xi_tilde, p.blocks)
        self.xi_h = expand(self.xi_hat, p.blocks)
        self.G = self.R.moore(k, beta, self.xi_e)
        ker = linalg.kernel(F, self.R.moore(n - 1, beta, self.xi_e), n)
        if len(ker) != 1:
            raise KernelDimensionUnexpected(f"kernel dimension {len(ker)}")
        h = ker[0]
        c = F.inv(next(v for v in h if v))
        self.h = [F.mul(c, v) for v in h]
        self.H = self.Rinv.moore(n - k, self.h, self.xi_t)
        self._HT = linalg.transpose(self.H)
        self.h_blocks = p.split(self.h)
        self._left_inverses = [self._left_inverse(hb) for hb in self.h_blocks]
        self._loc_tables: list[dict[int, tuple[int, ...]]] = [dict() for _ in p.blocks]

    # -- construction helpers --

    def _left_inverse(self, hb: list[int]) -> list[list[int]]:
        """n_i x m matrix L over F_q with L ext(h^(i)) = I, by leftmost pivots."""
        K = self.tower.base
        Hq = self.tower.ext(hb)                       # m x n_i
        _, piv = linalg.rref(K, linalg.transpose(Hq))
        inv = linalg.inverse(K, [Hq[r] for r in piv])  # n_i x n_i
        L = [[0] * self.tower.m for _ in hb]
        for i, row in enumerate(inv):
            for c, r in enumerate(piv):
                L[i][r] = row[c]
        return L

    @property
    def left_inverses(self) -> list[list[list[int]]]:
        return self._left_inverses

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    # -- encoding and syndromes --

    def encode(self, f: Sequence[int]) -> list[int]:
        f = trim(list(f))
        if len(f) > self.k:
            raise DegreeTooHigh(f"deg f = {len(f) - 1} >= k = {self.k}")
        return self.R.eval_vec(f, self.beta, self.xi_e)

    def encode_interleaved(self, fs: Sequence[Sequence[int]], mode: str) -> list:
        rows = [self.encode(f) for f in fs]
        return rows if mode == "vertical" else [v for r in rows for v in r]

    def random_message(self, rng: random.Random) -> list[int]:
        return [self.tower.qm.random(rng) for _ in range(self.k)]

    def syndrome(self, y: Sequence[int]) -> list[int]:
        if len(y) != self.n:
            raise ShapeMismatch(f"expected length {self.n}, got {len(y)}")
        F = self.tower.qm
        add, mul = F.add, F.mul
        out = []
        for row in self.H:
            acc = 0
            for a, b in zip(y, row):
                if a:
                    acc = add(acc, mul(a, b))
            out.append(acc)
        return out

    def is_codeword(self, y: Sequence[int]) -> bool:
        return not any(self.syndrome(y))

    # -- locations --

    def location_column(self, i: int, x: int) -> tuple[int, ...]:
        """b in F_q^{n_i} with h^(i) b^T = x (for x in the span of h^(i))."""
        tab = self._loc_tables[i]
        col = tab.get(x)
        if col is None:
            ds = self.tower.qm.digits(x)
            K = self.tower.base
            col = []
            for row in self._left_inverses[i]:
                acc = 0
                for a, b in zip(row, ds):
                    if a and b:
                        acc = K.add(acc, K.mul(a, b))
                col.append(acc)
            col = tuple(col)
            tab[x] = col
        return col

    def locations_from_locators(self, x_block: Sequence[int], i: int) -> list[list[int]]:
        """B^(i) (t_i x n_i) with h^(i) B^(i)T = x_block."""
        return [list(self.location_column(i, x)) for x in x_block]

    def locator(self, b_row: Sequence[int], i: int) -> int:
        """h^(i) b^T for an F_q row b."""
        F = self.tower.qm
        acc = 0
        for h, b in zip(self.h_blocks[i], b_row):
            if b:
                acc = F.add(acc, F.mul(h, b))
        return acc

    def config(self) -> dict:
        return {**self.tower.config(), "partition": list(self.partition.blocks), "k": self.k}


def random_code(tower: FieldTower, partition, k: int, rng: random.Random,
                xi: Sequence[int] | None = None) -> LrsCode:
    """Code with uniformly random F_q-independent beta blocks."""
    p = as_partition(partition)
    beta = []
    for b in p.blocks:
        while True:
            blk = [tower.qm.random(rng) for _ in range(b)]
            if fq_rank(tower, blk) == b:
                break
        beta.extend(blk)
    return LrsCode(tower, p, k, beta, xi)
