"""Kernels shared by the decoders.

* ``sr_synthesize``  shortest multisequence skew-feedback shift register,
  with a uniqueness flag.
* ``root_space_bases``  probabilistic root-space bases of a skew polynomial
  (factor x^m - N_m(a) through the gcrd and sample its cofactor's image).
* ``gabidulin_solve``  O(t^2) elimination for Moore-structured systems.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .gf import FieldTower
from .skew import SkewPolynomial, SkewRing, trim


class AllSequencesEmpty(ValueError):
    pass


class AttemptBudgetExceeded(RuntimeError):
    pass


class BadSeed(ValueError):
    pass


class ZeroPivot(ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# shift-register synthesis

@dataclass(frozen=True)
class SyndromeSequences:
    """Sequences s_j of common nominal length N; entries before offsets[j] are
    ignored, so sequence j effectively is s_j[offsets[j]:]."""

    seqs: tuple[tuple[int, ...], ...]
    offsets: tuple[int, ...]

    @classmethod
    def make(cls, seqs: Sequence[Sequence[int]], offsets: Sequence[int] | None = None):
        seqs = tuple(tuple(s) for s in seqs)
        if offsets is None:
            offsets = (0,) * len(seqs)
        if len(offsets) != len(seqs):
            raise ValueError("one offset per sequence")
        if seqs and len({len(s) for s in seqs}) != 1:
            raise ValueError("sequences must share the nominal length")
        if any(d < 0 for d in offsets):
            raise ValueError("offsets must be nonnegative")
        return cls(seqs, tuple(offsets))

    @property
    def length(self) -> int:
        return len(self.seqs[0]) if self.seqs else 0


class Synthesis(NamedTuple):
    connection: SkewPolynomial
    unique: bool
    length: int


def _leading(row, shifts):
    pos, best = -1, None
    for i, c in enumerate(row):
        if c:
            v = len(c) - 1 + shifts[i]
            if best is None or v >= best:
                best, pos = v, i
    return pos, best


def synthesize(ring: SkewRing, seqs: Sequence[Sequence[int]],
               offsets: Sequence[int]) -> tuple[list[int], int, bool]:
    """List-level synthesis: returns (lambda, L, unique).

    lambda has lambda[0] = 1, degree <= L, and satisfies
        sum_{i=0}^{L} lambda_i sigma^i(s_{j, l-i}) = 0
    for every j and every 1-indexed l in [offsets[j] + L + 1, N].

    Method: the pairs (lambda, psi_1..psi_s) with lambda*S_j = psi_j mod x^N
    form a left module.  A register of length L is an element whose shifted
    degree max(deg lambda, deg psi_j - d_j + 1) is at most L and whose
    lambda has a nonzero constant term.  Mulders-Storjohann reduction to
    weak Popov form gives a basis with the predictable-degree property, from
    which both the minimal L and the dimension of the solution set follow.
    """
    F = ring.F
    s = len(seqs)
    N = len(seqs[0]) if s else 0
    if s == 0 or all(N - d <= 0 for d in offsets):
        raise AllSequencesEmpty("no sequence has entries")
    shifts = [0] + [1 - d for d in offsets]
    rows = [[[1]] + [trim([0] * d + list(sq[d:])) for sq, d in zip(seqs, offsets)]]
    for j in range(s):
        r: list[list[int]] = [[] for _ in range(s + 1)]
        r[j + 1] = [0] * N + [1]
        rows.append(r)
    info = [_leading(r, shifts) for r in rows]
    while True:
        owner: dict[int, int] = {}
        clash = None
        for idx, (p, _) in enumerate(info):
            if p in owner:
                clash = (owner[p], idx)
                break
            owner[p] = idx
        if clash is None:
            break
        a, b = clash
        p = info[a][0]
        if len(rows[a][p]) < len(rows[b][p]):
            a, b = b, a
        e = len(rows[a][p]) - len(rows[b][p])
        c = F.div(rows[a][p][-1], ring.sigma(rows[b][p][-1], e))
        rows[a] = [ring.sub_monomial_mul(x, c, e, y) if y else x
                   for x, y in zip(rows[a], rows[b])]
        info[a] = _leading(rows[a], shifts)
    degs = [d for _, d in info]
    L, best = min((degs[r], r) for r in range(s + 1) if rows[r][0] and rows[r][0][0])
    lam = ring.scale(F.inv(rows[best][0][0]), rows[best][0])
    # solutions of shifted degree <= L, minus those with lambda = 0
    dim = sum(max(0, L - d + 1) for d in degs) - sum(max(0, L - N + d) for d in offsets)
    return lam, L, dim == 1


def sr_synthesize(seqs, ring: SkewRing, offsets: Sequence[int] | None = None) -> Synthesis:
    """Shortest connection polynomial (constant term 1) and a uniqueness flag."""
    if not isinstance(seqs, SyndromeSequences):
        seqs = SyndromeSequences.make(seqs, offsets)
    lam, L, unique = synthesize(ring, seqs.seqs, seqs.offsets)
    return Synthesis(SkewPolynomial._wrap(ring, lam), unique, L)


# ---------------------------------------------------------------------------
# F_q-span bookkeeping

class FqSpan:
    """Incremental echelon basis of F_q-coordinate vectors of F_{q^m} elements."""

    def __init__(self, tower: FieldTower):
        self.K = tower.base
        self.F = tower.qm
        self.rows: list[tuple[int, list[int]]] = []  # (pivot, normalized vector)

    def _reduce(self, v: list[int]) -> list[int]:
        K = self.K
        for piv, r in self.rows:
            c = v[piv]
            if c:
                v = [K.sub(a, K.mul(c, b)) for a, b in zip(v, r)]
        return v

    def contains(self, a: int) -> bool:
        return not any(self._reduce(self.F.digits(a)))

    def add(self, a: int) -> bool:
        """Insert a; return False if it was already in the span."""
        v = self._reduce(self.F.digits(a))
        piv = next((i for i, c in enumerate(v) if c), None)
        if piv is None:
            return False
        inv = self.K.inv(v[piv])
        self.rows.append((piv, [self.K.mul(inv, c) for c in v]))
        return True

    def __len__(self) -> int:
        return len(self.rows)


def fq_rank(tower: FieldTower, elems: Sequence[int]) -> int:
    span = FqSpan(tower)
    for a in elems:
        span.add(a)
    return len(span)


# ---------------------------------------------------------------------------
# root spaces

def root_space_bases(p, xi: Sequence[int], ring: SkewRing | None = None,
                     seeds: Sequence[Sequence[int]] | None = None,
                     rng: random.Random | None = None,
                     max_attempts: int | None = None,
                     stats: dict | None = None) -> list[list[int]]:
    """For each parameter a = xi[i], a basis of {b : p(b)_a = 0} extending seeds[i].

    h = gcrd(x^m - N_m(a), p) has the same roots as p, and the left cofactor
    g with x^m - N_m(a) = h g maps F_{q^m} onto that root space, so random
    images g(b) are collected until deg h independent ones are found."""
    if isinstance(p, SkewPolynomial):
        ring, coeffs = p.ring, list(p.coeffs)
    else:
        coeffs = list(p)
    if ring is None:
        raise ValueError("ring required for list input")
    rng = rng or random.Random(0)
    t = ring.tower
    F = ring.F
    m = t.m
    budget = max_attempts if max_attempts is not None else 64 * m
    out = []
    for i, a in enumerate(xi):
        nrm = t.gen_norm(a, m, ring.sign)
        n_poly = [F.neg(nrm)] + [0] * (m - 1) + [1]
        h = ring.gcrd(n_poly, coeffs) if coeffs else n_poly
        g, rem = ring.ldivmod(n_poly, h)
        assert not rem
        span = FqSpan(t)
        basis = []
        for b in (seeds[i] if seeds else ()):
            if ring.eval(coeffs, b, a) != 0:
                raise BadSeed(f"seed {b} is not a root for parameter index {i}")
            if not span.add(b):
                raise BadSeed("seeds are F_q-dependent")
            basis.append(b)
        target = len(h) - 1
        draws = 0
        while len(basis) < target:
            if draws >= budget * (target - len(seeds[i] if seeds else ())):
                raise AttemptBudgetExceeded(f"root space for parameter index {i}")
            draws += 1
            c = ring.eval(g, F.random_nonzero(rng), a)
            if c and span.add(c):
                basis.append(c)
        if stats is not None:
            stats["draws"] = stats.get("draws", 0) + draws
        out.append(basis)
    return out


# ---------------------------------------------------------------------------
# Moore-structured solver

def gabidulin_core(field, sig: Callable[[int, int], int], a: Sequence[int],
                   xi: Sequence[int], s: Sequence[int], stats: dict | None = None) -> list[int]:
    """Solve sum_j a_j sigma^l(x_j) N_l(xi_j) = s_l, l = 0..t-1, for x.

    ``field`` carries the arithmetic of a and s (F_{q^m} or F_{q^ms});
    sig(y, k) applies sigma^k there.  xi lives in F_{q^m}, which embeds as
    the same integers.  Only s[0:t] is used.  With stats["trace"] set, the
    eliminated matrices are returned in stats["A"] and stats["Q"]."""
    t = len(a)
    if len(s) < t:
        raise ValueError("need at least t right-hand entries")
    add, sub, mul = field.add, field.sub, field.mul
    A = [list(a)]
    Q = [list(s[:t])]
    ops = 0
    for i in range(t - 1):
        Ai, Qi = A[i], Q[i]
        piv = Ai[i]
        if piv == 0:
            raise ZeroPivot(f"zero pivot at step {i}")
        kappa = mul(field.inv(piv), mul(sig(piv, 1), field.inv(xi[i])))
        newA = [0] * t
        for j in range(i + 1, t):
            newA[j] = sub(Ai[j], sig(mul(mul(kappa, Ai[j]), xi[j]), -1))
            ops += 1
        newQ = [0] * t
        for j in range(t - i - 1):
            newQ[j] = sub(Qi[j], sig(mul(kappa, Qi[j + 1]), -1))
            ops += 1
        A.append(newA)
        Q.append(newQ)
    x = [0] * t
    for i in range(t - 1, -1, -1):
        if A[i][i] == 0:
            raise ZeroPivot(f"zero pivot at step {i}")
        acc = Q[i][0]
        for j in range(i + 1, t):
            acc = sub(acc, mul(A[i][j], x[j]))
            ops += 1
        x[i] = mul(field.inv(A[i][i]), acc)
        ops += 1
    if stats is not None:
        stats["ops"] = stats.get("ops", 0) + ops
        if stats.get("trace"):
            stats["A"], stats["Q"] = A, Q
    return x


def gabidulin_solve(tower: FieldTower, a: Sequence[int], xi: Sequence[int], s: Sequence[int],
                    sign: int = 1, layer: str = "qm", stats: dict | None = None) -> list[int]:
    """x with M^{sigma}_{len(s)}(x)_{xi} a^T = s^T, sigma = theta^sign.

    ``xi`` has one parameter per entry of a.  With layer='qms' the vectors a
    and s are over F_{q^ms} (the unknown x still lies in F_{q^m})."""
    if layer == "qm":
        field = tower.qm

        def sig(y, k):
            return tower.theta(y, sign * k)
    else:
        field = tower.qms

        def sig(y, k):
            return tower.theta_qms(y, sign * k)
    return gabidulin_core(field, sig, a, xi, s, stats)
