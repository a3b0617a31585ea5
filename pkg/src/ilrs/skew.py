"""Skew polynomials over F_{q^m} with x*c = sigma(c)*x, sigma = theta or theta^{-1}.

Coefficient lists are indexed by degree (f[0] is the constant term) and kept
trimmed, so the zero polynomial is [].  ``SkewRing`` does the arithmetic on
plain lists; ``SkewPolynomial`` is an immutable wrapper for the public API.
"""
from __future__ import annotations

from typing import Sequence

from .gf import FieldTower


class SkewError(ValueError):
    pass


class TwistMismatch(SkewError):
    pass


class DivisionByZeroPolynomial(ZeroDivisionError):
    pass


class BothZero(SkewError):
    pass


class ZeroOperand(SkewError):
    pass


class TooSmallT(SkewError):
    pass


class BlockCountMismatch(SkewError):
    pass


Poly = list[int]


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f: Sequence[int]) -> int:
    """Degree, with deg(0) = -1."""
    return len(f) - 1


class SkewRing:
    """F_{q^m}[x; theta^sign]."""

    def __init__(self, tower: FieldTower, sign: int = 1):
        if sign not in (1, -1):
            raise SkewError("sign must be +1 or -1")
        self.tower = tower
        self.F = tower.qm
        self.sign = sign

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewRing) and self.tower is other.tower and self.sign == other.sign

    def __hash__(self) -> int:
        return hash((id(self.tower), self.sign))

    def sigma(self, a: int, i: int = 1) -> int:
        return self.tower.theta(a, self.sign * i)

    def sigma_table(self, i: int) -> list[int]:
        return self.tower.theta_table(self.sign * i)

    # -- ring operations --

    def add(self, f: Sequence[int], g: Sequence[int]) -> Poly:
        F = self.F
        n = max(len(f), len(g))
        out = [F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)]
        return trim(out)

    def sub(self, f: Sequence[int], g: Sequence[int]) -> Poly:
        sub = self.F.sub
        out = list(f) + [0] * (len(g) - len(f))
        for i, b in enumerate(g):
            if b:
                out[i] = sub(out[i], b)
        return trim(out)

    def sub_monomial_mul(self, f: Sequence[int], c: int, e: int, g: Sequence[int]) -> Poly:
        """f - (c x^e) g."""
        F = self.F
        tab = self.sigma_table(e)
        out = list(f) + [0] * (len(g) + e - len(f))
        for j, b in enumerate(g):
            if b:
                out[e + j] = F.sub(out[e + j], F.mul(c, tab[b]))
        return trim(out)

    def scale(self, c: int, f: Sequence[int]) -> Poly:
        """c * f (scalar on the left)."""
        F = self.F
        return trim([F.mul(c, a) for a in f])

    def mul(self, f: Sequence[int], g: Sequence[int]) -> Poly:
        if not f or not g:
            return []
        F = self.F
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if not a:
                continue
            tab = self.sigma_table(i)
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, tab[b]))
        return trim(out)

    def monic(self, f: Sequence[int]) -> Poly:
        if not f:
            return []
        return self.scale(self.F.inv(f[-1]), f)

    def rdivmod(self, f: Sequence[int], g: Sequence[int]) -> tuple[Poly, Poly]:
        """f = q*g + r with deg r < deg g."""
        if not g:
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        F = self.F
        r = trim(list(f))
        dg = len(g) - 1
        if len(r) - 1 < dg:
            return [], r
        quo = [0] * (len(r) - dg)
        lead = g[-1]
        while len(r) - 1 >= dg:
            e = len(r) - 1 - dg
            tab = self.sigma_table(e)
            c = F.div(r[-1], tab[lead])
            quo[e] = c
            for j, b in enumerate(g):
                if b:
                    r[e + j] = F.sub(r[e + j], F.mul(c, tab[b]))
            r.pop()
            trim(r)
        return trim(quo), r

    def ldivmod(self, f: Sequence[int], g: Sequence[int]) -> tuple[Poly, Poly]:
        """f = g*q + r with deg r < deg g."""
        if not g:
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        F = self.F
        r = trim(list(f))
        dg = len(g) - 1
        if len(r) - 1 < dg:
            return [], r
        quo = [0] * (len(r) - dg)
        lead = g[-1]
        while len(r) - 1 >= dg:
            e = len(r) - 1 - dg
            c = self.sigma(F.div(r[-1], lead), -dg)
            quo[e] = c
            for j, b in enumerate(g):
                if b:
                    r[e + j] = F.sub(r[e + j], F.mul(b, self.sigma(c, j)))
            r.pop()
            trim(r)
        return trim(quo), r

    def rmod(self, f: Sequence[int], g: Sequence[int]) -> Poly:
        return self.rdivmod(f, g)[1]

    def gcrd(self, f: Sequence[int], g: Sequence[int]) -> Poly:
        a, b = trim(list(f)), trim(list(g))
        if not a and not b:
            raise BothZero("gcrd(0, 0) is undefined")
        while b:
            a, b = b, self.rmod(a, b)
        return self.monic(a)

    def lclm(self, f: Sequence[int], g: Sequence[int]) -> Poly:
        f, g = trim(list(f)), trim(list(g))
        if not f or not g:
            raise ZeroOperand("lclm needs nonzero operands")
        r0, r1 = f, g
        u0, u1 = [1], []
        while r1:
            quo, rem = self.rdivmod(r0, r1)
            u0, u1 = u1, self.sub(u0, self.mul(quo, u1))
            r0, r1 = r1, rem
        return self.monic(self.mul(u1, f))

    def reverse(self, f: Sequence[int], t: int) -> Poly:
        """sigma-reverse w.r.t. t >= deg f: out[i] = sigma^{i-t}(f[t-i])."""
        f = trim(list(f))
        if t < len(f) - 1:
            raise TooSmallT(f"t={t} < deg f={len(f) - 1}")
        if not f:
            return []
        out = [0] * (t + 1)
        for i in range(t + 1):
            j = t - i
            if j < len(f) and f[j]:
                out[i] = self.sigma(f[j], i - t)
        return trim(out)

    def coeff_map(self, f: Sequence[int], k: int) -> Poly:
        """Apply theta^k (not sigma^k) to every coefficient."""
        tab = self.tower.theta_table(k)
        return [tab[a] for a in f]

    # -- generalized operator evaluation --

    def D(self, b: int, a: int, i: int = 1) -> int:
        """D_a^i(b) = sigma^i(b) * N_i(a)."""
        F = self.F
        for _ in range(i):
            b = F.mul(self.sigma(b), a)
        return b

    def eval(self, f: Sequence[int], b: int, a: int) -> int:
        F = self.F
        sig = self.sigma_table(1)
        acc = 0
        cur = b
        for i, c in enumerate(f):
            if i:
                cur = F.mul(sig[cur], a)
            if c:
                acc = F.add(acc, F.mul(c, cur))
        return acc

    def eval_vec(self, f: Sequence[int], bs: Sequence[int], params: Sequence[int]) -> list[int]:
        """Entrywise evaluation; params[i] is the parameter of entry i."""
        if len(bs) != len(params):
            raise BlockCountMismatch("need one evaluation parameter per entry")
        return [self.eval(f, b, a) for b, a in zip(bs, params)]

    def moore(self, d: int, bs, params: Sequence[int]) -> list[list[int]]:
        """Rows D^l(bs) for l = 0..d-1; a matrix input stacks one block per row."""
        if bs and isinstance(bs[0], (list, tuple)):
            out = []
            for row in bs:
                out.extend(self.moore(d, row, params))
            return out
        if len(bs) != len(params):
            raise BlockCountMismatch("need one evaluation parameter per entry")
        F = self.F
        sig = self.sigma_table(1)
        rows = [list(bs)]
        for _ in range(1, d):
            prev = rows[-1]
            rows.append([F.mul(sig[b], a) for b, a in zip(prev, params)])
        return rows[:d] if d > 0 else []

    def min_poly(self, bs: Sequence[int], params: Sequence[int]) -> Poly:
        """Monic minimal annihilator of the entries of bs (zeros are skipped).

        Built by left-multiplying linear factors: if P(b) = c != 0 then
        (x - sigma(c) a / c) P also kills b, so the degree grows exactly by the
        F_q-rank contributed by b."""
        if len(bs) != len(params):
            raise BlockCountMismatch("need one evaluation parameter per entry")
        F = self.F
        P = [1]
        for b, a in zip(bs, params):
            if b == 0:
                continue
            c = self.eval(P, b, a)
            if c:
                root = F.div(F.mul(self.sigma(c), a), c)
                P = self.mul([F.neg(root), 1], P)
        return P

    def min_poly_lclm(self, bs: Sequence[int], params: Sequence[int]) -> Poly:
        """The same polynomial as lclm of the linear factors x - sigma(b) a / b."""
        F = self.F
        P = [1]
        for b, a in zip(bs, params):
            if b:
                P = self.lclm(P, [F.neg(F.div(F.mul(self.sigma(b), a), b)), 1])
        return P


class SkewPolynomial:
    """Immutable skew polynomial bound to a SkewRing."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SkewRing, coeffs: Sequence[int] = ()):
        self.ring = ring
        self.coeffs = tuple(trim([ring.F.check(c) for c in coeffs]))

    @classmethod
    def _wrap(cls, ring: SkewRing, coeffs: Sequence[int]) -> "SkewPolynomial":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.coeffs = tuple(coeffs)
        return obj

    def _same(self, other: "SkewPolynomial") -> SkewRing:
        if not isinstance(other, SkewPolynomial):
            raise TypeError("expected SkewPolynomial")
        if self.ring != other.ring:
            raise TwistMismatch("operands live in different skew rings")
        return self.ring

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SkewPolynomial) and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.ring.sign, self.coeffs))

    def __add__(self, other):
        R = self._same(other)
        return self._wrap(R, R.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        R = self._same(other)
        return self._wrap(R, R.sub(self.coeffs, other.coeffs))

    def __mul__(self, other):
        R = self._same(other)
        return self._wrap(R, R.mul(self.coeffs, other.coeffs))

    def rdivmod(self, other):
        R = self._same(other)
        q, r = R.rdivmod(self.coeffs, other.coeffs)
        return self._wrap(R, q), self._wrap(R, r)

    def ldivmod(self, other):
        R = self._same(other)
        q, r = R.ldivmod(self.coeffs, other.coeffs)
        return self._wrap(R, q), self._wrap(R, r)

    def gcrd(self, other):
        R = self._same(other)
        return self._wrap(R, R.gcrd(self.coeffs, other.coeffs))

    def lclm(self, other):
        R = self._same(other)
        return self._wrap(R, R.lclm(self.coeffs, other.coeffs))

    def monic(self):
        return self._wrap(self.ring, self.ring.monic(self.coeffs))

    def reverse(self, t: int):
        return self._wrap(self.ring, self.ring.reverse(self.coeffs, t))

    def coeff_map(self, k: int):
        return self._wrap(self.ring, self.ring.coeff_map(self.coeffs, k))

    def __call__(self, b, a):
        """Operator evaluation at an element (single parameter) or a vector
        (one parameter per entry, or a single shared parameter)."""
        R = self.ring
        if isinstance(b, int):
            return R.eval(self.coeffs, b, a)
        params = [a] * len(b) if isinstance(a, int) else list(a)
        return R.eval_vec(self.coeffs, list(b), params)

    def __repr__(self) -> str:
        t = self.ring.tower
        terms = [f"{t.fmt(c)}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        tw = "theta" if self.ring.sign == 1 else "theta^-1"
        return f"SkewPolynomial[{tw}](" + (" + ".join(terms) or "0") + ")"


class EvalParams:
    """Evaluation parameters xi (one per block) with a length partition."""

    def __init__(self, tower: FieldTower, xi: Sequence[int], blocks: Sequence[int] | None = None,
                 check: bool = True):
        self.tower = tower
        self.xi = tuple(xi)
        self.blocks = tuple(blocks) if blocks is not None else (1,) * len(self.xi)
        if len(self.blocks) != len(self.xi):
            raise BlockCountMismatch("one parameter per block")
        if check:
            if any(a == 0 for a in self.xi):
                raise SkewError("evaluation parameters must be nonzero")
            norms = [tower.norm(a) for a in self.xi]
            if len(set(norms)) != len(norms):
                raise SkewError("evaluation parameters must lie in distinct conjugacy classes")

    def per_entry(self) -> list[int]:
        out = []
        for a, n in zip(self.xi, self.blocks):
            out.extend([a] * n)
        return out

    def map(self, fn) -> "EvalParams":
        return EvalParams(self.tower, [fn(a) for a in self.xi], self.blocks, check=False)


def expand(xi: Sequence[int], blocks: Sequence[int]) -> list[int]:
    out = []
    for a, n in zip(xi, blocks):
        out.extend([a] * n)
    return out


# Functional façade matching the operation names.

def skew_mul(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    return f * g


def right_divmod(f: SkewPolynomial, g: SkewPolynomial):
    return f.rdivmod(g)


def left_divmod(f: SkewPolynomial, g: SkewPolynomial):
    return f.ldivmod(g)


def gcrd(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    return f.gcrd(g)


def lclm(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    return f.lclm(g)


def skew_reverse(f: SkewPolynomial, t: int) -> SkewPolynomial:
    return f.reverse(t)


def coeff_map(f: SkewPolynomial, k: int) -> SkewPolynomial:
    return f.coeff_map(k)


def op_eval(f: SkewPolynomial, b, params):
    if isinstance(params, EvalParams):
        params = params.per_entry()
    return f(b, params)


def moore_matrix(ring: SkewRing, d: int, B, params) -> list[list[int]]:
    if d < 1:
        raise SkewError("d must be positive")
    if isinstance(params, EvalParams):
        params = params.per_entry()
    return ring.moore(d, B, params)


def min_poly(ring: SkewRing, b: Sequence[int], params) -> SkewPolynomial:
    if isinstance(params, EvalParams):
        params = params.per_entry()
    return SkewPolynomial._wrap(ring, ring.min_poly(list(b), params))
