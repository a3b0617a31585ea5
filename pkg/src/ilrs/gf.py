"""Finite field tower F_q < F_{q^m} < F_{q^{ms}} with integer-coded elements.

An element of an extension of degree d over a base field K is stored as the
integer sum(c_i * |K|**i), where (c_0, ..., c_{d-1}) are its coordinates in
the polynomial basis 1, z, ..., z^{d-1}.  Zero is 0 and one is 1 in every
layer, so elements of a subfield embed as the same integer.

Fields up to 2**16 elements get exp/log tables; fields up to 1024 elements
also get flat addition and multiplication tables.  Larger fields (used only
for the F_{q^{ms}} layer) fall back to coordinate arithmetic.
"""
from __future__ import annotations

import math
import random
from typing import Iterable, Sequence


class FieldError(ValueError):
    pass


class NonPrimePowerQ(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class ThetaNotGenerator(FieldError):
    pass


class LayerMismatch(FieldError):
    pass


class ZeroElementForInverseIdentity(FieldError):
    pass


class QLessThanTwo(FieldError):
    pass


FLAT_TABLE_LIMIT = 1024
LOG_TABLE_LIMIT = 1 << 16


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, r) with q = p**r, or raise NonPrimePowerQ."""
    if q < 2:
        raise NonPrimePowerQ(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r, rest = 0, q
    while rest % p == 0:
        rest //= p
        r += 1
    if rest != 1:
        raise NonPrimePowerQ(f"q={q} is not a prime power")
    return p, r


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# Dense univariate polynomials over a field object with add/sub/mul/inv.
# Coefficient lists are low-to-high and trimmed.

def _ptrim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(K, f: Sequence[int], g: Sequence[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = K.add(out[i + j], K.mul(a, b))
    return _ptrim(out)


def _pmod(K, f: Sequence[int], g: Sequence[int]) -> list[int]:
    r = list(f)
    _ptrim(r)
    dg = len(g) - 1
    lead_inv = K.inv(g[-1])
    while len(r) - 1 >= dg:
        c = K.mul(r[-1], lead_inv)
        shift = len(r) - 1 - dg
        for i, b in enumerate(g):
            if b:
                r[shift + i] = K.sub(r[shift + i], K.mul(c, b))
        _ptrim(r)
    return r


def _pgcd(K, f: Sequence[int], g: Sequence[int]) -> list[int]:
    a, b = _ptrim(list(f)), _ptrim(list(g))
    while b:
        a, b = b, _pmod(K, a, b)
    return a


def _ppowmod(K, f: Sequence[int], e: int, mod: Sequence[int]) -> list[int]:
    result, base = [1], _pmod(K, f, mod)
    while e:
        if e & 1:
            result = _pmod(K, _pmul(K, result, base), mod)
        base = _pmod(K, _pmul(K, base, base), mod)
        e >>= 1
    return result


def is_irreducible(K, f: Sequence[int]) -> bool:
    """Rabin's test for a monic polynomial f over the field K."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    Q = K.order
    x = [0, 1]

    def frob(k: int) -> list[int]:
        out = x
        for _ in range(k):
            out = _ppowmod(K, out, Q, f)
        return out

    xd = frob(d)
    if _ptrim([K.sub(a, b) for a, b in _zip_pad(xd, x)]):
        return False
    for r in _prime_factors(d):
        h = frob(d // r)
        diff = _ptrim([K.sub(a, b) for a, b in _zip_pad(h, x)])
        if len(_pgcd(K, diff, f)) != 1:
            return False
    return True


def _zip_pad(f: Sequence[int], g: Sequence[int]):
    n = max(len(f), len(g))
    return zip(list(f) + [0] * (n - len(f)), list(g) + [0] * (n - len(g)))


def lowest_irreducible(K, d: int) -> tuple[int, ...]:
    """Monic irreducible of degree d over K whose lower coefficients, read as a
    base-|K| number with the z^{d-1} coefficient most significant, are smallest."""
    Q = K.order
    for code in range(Q ** d):
        low = [(code // Q ** i) % Q for i in range(d)]
        f = low + [1]
        if d > 1 and f[0] == 0:
            continue
        if is_irreducible(K, f):
            return tuple(f)
    raise ReducibleModulus(f"no irreducible of degree {d}")  # pragma: no cover


class GF:
    """A finite field: either a prime field or a simple extension of a GF."""

    def __init__(self, p: int, base: "GF | None" = None,
                 modulus: Sequence[int] | None = None):
        self.char = p
        self.base = base
        if base is None:
            self.degree = 1
            self.modulus = None
            self.order = p
            self._bq = p
        else:
            if modulus is None or modulus[-1] != 1:
                raise ReducibleModulus("modulus must be monic")
            self.modulus = tuple(modulus)
            self.degree = len(modulus) - 1
            self._bq = base.order
            self.order = base.order ** self.degree
        self._add = self._mul = self._sub = None
        self.exp = self.log = None
        self.primitive: int | None = None
        if self.order <= LOG_TABLE_LIMIT:
            self._build_tables()

    # -- coordinate arithmetic (used to build tables and for big fields) --

    def digits(self, a: int) -> list[int]:
        """Coordinates of a over the base field, low to high."""
        if self.base is None:
            return [a]
        bq = self._bq
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, bq)
            out.append(r)
        return out

    def from_digits(self, ds: Iterable[int]) -> int:
        if self.base is None:
            (a,) = ds
            return a
        out, w = 0, 1
        for d in ds:
            out += d * w
            w *= self._bq
        return out

    def _slow_add(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.char
        K = self.base
        return self.from_digits(K.add(x, y) for x, y in zip(self.digits(a), self.digits(b)))

    def _slow_neg(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.char
        K = self.base
        return self.from_digits(K.neg(x) for x in self.digits(a))

    def _slow_mul(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.char
        K = self.base
        prod = _pmul(K, _ptrim(self.digits(a)), _ptrim(self.digits(b)))
        r = _pmod(K, prod, self.modulus)
        return self.from_digits(r + [0] * (self.degree - len(r)))

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    def _build_tables(self) -> None:
        n = self.order
        group = n - 1
        factors = _prime_factors(group) if group > 1 else []
        prim = None
        for g in range(1, n):
            if all(self._slow_pow(g, group // r) != 1 for r in factors):
                prim = g
                break
        self.primitive = prim
        exp = [0] * (2 * group)
        log = [0] * n
        x = 1
        for i in range(group):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, prim)
        for i in range(group, 2 * group):
            exp[i] = exp[i - group]
        self.exp, self.log = exp, log
        self._neg = [self._slow_neg(a) for a in range(n)]
        self._inv = [0] + [exp[(group - log[a]) % group] for a in range(1, n)]
        if n <= FLAT_TABLE_LIMIT:
            add = [0] * (n * n)
            mul = [0] * (n * n)
            for a in range(n):
                row = a * n
                for b in range(n):
                    add[row + b] = self._slow_add(a, b)
                    if a and b:
                        mul[row + b] = exp[log[a] + log[b]]
            neg = self._neg
            sub = [add[a * n + neg[b]] for a in range(n) for b in range(n)]
            self._add, self._mul, self._sub = add, mul, sub

    # -- public scalar arithmetic --

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise LayerMismatch(f"{a!r} is not an element of a field of order {self.order}")
        return a

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a * self.order + b]
        return self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self.exp is not None:
            return self._neg[a]
        return self._slow_neg(a)

    def sub(self, a: int, b: int) -> int:
        if self._sub is not None:
            return self._sub[a * self.order + b]
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a * self.order + b]
        if self.exp is not None:
            if a == 0 or b == 0:
                return 0
            return self.exp[self.log[a] + self.log[b]]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.exp is not None:
            return self._inv[a]
        return self._slow_pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if self.exp is not None:
            if a == 0:
                return 0 if e > 0 else 1
            return self.exp[(self.log[a] * e) % (self.order - 1)]
        if e < 0:
            a, e = self.inv(a), -e
        return self._slow_pow(a, e)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.order)

    def __repr__(self) -> str:
        return f"GF({self.order})"


class FieldTower:
    """F_q < F_{q^m} (< F_{q^{ms}}) with theta(x) = x^{q^u}.

    Attributes ``base``, ``qm`` and ``qms`` are the three layers (``qms`` is
    None unless ``s`` is given).  ``gamma`` is the primitive element of F_{q^m}.
    """

    def __init__(self, q: int, m: int, u: int = 1,
                 modulus: Sequence[int] | None = None,
                 s: int | None = None,
                 modulus_qms: Sequence[int] | None = None):
        p, r = prime_power(q)
        if m < 1:
            raise FieldError("m must be positive")
        if math.gcd(u, m) != 1:
            raise ThetaNotGenerator(f"gcd(u={u}, m={m}) != 1")
        if q ** m > LOG_TABLE_LIMIT:
            raise FieldError(f"q^m = {q ** m} exceeds the supported size {LOG_TABLE_LIMIT}")
        self.q, self.m, self.u = q, m, u % m if m > 1 else 0
        prime = GF(p)
        if r == 1:
            self.base = prime
        else:
            self.base = GF(p, prime, lowest_irreducible(prime, r))
        if modulus is None:
            modulus = lowest_irreducible(self.base, m)
        else:
            modulus = tuple(modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ReducibleModulus("modulus must be monic of degree m")
            if not is_irreducible(self.base, modulus):
                raise ReducibleModulus(f"{modulus} is reducible over F_{q}")
        self.modulus = tuple(modulus)
        self.qm = GF(p, self.base, self.modulus)
        self.gamma = self.qm.primitive
        # theta^i as lookup tables, i = 0..m-1
        Q = self.qm.order
        self._theta = []
        for i in range(m):
            e = q ** ((self.u * i) % m)
            self._theta.append([0] + [self.qm.pow(a, e) for a in range(1, Q)])
        self.s = s
        self.qms = None
        if s is not None:
            if s < 1:
                raise FieldError("s must be positive")
            if modulus_qms is None:
                modulus_qms = lowest_irreducible(self.qm, s)
            elif not is_irreducible(self.qm, modulus_qms):
                raise ReducibleModulus("F_{q^ms} modulus is reducible over F_{q^m}")
            self.modulus_qms = tuple(modulus_qms)
            self.qms = GF(p, self.qm, self.modulus_qms)

    # -- automorphism --

    def theta(self, a: int, i: int = 1) -> int:
        """theta^i(a) on F_{q^m}; negative i gives powers of theta^{-1}."""
        return self._theta[i % self.m][a]

    def theta_table(self, i: int) -> list[int]:
        return self._theta[i % self.m]

    def theta_qms(self, y: int, i: int = 1) -> int:
        """An automorphism of F_{q^{ms}} extending theta^i (y -> y^{q^{u i}})."""
        ms = self.m * self.s
        e = (self.u * i) % ms
        if e == 0:
            return y
        return self.qms.pow(y, self.q ** e)

    def gen_norm(self, a: int, i: int, sign: int = 1) -> int:
        """N_i(a) = prod_{j<i} sigma^j(a) with sigma = theta^sign.

        Negative i follows the recursion N_i = sigma^{i-1}(a) N_{i-1} run
        backwards, i.e. N_{-k}(a) = 1 / prod_{j=1..k} sigma^{-j}(a)."""
        F = self.qm
        out = 1
        if i >= 0:
            for j in range(i):
                out = F.mul(out, self.theta(a, sign * j))
            return out
        for j in range(1, -i + 1):
            out = F.mul(out, self.theta(a, -sign * j))
        return F.inv(out)

    def norm(self, a: int) -> int:
        """Full norm N_m(a) into F_q; it labels the conjugacy class of a."""
        return self.gen_norm(a, self.m)

    def conjugacy_representatives(self) -> list[int]:
        return [self.qm.pow(self.gamma, i) for i in range(self.q - 1)]

    def conjugate(self, a: int, c: int) -> int:
        """theta(c) * a * c^{-1}."""
        F = self.qm
        return F.mul(F.mul(self.theta(c), a), F.inv(c))

    def is_conjugate(self, a: int, b: int) -> bool:
        if a == 0 or b == 0:
            return a == b
        return self.norm(a) == self.norm(b)

    # -- coordinates --

    def ext(self, x):
        """F_q coordinates: element -> column (list), vector -> m x n rows,
        matrix (list of rows) -> sm x n rows stacked row by row."""
        F = self.qm
        if isinstance(x, int):
            return F.digits(F.check(x))
        if x and isinstance(x[0], (list, tuple)):
            rows = []
            for row in x:
                rows.extend(self.ext(list(row)))
            return rows
        cols = [F.digits(F.check(v)) for v in x]
        return [[c[i] for c in cols] for i in range(self.m)]

    def ext_inv(self, column: Sequence[int]) -> int:
        return self.qm.from_digits(column)

    def elem(self, power: int | None) -> int:
        """gamma^power (None means zero)."""
        if power is None:
            return 0
        return self.qm.pow(self.gamma, power)

    def log_gamma(self, a: int) -> int | None:
        return None if a == 0 else self.qm.log[a]

    def fmt(self, a: int) -> str:
        """gamma-power notation, e.g. '0', '1', 'g^5'."""
        if a == 0:
            return "0"
        e = self.qm.log[a]
        return "1" if e == 0 else f"g^{e}"

    def config(self) -> dict:
        out = {"q": self.q, "m": self.m, "u": self.u, "modulus": list(self.modulus)}
        if self.s is not None:
            out["s"] = self.s
        return out


def make_field(q: int, m: int, u: int = 1, modulus: Sequence[int] | None = None,
               s: int | None = None) -> FieldTower:
    return FieldTower(q, m, u, modulus, s)


def theta_pow(t: FieldTower, a: int, i: int, layer: str = "qm") -> int:
    if layer == "qm":
        return t.theta(t.qm.check(a), i)
    if layer == "qms":
        if t.qms is None:
            raise LayerMismatch("tower has no F_{q^ms} layer")
        return t.theta_qms(t.qms.check(a), i)
    raise LayerMismatch(f"unknown layer {layer!r}")


def gen_norm(t: FieldTower, sign: int, i: int, a: int) -> int:
    return t.gen_norm(a, i, sign)


def norm_identities(t: FieldTower, alpha: int, beta: int, x: int) -> list[tuple[int, int]]:
    """Both sides of the three theta/norm exchange rules, as (lhs, rhs) pairs.

    With N for theta-norms and M for theta^{-1}-norms:
      1) theta^a(M_b(theta^{-1}x)) = M_{b-a}(theta^{-1}x) N_a(x)      (b >= a)
                                  = N_a(x) N_{a-b}(x^{-1})           (b <  a)
      2) theta^{-a}(M_b(theta^{-1}x)) = M_{a+b}(theta^{-1}x) M_a(theta^{-1}(x^{-1}))
      3) theta^{-a}(N_b(x)) = M_a(theta^{-1}x) M_{a-b}(theta^{-1}(x^{-1}))
    """
    if x == 0:
        raise ZeroElementForInverseIdentity("x must be nonzero")
    F = t.qm
    xi = F.inv(x)
    tx = t.theta(x, -1)
    txi = t.theta(xi, -1)

    def N(i, a):
        return t.gen_norm(a, i, 1)

    def M(i, a):
        return t.gen_norm(a, i, -1)

    lhs1 = t.theta(M(beta, tx), alpha)
    if beta >= alpha:
        rhs1 = F.mul(M(beta - alpha, tx), N(alpha, x))
    else:
        rhs1 = F.mul(N(alpha, x), N(alpha - beta, xi))
    lhs2 = t.theta(M(beta, tx), -alpha)
    rhs2 = F.mul(M(alpha + beta, tx), M(alpha, txi))
    lhs3 = t.theta(N(beta, x), -alpha)
    rhs3 = F.mul(M(alpha, tx), M(alpha - beta, txi))
    return [(lhs1, rhs1), (lhs2, rhs2), (lhs3, rhs3)]


def norm_identity_check(t: FieldTower, alpha: int, beta: int, x: int) -> bool:
    if alpha < 0 or beta < 0:
        raise FieldError("alpha and beta must be nonnegative")
    return all(a == b for a, b in norm_identities(t, alpha, beta, x))


def conjugacy_representatives(t: FieldTower) -> list[int]:
    return t.conjugacy_representatives()


def ext(t: FieldTower, x):
    return t.ext(x)


def kappa(q: int, terms: int = 100) -> float:
    """prod_{i=1}^{terms} 1/(1 - q^{-i}), an upper approximation of kappa_q."""
    if q < 2:
        raise QLessThanTwo(f"q={q} < 2")
    if terms < 1:
        raise FieldError("terms must be positive")
    out = 1.0
    for i in range(1, terms + 1):
        out /= 1.0 - float(q) ** (-i)
    return out
