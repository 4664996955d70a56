"""Exact arithmetic in Z[1/D][zeta_n] for n an odd prime power.

A value is a coefficient vector in the power basis zeta^0 .. zeta^(phi(n)-1)
together with one positive integer denominator.  After normalisation
(gcd of coefficients and denominator is 1) the stored form is unique, so
equality is plain tuple comparison.

Besides the scalar :class:`Cyclotomic`, the :class:`CycloField` tables drive
the vectorised array arithmetic used by :mod:`weilrep.operators`.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from numbers import Integral

import numpy as np


def prime_power(n):
    """Return ``(p, k)`` with ``n == p**k`` and ``p`` an odd prime."""
    n = int(n)
    if n < 3:
        raise ValueError(f"cyclotomic order must be an odd prime power, got {n}")
    p = next(q for q in range(2, n + 1) if n % q == 0)
    k, rest = 0, n
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1 or p == 2:
        raise ValueError(f"cyclotomic order must be an odd prime power, got {n}")
    return p, k


class CycloField:
    """Reduction and multiplication tables for Q(zeta_n)."""

    def __init__(self, n):
        p, k = prime_power(n)
        self.n, self.p, self.k = n, p, k
        self.L = L = n - n // p
        step = n // p
        # pow[e] = reduced coordinates of zeta^e, using
        # zeta^L = -(1 + zeta^step + ... + zeta^((p-2)*step))
        pow_ = np.zeros((n, L), dtype=np.int64)
        v = np.zeros(L, dtype=np.int64)
        v[0] = 1
        for e in range(n):
            pow_[e] = v
            top = v[L - 1]
            v = np.roll(v, 1)
            v[0] = 0
            if top:
                for j in range(p - 1):
                    v[j * step] -= top
        self.pow = pow_
        idx = np.arange(L)
        self.mul = pow_[(idx[:, None] + idx[None, :]) % n]  # (L, L, L)
        self.mul_flat = self.mul.reshape(L * L, L)
        self.conj_mat = pow_[(-idx) % n]
        self._pow_lists = [tuple(int(c) for c in row) for row in pow_]

    def __repr__(self):
        return f"CycloField({self.n})"

    def galois_mat(self, t):
        """Matrix of zeta -> zeta^t acting on reduced coordinates (row vectors)."""
        return self.pow[(t * np.arange(self.L)) % self.n]

    def root(self, e):
        return self.pow[np.asarray(e) % self.n]

    def cmul(self, a, b):
        """Elementwise product of arrays of reduced coordinates (last axis)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        outer = a[..., :, None] * b[..., None, :]
        shape = outer.shape[:-2]
        return (outer.reshape(shape + (self.L * self.L,)) @ self.mul_flat)

    def counts_to_coords(self, counts):
        """Reduce a vector of exponent multiplicities (length n) to coordinates."""
        return np.asarray(counts, dtype=np.int64) @ self.pow


@lru_cache(maxsize=None)
def field(n):
    return CycloField(n)


def _normalise(coeffs, den):
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        coeffs = [-c for c in coeffs]
        den = -den
    g = den
    for c in coeffs:
        if g == 1:
            break
        g = math.gcd(g, c)
    if g > 1:
        coeffs = [c // g for c in coeffs]
        den //= g
    return tuple(coeffs), den


class Cyclotomic:
    """An element of Z[1/D][zeta_n] in canonical reduced form."""

    __slots__ = ("n", "coeffs", "den")

    def __init__(self, n, coeffs, den=1):
        F = field(n)
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) == n and n != F.L:
            coeffs = _reduce_full(F, coeffs)
        elif len(coeffs) < F.L:
            coeffs = coeffs + [0] * (F.L - len(coeffs))
        elif len(coeffs) != F.L:
            raise ValueError(f"expected {F.L} or {n} coefficients, got {len(coeffs)}")
        self.n = n
        self.coeffs, self.den = _normalise(coeffs, int(den))

    # constructors
    @classmethod
    def from_int(cls, n, value, den=1):
        return cls(n, [value], den)

    @classmethod
    def root(cls, n, e):
        """zeta_n ** e."""
        return cls(n, field(n)._pow_lists[e % n])

    @classmethod
    def from_counts(cls, n, counts, den=1):
        """sum_e counts[e] * zeta^e."""
        return cls(n, field(n).counts_to_coords(counts).tolist(), den)

    @classmethod
    def from_json(cls, obj):
        return cls(obj["order"], obj["coeffs"], obj.get("den", 1))

    def to_json(self):
        out = {"order": self.n, "coeffs": list(self.coeffs)}
        if self.den != 1:
            out["den"] = self.den
        return out

    # predicates
    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational(self):
        """Return (numerator, denominator) when the value is rational."""
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0], self.den

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.n != self.n:
                raise ValueError(f"order mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, Integral):
            return Cyclotomic.from_int(self.n, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        l = self.den * other.den // math.gcd(self.den, other.den)
        fa, fb = l // self.den, l // other.den
        return Cyclotomic(self.n, [a * fa + b * fb for a, b in zip(self.coeffs, other.coeffs)], l)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-c for c in self.coeffs], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = field(self.n)
        out = [0] * F.L
        for s, a in enumerate(self.coeffs):
            if not a:
                continue
            for t, b in enumerate(other.coeffs):
                if not b:
                    continue
                ab = a * b
                for u, c in enumerate(F._pow_lists[(s + t) % self.n]):
                    if c:
                        out[u] += ab * c
        return Cyclotomic(self.n, out, self.den * other.den)

    __rmul__ = __mul__

    def galois(self, t):
        """Image under zeta -> zeta^t, t prime to n."""
        F = field(self.n)
        full = [0] * self.n
        for i, c in enumerate(self.coeffs):
            full[(t * i) % self.n] += c
        return Cyclotomic(self.n, _reduce_full(F, full), self.den)

    def conjugate(self):
        return self.galois(-1)

    def norm(self):
        """Field norm to Q, as a Fraction-like (num, den) pair."""
        prod = self
        for t in range(2, self.n):
            if t % field(self.n).p:
                prod = prod * self.galois(t)
        return prod.rational()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        F = field(self.n)
        others = Cyclotomic.from_int(self.n, 1)
        for t in range(2, self.n):
            if t % F.p:
                others = others * self.galois(t)
        num, den = (self * others).rational()
        # self^-1 = others / (num/den)
        return Cyclotomic(self.n, [c * den for c in others.coeffs], others.den * num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclotomic.from_int(self.n, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Integral):
            other = Cyclotomic.from_int(self.n, int(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.n == other.n and self.den == other.den and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs, self.den))

    def embed(self):
        """Complex floating value."""
        z = 0j
        for j, c in enumerate(self.coeffs):
            if c:
                z += c * cmath.exp(2j * math.pi * j / self.n)
        return z / self.den

    def __complex__(self):
        return self.embed()

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*z^{j}")
        body = " + ".join(terms) or "0"
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"Cyclotomic[{self.n}]({body})"


def _reduce_full(F, full):
    out = [0] * F.L
    for e, c in enumerate(full):
        if c:
            for u, r in enumerate(F._pow_lists[e % F.n]):
                if r:
                    out[u] += c * r
    return out


def cyc_arith(op, x, y=None, *, power=0):
    """Tagged exact arithmetic: add, sub, mul, neg, conj, root_mul (zeta^power * x)."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "conj":
        return x.conjugate()
    if op == "root_mul":
        return Cyclotomic.root(x.n, power) * x
    raise ValueError(f"unknown op {op!r}")


def embed_complex(x):
    return x.embed()


def root_of_unity(n, e2):
    """Value exp(2*pi*i*e2/(2n)) as a Cyclotomic of order n (n odd).

    Used for quantities that are +-zeta^j, stored as an exponent mod 2n.
    """
    e2 %= 2 * n
    if e2 % 2 == 0:
        return Cyclotomic.root(n, e2 // 2)
    return -Cyclotomic.root(n, (e2 + n) // 2)


def det(rows):
    """Determinant of a square matrix of Cyclotomic values (Gaussian elimination)."""
    a = [list(r) for r in rows]
    size = len(a)
    if size == 0:
        raise ValueError("empty matrix")
    n = a[0][0].n
    out = Cyclotomic.from_int(n, 1)
    for col in range(size):
        piv = next((r for r in range(col, size) if not a[r][col].is_zero()), None)
        if piv is None:
            return Cyclotomic.from_int(n, 0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            out = -out
        pv = a[col][col]
        out = out * pv
        inv = pv.inverse()
        for r in range(col + 1, size):
            if a[r][col].is_zero():
                continue
            factor = a[r][col] * inv
            a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return out
