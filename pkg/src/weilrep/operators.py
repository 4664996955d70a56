"""Exact square matrices over Q(zeta_n).

An :class:`Operator` stores integer numerators of reduced cyclotomic
coordinates plus one positive common denominator.  Column ``a`` is the image
of the basis vector ``e_a``.  Operators that map each basis vector to a
multiple of another basis vector (translations, diagonal phases, Levi
operators) keep a monomial form ``(perm, coef)`` so products stay O(d L^2);
everything else is dense with shape ``(d, d, L)``.
"""

from __future__ import annotations

import math

import numpy as np

from .cyclotomic import Cyclotomic, field

_EXACT = 2.0 ** 52


def _gcd_all(arr, den):
    g = int(np.gcd.reduce(np.abs(arr).ravel())) if arr.size else 0
    return math.gcd(g, int(den))


class Operator:
    __slots__ = ("n", "d", "den", "perm", "coef", "num")

    def __init__(self, n, d, den=1, perm=None, coef=None, num=None):
        self.n, self.d = n, d
        self.perm, self.coef, self.num = perm, coef, num
        self.den = int(den)
        self._normalise()

    # construction
    @classmethod
    def monomial(cls, n, perm, coef, den=1):
        """e_a -> coef[a] e_{perm[a]}; coef has shape (d, L)."""
        perm = np.asarray(perm, dtype=np.int64)
        coef = np.asarray(coef, dtype=np.int64)
        if coef.shape != (len(perm), field(n).L):
            raise ValueError("coefficient array has wrong shape")
        return cls(n, len(perm), den, perm=perm, coef=coef)

    @classmethod
    def phases(cls, n, perm, exps):
        """e_a -> zeta^{exps[a]} e_{perm[a]}."""
        return cls.monomial(n, perm, field(n).root(np.asarray(exps)))

    @classmethod
    def signed_phases(cls, n, perm, exps, signs):
        F = field(n)
        coef = F.root(np.asarray(exps)) * np.asarray(signs, dtype=np.int64)[:, None]
        return cls.monomial(n, perm, coef)

    @classmethod
    def dense(cls, n, num, den=1):
        num = np.asarray(num, dtype=np.int64)
        d = num.shape[0]
        if num.shape != (d, d, field(n).L):
            raise ValueError(f"dense numerator must have shape (d, d, L), got {num.shape}")
        return cls(n, d, den, num=num)

    @classmethod
    def from_exponents(cls, n, exps, den=1, scale=None):
        """Dense operator with entries zeta^{exps[i, j]} (times ``scale``)."""
        F = field(n)
        op = cls.dense(n, F.root(np.asarray(exps)), den)
        return op if scale is None else op.scale(scale)

    @classmethod
    def identity(cls, n, d):
        return cls.phases(n, np.arange(d), np.zeros(d, dtype=np.int64))

    @classmethod
    def from_entries(cls, entries):
        """Build from a nested list of Cyclotomic values."""
        d = len(entries)
        n = entries[0][0].n
        den = 1
        for row in entries:
            for x in row:
                den = den * x.den // math.gcd(den, x.den)
        L = field(n).L
        num = np.zeros((d, d, L), dtype=np.int64)
        for i, row in enumerate(entries):
            for j, x in enumerate(row):
                num[i, j] = np.asarray(x.coeffs, dtype=np.int64) * (den // x.den)
        return cls.dense(n, num, den)

    # internal
    @property
    def is_monomial(self):
        return self.perm is not None

    def _normalise(self):
        if self.den <= 0:
            if self.den == 0:
                raise ZeroDivisionError("zero denominator")
            self.den = -self.den
            if self.is_monomial:
                self.coef = -self.coef
            else:
                self.num = -self.num
        arr = self.coef if self.is_monomial else self.num
        g = _gcd_all(arr, self.den)
        if g > 1:
            if self.is_monomial:
                self.coef = self.coef // g
            else:
                self.num = self.num // g
            self.den //= g
        if not self.is_monomial and np.abs(self.num).max(initial=0) == 0:
            self.den = 1

    def to_dense(self):
        if not self.is_monomial:
            return self
        num = np.zeros((self.d, self.d, self.coef.shape[1]), dtype=np.int64)
        num[self.perm, np.arange(self.d)] = self.coef
        return Operator(self.n, self.d, self.den, num=num)

    def dense_num(self):
        return self.to_dense().num

    # arithmetic
    def _check(self, other):
        if not isinstance(other, Operator):
            raise TypeError("expected an Operator")
        if other.n != self.n or other.d != self.d:
            raise ValueError("operator shape or order mismatch")

    def __matmul__(self, other):
        self._check(other)
        F = field(self.n)
        den = self.den * other.den
        if self.is_monomial and other.is_monomial:
            # e_a -> B e_a = cb[a] e_{pb[a]} -> ca[pb[a]] cb[a] e_{pa[pb[a]]}
            coef = F.cmul(self.coef[other.perm], other.coef)
            return Operator(self.n, self.d, den, perm=self.perm[other.perm], coef=coef)
        if self.is_monomial:
            num = np.zeros_like(other.num)
            num[self.perm] = F.cmul(self.coef[:, None, :], other.num)
            return Operator(self.n, self.d, den, num=num)
        if other.is_monomial:
            # column a of A @ B is cb[a] * column pb[a] of A
            num = F.cmul(self.num[:, other.perm, :], other.coef[None, :, :])
            return Operator(self.n, self.d, den, num=num)
        return Operator(self.n, self.d, den, num=_dense_product(F, self.num, other.num))

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c):
        if isinstance(c, int):
            c = Cyclotomic.from_int(self.n, c)
        F = field(self.n)
        vec = np.asarray(c.coeffs, dtype=np.int64)
        if self.is_monomial:
            return Operator(self.n, self.d, self.den * c.den, perm=self.perm, coef=F.cmul(self.coef, vec))
        return Operator(self.n, self.d, self.den * c.den, num=F.cmul(self.num, vec))

    def __add__(self, other):
        self._check(other)
        a, b = self.to_dense(), other.to_dense()
        l = a.den * b.den // math.gcd(a.den, b.den)
        return Operator(self.n, self.d, l, num=a.num * (l // a.den) + b.num * (l // b.den))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def apply(self, vec, den=1):
        """Apply to a coordinate vector (d, L); returns (numerator, denominator)."""
        F = field(self.n)
        vec = np.asarray(vec, dtype=np.int64)
        if self.is_monomial:
            out = np.zeros_like(vec)
            out[self.perm] = F.cmul(self.coef, vec)
            return out, self.den * den
        out = _dense_product(F, self.num, vec[:, None, :])[:, 0, :]
        return out, self.den * den

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        if other.n != self.n or other.d != self.d or other.den != self.den:
            return False
        if self.is_monomial and other.is_monomial:
            return bool(np.array_equal(self.perm, other.perm) and np.array_equal(self.coef, other.coef))
        return bool(np.array_equal(self.dense_num(), other.dense_num()))

    def __hash__(self):
        return hash((self.n, self.d, self.den, self.dense_num().tobytes()))

    def is_scalar_multiple_of_identity(self):
        if self.is_monomial:
            return bool(np.all(self.perm == np.arange(self.d)) and np.all(self.coef == self.coef[0]))
        num = self.num
        off = num.copy()
        off[np.arange(self.d), np.arange(self.d)] = 0
        diag = num[np.arange(self.d), np.arange(self.d)]
        return bool(not off.any() and np.all(diag == diag[0]))

    # inspection
    def entry(self, i, j):
        if self.is_monomial:
            if self.perm[j] != i:
                return Cyclotomic.from_int(self.n, 0)
            return Cyclotomic(self.n, self.coef[j].tolist(), self.den)
        return Cyclotomic(self.n, self.num[i, j].tolist(), self.den)

    def trace(self):
        if self.is_monomial:
            fixed = self.perm == np.arange(self.d)
            return Cyclotomic(self.n, self.coef[fixed].sum(axis=0).tolist(), self.den)
        idx = np.arange(self.d)
        return Cyclotomic(self.n, self.num[idx, idx].sum(axis=0).tolist(), self.den)

    def entries(self):
        return [[self.entry(i, j) for j in range(self.d)] for i in range(self.d)]

    def to_complex(self):
        F = field(self.n)
        z = np.exp(2j * np.pi * np.arange(F.L) / self.n)
        return (self.dense_num() @ z) / self.den

    def perturbed(self, i=0, j=0):
        """Copy with entry (i, j) shifted by 1; used for mutation tests."""
        num = self.dense_num().copy()
        num[i, j, 0] += self.den
        return Operator(self.n, self.d, self.den, num=num)

    def to_json(self):
        return {"dim": self.d, "entries": [[x.to_json() for x in row] for row in self.entries()]}

    @classmethod
    def from_json(cls, obj):
        return cls.from_entries([[Cyclotomic.from_json(x) for x in row] for row in obj["entries"]])

    def __repr__(self):
        kind = "monomial" if self.is_monomial else "dense"
        return f"Operator(order={self.n}, dim={self.d}, {kind}, den={self.den})"


def _dense_product(F, A, B):
    """Exact (d, k, L) x (k, e, L) cyclotomic matrix product."""
    d, k, L = A.shape
    e = B.shape[1]
    amax = int(np.abs(A).max(initial=0))
    bmax = int(np.abs(B).max(initial=0))
    # each output coordinate is a sum of at most k * L * L * (p-1) terms
    bound = amax * bmax * k * L * L * max(F.p - 1, 1)
    if bound < _EXACT:
        Af = A.astype(np.float64)
        Bf = B.reshape(k, e * L).astype(np.float64)
        out = np.zeros((d, e, L), dtype=np.float64)
        for s in range(L):
            part = (Af[:, :, s] @ Bf).reshape(d, e, L)
            out += part @ F.mul[s].astype(np.float64)
        return np.rint(out).astype(np.int64)
    Ao = A.astype(object)
    Bo = B.astype(object)
    out = np.zeros((d, e, L), dtype=object)
    for s in range(L):
        part = np.tensordot(Ao[:, :, s], Bo, axes=([1], [0]))
        out += np.tensordot(part, F.mul[s].astype(object), axes=([2], [0]))
    if max(abs(int(x)) for x in out.ravel()) >= 2 ** 62:
        raise OverflowError("operator entries exceed int64 range")
    return out.astype(np.int64)
