"""Finite rings with involution and matrix rings over them.

Every shipped family has additive group (Z/n)^r with n = p^k, so an element
is a digit vector ``c`` in (Z/n)^r and its index is ``sum(c[i] * n**i)``.
Addition is digitwise, multiplication and the involution are
family-specific.  Rings up to ``TABLE_LIMIT`` elements get full operation
tables at construction; larger rings evaluate digit arithmetic on demand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

TABLE_LIMIT = 10_000

FAMILIES = (
    "prime_field",
    "quadratic_frobenius",
    "integers_mod_pk",
    "galois_ring_frobenius",
    "ramified_even",
    "skew_poly_quotient",
    "matrix2_adjugate",
)


class NotUnit(ArithmeticError):
    """Raised when an inverse is requested for a non-unit."""


def is_prime(p):
    p = int(p)
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p ** 0.5) + 1))


def nonresidue(p):
    """Smallest quadratic non-residue mod an odd prime p."""
    return next(d for d in range(2, p) if pow(d, (p - 1) // 2, p) == p - 1)


@dataclass(frozen=True)
class RingConfig:
    family: str
    p: int
    k: int = 1
    s: int | None = None

    @classmethod
    def from_json(cls, obj):
        """Parse ``{"family", "p", "k"?, "s"?}``; ``q`` is accepted for ``p``."""
        obj = dict(obj)
        p = obj.get("p", obj.get("q"))
        if "family" not in obj or p is None:
            raise ValueError(f"ring config needs 'family' and 'p': {obj}")
        return cls(obj["family"], int(p), int(obj.get("k") or 1), obj.get("s"))

    def to_json(self):
        out = {"family": self.family, "p": self.p}
        if self.k != 1:
            out["k"] = self.k
        if self.s is not None:
            out["s"] = self.s
        return out


# --- family digit arithmetic -------------------------------------------------
# Each backend works on int64 digit arrays of shape (..., r).

def _quad_mul(a, b, D, n):
    a0, a1 = a[..., 0], a[..., 1]
    b0, b1 = b[..., 0], b[..., 1]
    return np.stack([(a0 * b0 + D * a1 * b1) % n, (a0 * b1 + a1 * b0) % n], axis=-1)


def _quad_conj(a, n):
    return np.stack([a[..., 0], (-a[..., 1]) % n], axis=-1)


@dataclass
class _Backend:
    n: int
    r: int
    mul: object
    star: object
    unit: object
    local: bool
    fmt: object
    residue: str  # "field_p", "field_p2" or "none"


def _backend(cfg):
    fam, p, k, s = cfg.family, cfg.p, cfg.k, cfg.s
    if fam == "prime_field":
        n = p
        return _Backend(
            n, 1,
            lambda a, b: (a * b) % n,
            lambda a: a,
            lambda a: a[..., 0] % p != 0,
            True, lambda c: str(c[0]), "field_p")
    if fam == "integers_mod_pk":
        n = p ** k
        return _Backend(
            n, 1,
            lambda a, b: (a * b) % n,
            lambda a: a,
            lambda a: a[..., 0] % p != 0,
            True, lambda c: str(c[0]), "field_p")
    if fam in ("quadratic_frobenius", "galois_ring_frobenius", "ramified_even"):
        n = p if fam == "quadratic_frobenius" else p ** k
        D = p if fam == "ramified_even" else nonresidue(p)
        sym = "π" if fam == "ramified_even" else "θ"
        if fam == "ramified_even":
            unit = lambda a: a[..., 0] % p != 0
            residue = "field_p"
        else:
            unit = lambda a: (a[..., 0] % p != 0) | (a[..., 1] % p != 0)
            residue = "field_p2"
        return _Backend(
            n, 2,
            lambda a, b: _quad_mul(a, b, D, n),
            lambda a: _quad_conj(a, n),
            unit, True, lambda c: f"{c[0]}+{c[1]}{sym}", residue)
    if fam == "skew_poly_quotient":
        n, D = p, nonresidue(p)

        def mul(a, b):
            a = a.reshape(a.shape[:-1] + (s, 2))
            b = b.reshape(b.shape[:-1] + (s, 2))
            bconj = _quad_conj(b, n)
            out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
            for i in range(s):
                for j in range(s - i):
                    # t^i b_j = sigma^i(b_j) t^i
                    bj = b[..., j, :] if i % 2 == 0 else bconj[..., j, :]
                    out[..., i + j, :] += _quad_mul(a[..., i, :], bj, D, n)
            out %= n
            return out.reshape(out.shape[:-2] + (2 * s,))

        def star(a):
            a = a.reshape(a.shape[:-1] + (s, 2)).copy()
            for i in range(s):
                if i % 2 == 0:
                    a[..., i, :] = _quad_conj(a[..., i, :], n)
                else:
                    a[..., i, :] = (-a[..., i, :]) % n
            return a.reshape(a.shape[:-2] + (2 * s,))

        def fmt(c):
            return " + ".join(f"({c[2*i]}+{c[2*i+1]}θ)t^{i}" for i in range(s))

        return _Backend(
            n, 2 * s, mul, star,
            lambda a: (a[..., 0] != 0) | (a[..., 1] != 0),
            True, fmt, "field_p2")
    if fam == "matrix2_adjugate":
        n = p

        def mul(a, b):
            x11, x12, x21, x22 = (a[..., i] for i in range(4))
            y11, y12, y21, y22 = (b[..., i] for i in range(4))
            return np.stack([
                (x11 * y11 + x12 * y21) % n, (x11 * y12 + x12 * y22) % n,
                (x21 * y11 + x22 * y21) % n, (x21 * y12 + x22 * y22) % n], axis=-1)

        def star(a):
            return np.stack([a[..., 3], (-a[..., 1]) % n, (-a[..., 2]) % n, a[..., 0]], axis=-1)

        return _Backend(
            n, 4, mul, star,
            lambda a: (a[..., 0] * a[..., 3] - a[..., 1] * a[..., 2]) % p != 0,
            False, lambda c: f"[[{c[0]},{c[1]}],[{c[2]},{c[3]}]]", "none")
    raise ValueError(f"unknown ring family {fam!r}")


def _validate(cfg):
    if cfg.family not in FAMILIES:
        raise ValueError(f"unknown ring family {cfg.family!r}")
    if not is_prime(cfg.p) or cfg.p == 2:
        raise ValueError(f"p must be an odd prime, got {cfg.p}")
    if cfg.k < 1:
        raise ValueError("k must be >= 1")
    if cfg.family in ("prime_field", "quadratic_frobenius", "matrix2_adjugate") and cfg.k != 1:
        raise ValueError(f"{cfg.family} takes k = 1")
    if cfg.family == "skew_poly_quotient":
        if cfg.s is None or int(cfg.s) < 2:
            raise ValueError("skew_poly_quotient needs s >= 2")
    elif cfg.s is not None:
        raise ValueError(f"{cfg.family} takes no s parameter")


class FiniteRing:
    """A finite ring with involution on element indices ``0 .. size-1``.

    Operations accept ints or integer arrays and broadcast.
    """

    def __init__(self, cfg: RingConfig):
        _validate(cfg)
        if cfg.s is not None:
            cfg = RingConfig(cfg.family, cfg.p, cfg.k, int(cfg.s))
        self.config = cfg
        self.family = cfg.family
        self.p = cfg.p
        be = _backend(cfg)
        self._be = be
        self.n = be.n
        self.r = be.r
        self.size = be.n ** be.r
        self.local = be.local
        self.residue = be.residue
        self._radix = be.n ** np.arange(be.r, dtype=np.int64)
        self.zero = 0
        self.one = 1  # digit vector (1, 0, ...) except for matrices
        if self.family == "matrix2_adjugate":
            self.one = self.encode(np.array([1, 0, 0, 1]))
        self._tables = self.size <= TABLE_LIMIT
        if self._tables:
            self._build_tables()

    # encoding
    def digits(self, x):
        x = np.asarray(x, dtype=np.int64)
        return (x[..., None] // self._radix) % self.n

    def encode(self, c):
        c = np.asarray(c, dtype=np.int64) % self.n
        out = c @ self._radix
        return int(out) if out.ndim == 0 else out

    def element(self, coeffs):
        return self.encode(np.asarray(coeffs))

    def _build_tables(self):
        idx = np.arange(self.size, dtype=np.int64)
        dig = self.digits(idx)
        self._dig = dig
        X = dig[:, None, :]
        Y = dig[None, :, :]
        self._add = self.encode((X + Y) % self.n)
        self._mul = self.encode(self._be.mul(np.broadcast_to(X, (self.size, self.size, self.r)),
                                             np.broadcast_to(Y, (self.size, self.size, self.r))))
        self._neg = self.encode((-dig) % self.n)
        self._star = self.encode(self._be.star(dig))
        self._unit = np.asarray(self._be.unit(dig), dtype=bool)
        inv = np.full(self.size, -1, dtype=np.int64)
        units = np.nonzero(self._unit)[0]
        hits = self._mul[units] == self.one
        inv[units] = np.argmax(hits, axis=1)
        if not np.all(hits[np.arange(len(units)), inv[units]]):
            raise AssertionError("unit without inverse")
        self._inv = inv

    # arithmetic
    def add(self, x, y):
        if self._tables:
            return _pick(self._add, x, y)
        return self.encode((self.digits(x) + self.digits(y)) % self.n)

    def neg(self, x):
        if self._tables:
            return _pick(self._neg, x)
        return self.encode((-self.digits(x)) % self.n)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self._tables:
            return _pick(self._mul, x, y)
        return self.encode(self._be.mul(*np.broadcast_arrays(self.digits(x), self.digits(y))))

    def star(self, x):
        if self._tables:
            return _pick(self._star, x)
        return self.encode(self._be.star(self.digits(x)))

    def scalar(self, c):
        """Image of the integer c."""
        return self.mul_int(self.one, c)

    def mul_int(self, x, c):
        return self.encode((self.digits(x) * int(c)) % self.n)

    def is_unit(self, x):
        if self._tables:
            return _pick(self._unit, x)
        out = np.asarray(self._be.unit(self.digits(x)), dtype=bool)
        return bool(out) if out.ndim == 0 else out

    def in_radical(self, x):
        """Membership in the Jacobson radical; only defined for local rings."""
        if not self.local:
            raise ValueError(f"{self.family} is not local")
        u = self.is_unit(x)
        return ~u if isinstance(u, np.ndarray) else not u

    def invert(self, x):
        x = int(x)
        if self._tables:
            y = int(self._inv[x])
            if y < 0:
                raise NotUnit(f"{self.format(x)} is not a unit")
            return y
        if not self.is_unit(x):
            raise NotUnit(f"{self.format(x)} is not a unit")
        cand = np.arange(self.size)
        hit = np.nonzero(self.mul(x, cand) == self.one)[0]
        return int(hit[0])

    def elements(self):
        return np.arange(self.size, dtype=np.int64)

    def units(self):
        idx = self.elements()
        return idx[self.is_unit(idx)]

    def random(self, rng, size=None):
        return rng.integers(0, self.size, size=size)

    def format(self, x):
        return self._be.fmt([int(c) for c in self.digits(int(x))])

    def __repr__(self):
        extra = f", k={self.config.k}" if self.config.k != 1 else ""
        extra += f", s={self.config.s}" if self.config.s is not None else ""
        return f"FiniteRing({self.family}, p={self.p}{extra}, size={self.size})"


def _pick(table, *args):
    out = table[tuple(np.asarray(a) for a in args)]
    if isinstance(out, np.ndarray) and out.ndim == 0:
        return out.item()
    if not isinstance(out, np.ndarray):
        return out.item() if hasattr(out, "item") else out
    return out


def build_ring(config) -> FiniteRing:
    """Build a ring from a :class:`RingConfig`, a dict, or a family name plus kwargs."""
    if isinstance(config, dict):
        config = RingConfig.from_json(config)
    return FiniteRing(config)


def ring(family, p, k=1, s=None):
    return FiniteRing(RingConfig(family, p, k, s))


# --- matrices ---------------------------------------------------------------

class MatrixRing:
    """M(m, B) with the conjugate-transpose involution; elements are (m, m) index arrays.

    All operations broadcast over leading axes.
    """

    def __init__(self, base: FiniteRing, m: int):
        if m < 1:
            raise ValueError("m must be >= 1")
        self.base = base
        self.m = m

    @property
    def size(self):
        return self.base.size ** (self.m * self.m)

    def identity(self):
        return self.scalar(self.base.one)

    def zero(self):
        return np.zeros((self.m, self.m), dtype=np.int64)

    def scalar(self, b):
        out = self.zero()
        np.fill_diagonal(out, b)
        return out

    def asarray(self, x):
        x = np.asarray(x, dtype=np.int64)
        if x.shape[-2:] != (self.m, self.m):
            raise ValueError(f"expected {self.m}x{self.m} matrix, got shape {x.shape}")
        return x

    def add(self, x, y):
        return np.asarray(self.base.add(x, y), dtype=np.int64)

    def neg(self, x):
        return np.asarray(self.base.neg(x), dtype=np.int64)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        B = self.base
        prod = np.asarray(B.mul(x[..., :, :, None], y[..., None, :, :]), dtype=np.int64)
        out = prod[..., 0, :]
        for l in range(1, x.shape[-1]):
            out = np.asarray(B.add(out, prod[..., l, :]), dtype=np.int64)
        return out

    def mul_scalar_left(self, b, x):
        return np.asarray(self.base.mul(b, x), dtype=np.int64)

    def star(self, x):
        return np.asarray(self.base.star(np.swapaxes(np.asarray(x), -1, -2)), dtype=np.int64)

    def equal(self, x, y):
        return bool(np.array_equal(np.asarray(x), np.asarray(y)))

    def key(self, x):
        return np.ascontiguousarray(np.asarray(x, dtype=np.int64)).tobytes()

    def is_unit(self, x):
        try:
            mat_invert(self, x)
        except NotUnit:
            return False
        return True

    def invert(self, x):
        return mat_invert(self, x)

    def elements(self, limit=10 ** 6):
        """All matrices in lexicographic index order (guarded by ``limit``)."""
        if self.size > limit:
            raise ValueError(f"|M({self.m}, B)| = {self.size} exceeds enumeration limit {limit}")
        mm = self.m * self.m
        for entries in itertools.product(range(self.base.size), repeat=mm):
            yield np.array(entries, dtype=np.int64).reshape(self.m, self.m)

    def all_elements(self, limit=10 ** 6):
        if self.size > limit:
            raise ValueError(f"|M({self.m}, B)| = {self.size} exceeds enumeration limit {limit}")
        grids = np.indices((self.base.size,) * (self.m * self.m)).reshape(self.m * self.m, -1).T
        return grids.reshape(-1, self.m, self.m).astype(np.int64)

    def units(self, limit=10 ** 6):
        allx = self.all_elements(limit)
        mask = units_mask(self, allx)
        return allx[mask]

    def random(self, rng):
        return rng.integers(0, self.base.size, size=(self.m, self.m)).astype(np.int64)

    def random_unit(self, rng, tries=10_000):
        for _ in range(tries):
            x = self.random(rng)
            if self.is_unit(x):
                return x
        raise RuntimeError("failed to sample a unit")

    def format(self, x):
        x = np.asarray(x)
        return "[" + ", ".join("[" + ", ".join(self.base.format(v) for v in row) + "]" for row in x) + "]"

    def __repr__(self):
        return f"MatrixRing({self.base!r}, m={self.m})"


def matrix_ring(ring: FiniteRing, m: int) -> MatrixRing:
    return MatrixRing(ring, m)


def _flatten_adjugate(A, x):
    """Matrix over M(2, F_p) -> matrix over F_p of twice the size."""
    m = x.shape[-1]
    dig = A.base.digits(x)  # (m, m, 4): x11 x12 x21 x22
    out = np.zeros((2 * m, 2 * m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = dig[i, j].reshape(2, 2)
    return out


def _unflatten_adjugate(A, y):
    m = y.shape[0] // 2
    out = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            out[i, j] = A.base.encode(y[2 * i:2 * i + 2, 2 * j:2 * j + 2].reshape(4))
    return out


def flatten(A, x):
    """View a matrix over M(2, F_p) as a matrix over F_p."""
    if A.base.family != "matrix2_adjugate":
        raise ValueError("flatten applies to matrix2_adjugate bases")
    return _flatten_adjugate(A, np.asarray(x, dtype=np.int64))


def det_mod_p(x, p):
    """Determinant of an integer matrix over F_p."""
    a = [[int(v) % p for v in row] for row in np.asarray(x)]
    size = len(a)
    out = 1
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            out = -out
        out = out * a[col][col] % p
        inv = pow(a[col][col], p - 2, p)
        for r in range(col + 1, size):
            f = a[r][col] * inv % p
            if f:
                a[r] = [(u - f * v) % p for u, v in zip(a[r], a[col])]
    return out % p


def _invert_mod_p(x, p):
    size = x.shape[0]
    a = [[int(v) % p for v in row] + [int(i == j) for j in range(size)] for i, row in enumerate(x)]
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col]), None)
        if piv is None:
            raise NotUnit("singular matrix over F_p")
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], p - 2, p)
        a[col] = [v * inv % p for v in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [(u - f * v) % p for u, v in zip(a[r], a[col])]
    return np.array([row[size:] for row in a], dtype=np.int64)


def mat_invert(A: MatrixRing, x):
    """Two-sided inverse of x in M(m, B), or raise :class:`NotUnit`.

    Local bases use Gauss-Jordan elimination with unit pivots (a unit pivot
    exists in every column iff x is invertible modulo the radical).  The
    adjugate family is flattened to a matrix over F_p.
    """
    x = A.asarray(x)
    B = A.base
    if B.family == "matrix2_adjugate":
        y = _unflatten_adjugate(A, _invert_mod_p(_flatten_adjugate(A, x), B.p))
        return y
    m = A.m
    left = [[int(v) for v in row] for row in x]
    right = [[B.one if i == j else B.zero for j in range(m)] for i in range(m)]
    for col in range(m):
        piv = next((r for r in range(col, m) if B.is_unit(left[r][col])), None)
        if piv is None:
            raise NotUnit("matrix is singular modulo the radical")
        left[col], left[piv] = left[piv], left[col]
        right[col], right[piv] = right[piv], right[col]
        inv = B.invert(left[col][col])
        left[col] = [B.mul(inv, v) for v in left[col]]
        right[col] = [B.mul(inv, v) for v in right[col]]
        for r in range(m):
            if r == col:
                continue
            f = left[r][col]
            if f == B.zero:
                continue
            left[r] = [B.sub(u, B.mul(f, v)) for u, v in zip(left[r], left[col])]
            right[r] = [B.sub(u, B.mul(f, v)) for u, v in zip(right[r], right[col])]
    y = np.array(right, dtype=np.int64)
    if not A.equal(A.mul(x, y), A.identity()):
        raise AssertionError("left inverse is not a right inverse")
    return y


def units_mask(A: MatrixRing, xs):
    """Vectorised unit test for a stack of matrices."""
    xs = np.asarray(xs, dtype=np.int64)
    B = A.base
    if A.m == 1:
        return np.asarray(B.is_unit(xs[..., 0, 0]), dtype=bool)
    if B.family == "matrix2_adjugate" or not B.local:
        return np.array([A.is_unit(x) for x in xs], dtype=bool)
    if A.m == 2 and B.family not in ("skew_poly_quotient",):
        # commutative local base: unit iff det is a unit
        det = B.sub(B.mul(xs[..., 0, 0], xs[..., 1, 1]), B.mul(xs[..., 0, 1], xs[..., 1, 0]))
        return np.asarray(B.is_unit(det), dtype=bool)
    return np.array([A.is_unit(x) for x in xs], dtype=bool)
