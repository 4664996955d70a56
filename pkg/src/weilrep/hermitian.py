"""The hyperbolic eps-hermitian space V = M + N of rank 2m and its Bruhat elements."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .rings import FiniteRing, MatrixRing, NotUnit, units_mask

EXHAUSTIVE_LIMIT = 10_000
SAMPLES = 1_000


class ColumnSpace:
    """B^m with vectors indexed 0 .. |B|^m - 1, first coordinate most significant."""

    def __init__(self, ring: FiniteRing, m: int):
        self.ring, self.m = ring, m
        self.dim = ring.size ** m
        self._radix = ring.size ** np.arange(m - 1, -1, -1, dtype=np.int64)

    @cached_property
    def vectors(self):
        return np.indices((self.ring.size,) * self.m).reshape(self.m, -1).T.astype(np.int64)

    def encode(self, vecs):
        out = np.asarray(vecs, dtype=np.int64) @ self._radix
        return int(out) if np.ndim(out) == 0 else out

    def decode(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self._radix) % self.ring.size

    def add(self, a, b):
        return np.asarray(self.ring.add(a, b), dtype=np.int64)

    def neg(self, a):
        return np.asarray(self.ring.neg(a), dtype=np.int64)

    def apply(self, M, vecs):
        """M v for a matrix M (m, m) and vectors (..., m)."""
        B = self.ring
        M = np.asarray(M, dtype=np.int64)
        vecs = np.asarray(vecs, dtype=np.int64)
        prod = np.asarray(B.mul(M, vecs[..., None, :]), dtype=np.int64)  # (..., m, m)
        out = prod[..., 0]
        for j in range(1, prod.shape[-1]):
            out = np.asarray(B.add(out, prod[..., j]), dtype=np.int64)
        return out

    def star_dot(self, a, b):
        """a^* b = sum_i a_i^* b_i."""
        B = self.ring
        terms = np.asarray(B.mul(B.star(np.asarray(a)), np.asarray(b)), dtype=np.int64)
        out = terms[..., 0]
        for j in range(1, terms.shape[-1]):
            out = np.asarray(B.add(out, terms[..., j]), dtype=np.int64)
        return out

    def form(self, a, S, b):
        """a^* S b."""
        return self.star_dot(a, self.apply(S, b))

    def gram_table(self):
        """Table of a^* b over all pairs of vectors, shape (d, d)."""
        v = self.vectors
        return self.star_dot(v[:, None, :], v[None, :, :])

    @cached_property
    def neg_perm(self):
        return self.encode(self.neg(self.vectors))

    def index_of_apply(self, M):
        """Permutation a -> index(M v_a) over all vectors."""
        return self.encode(self.apply(M, self.vectors))


@dataclass(frozen=True)
class BruhatElement:
    kind: str  # "omega", "omega_inv", "h" or "u"
    param: np.ndarray | None
    matrix: np.ndarray

    def label(self, space=None):
        if self.param is None:
            return self.kind
        p = self.param.tolist()
        return f"{self.kind}({p})"


class HermitianSpace:
    """V = B^{2m} with h(u, v) = u^* J v, J = [[0, 1], [eps, 0]] in m x m blocks."""

    def __init__(self, ring: FiniteRing, m: int, eps: int):
        if eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        if m < 1:
            raise ValueError("m must be >= 1")
        self.ring, self.m, self.eps = ring, m, eps
        self.A = MatrixRing(ring, m)
        self.A2 = MatrixRing(ring, 2 * m)
        self.X = ColumnSpace(ring, m)
        self.eps_el = ring.one if eps == 1 else ring.neg(ring.one)
        one, z = self.A.identity(), self.A.zero()
        self.J = self.from_blocks(z, one, self.A.scalar(self.eps_el), z)

    def __repr__(self):
        return f"HermitianSpace({self.ring!r}, m={self.m}, eps={self.eps:+d})"

    # blocks
    def blocks(self, X):
        m = self.m
        X = np.asarray(X)
        return X[:m, :m], X[:m, m:], X[m:, :m], X[m:, m:]

    def from_blocks(self, a, b, c, d):
        return np.block([[a, b], [c, d]]).astype(np.int64)

    # form
    def h(self, u, v):
        """h(u, v) = u^* J v for vectors of length 2m (broadcasting)."""
        m, B = self.m, self.ring
        u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
        first = self.X.star_dot(u[..., :m], v[..., m:])
        second = self.X.star_dot(u[..., m:], v[..., :m])
        return np.asarray(B.add(first, B.mul(self.eps_el, second)), dtype=np.int64)

    def is_isometry(self, X):
        """X^* J X == J, cross-checked against the block conditions."""
        A2 = self.A2
        X = np.asarray(X, dtype=np.int64)
        direct = A2.equal(A2.mul(A2.mul(A2.star(X), self.J), X), self.J)
        A = self.A
        a, b, c, d = self.blocks(X)
        e = self.eps_el
        c1 = A.equal(A.mul(A.star(a), c), A.mul_scalar_left(self.ring.neg(e), A.mul(A.star(c), a)))
        c2 = A.equal(A.mul(A.star(b), d), A.mul_scalar_left(self.ring.neg(e), A.mul(A.star(d), b)))
        c3 = A.equal(A.add(A.mul(A.star(d), a), A.mul_scalar_left(e, A.mul(A.star(b), c))), A.identity())
        blockwise = c1 and c2 and c3
        if direct != blockwise:
            raise AssertionError("matrix and block isometry tests disagree")
        return direct

    # Bruhat elements
    def omega(self):
        z, one = self.A.zero(), self.A.identity()
        return BruhatElement("omega", None, self.from_blocks(z, one, self.A.scalar(self.eps_el), z))

    def omega_inv(self):
        z, one = self.A.zero(), self.A.identity()
        return BruhatElement("omega_inv", None, self.from_blocks(z, self.A.scalar(self.eps_el), one, z))

    def h_el(self, t):
        A = self.A
        t = A.asarray(t)
        ts_inv = A.invert(A.star(t))  # raises NotUnit
        return BruhatElement("h", t, self.from_blocks(t, A.zero(), A.zero(), ts_inv))

    def u_el(self, r):
        A = self.A
        r = A.asarray(r)
        if not self.is_eps_sym(r):
            raise ValueError("u_r needs r + eps r^* = 0")
        return BruhatElement("u", r, self.from_blocks(A.identity(), r, A.zero(), A.identity()))

    def bruhat(self, kind, param=None):
        if kind == "omega":
            return self.omega()
        if kind == "omega_inv":
            return self.omega_inv()
        if kind == "h":
            return self.h_el(param)
        if kind == "u":
            return self.u_el(param)
        raise ValueError(f"unknown Bruhat kind {kind!r}")

    def is_eps_sym(self, r):
        A = self.A
        r = np.asarray(r, dtype=np.int64)
        return A.equal(A.add(r, A.mul_scalar_left(self.eps_el, A.star(r))), A.zero())

    # parameter sets
    @cached_property
    def eps_sym(self):
        return epsilon_symmetric_set(self.A, self.eps)

    @cached_property
    def units(self):
        return self.A.units()

    @cached_property
    def sym_units(self):
        S = self.eps_sym
        return S[units_mask(self.A, S)] if len(S) else S

    def random_unit(self, rng):
        return self.A.random_unit(rng)

    def random_eps_sym(self, rng):
        """Uniform element of A^{eps-sym}, via x -> (x - eps x^*) / 2."""
        A, B = self.A, self.ring
        x = A.random(rng)
        half = B.invert(B.scalar(2))
        diff = A.sub(x, A.mul_scalar_left(self.eps_el, A.star(x)))
        return A.mul_scalar_left(half, diff)

    def random_sym_unit(self, rng, tries=10_000):
        if len(self.sym_units) and len(self.sym_units) <= 10 ** 5:
            return self.sym_units[rng.integers(len(self.sym_units))]
        for _ in range(tries):
            r = self.random_eps_sym(rng)
            if self.A.is_unit(r):
                return r
        raise RuntimeError("no eps-symmetric unit found")

    # structural checks
    def vectors_V(self, limit=EXHAUSTIVE_LIMIT):
        size = self.ring.size ** (2 * self.m)
        if size > limit:
            raise ValueError(f"|V| = {size} exceeds limit {limit}")
        return ColumnSpace(self.ring, 2 * self.m).vectors

    def is_nondegenerate(self, limit=EXHAUSTIVE_LIMIT):
        V = self.vectors_V(limit)
        H = self.h(V[:, None, :], V[None, :, :])
        return bool(np.all(np.any(H[1:] != 0, axis=1)))

    def hermitian_symmetry(self, u, v):
        """h(u, v)^* == eps h(v, u)."""
        B = self.ring
        return np.asarray(B.star(self.h(u, v))) == np.asarray(B.mul(self.eps_el, self.h(v, u)))

    def isotropy_check(self, limit=EXHAUSTIVE_LIMIT):
        """h(M, M) = 0 = h(N, N)."""
        if self.X.dim ** 2 > limit:
            raise ValueError("space too large for exhaustive isotropy check")
        x = self.X.vectors
        z = np.zeros_like(x)
        Mv = np.concatenate([x, z], axis=1)
        Nv = np.concatenate([z, x], axis=1)
        hm = self.h(Mv[:, None, :], Mv[None, :, :])
        hn = self.h(Nv[:, None, :], Nv[None, :, :])
        return bool(not hm.any() and not hn.any())


def epsilon_symmetric_set(A: MatrixRing, eps, limit=10 ** 6):
    """All r with r + eps r^* = 0, as an array (count, m, m) in a fixed order.

    Diagonal entries range over {b : b + eps b^* = 0}, strictly upper
    entries are free and the lower triangle is r_ji = -eps r_ij^*.
    """
    B, m = A.base, A.m
    e = B.one if eps == 1 else B.neg(B.one)
    elems = B.elements()
    diag = elems[np.asarray(B.add(elems, B.mul(e, B.star(elems)))) == 0]
    upper = [(i, j) for i in range(m) for j in range(i + 1, m)]
    count = len(diag) ** m * B.size ** len(upper)
    if count > limit:
        raise ValueError(f"|A^eps-sym| = {count} exceeds limit {limit}")
    choices = [diag] * m + [elems] * len(upper)
    grid = np.indices([len(c) for c in choices]).reshape(len(choices), -1).T
    out = np.zeros((len(grid), m, m), dtype=np.int64)
    for k in range(m):
        out[:, k, k] = diag[grid[:, k]]
    neg_e = B.neg(e)
    for slot, (i, j) in enumerate(upper):
        vals = elems[grid[:, m + slot]]
        out[:, i, j] = vals
        out[:, j, i] = B.mul(neg_e, B.star(vals))
    return out


def is_isometry(space: HermitianSpace, X):
    return space.is_isometry(X)


def bruhat(space: HermitianSpace, kind, param=None):
    return space.bruhat(kind, param)


# --- relations ---------------------------------------------------------------

RELATIONS = ("R1", "R2", "R3", "R4", "R5", "R6")


def _param_sets(space, exhaustive_limit, samples, rng):
    """Parameter tuples for each relation plus the quantifier mode."""
    A = space.A
    out = {}

    def collect(name, pools, sampler):
        total = 1
        for p in pools:
            total *= len(p) if p is not None else exhaustive_limit + 1
        if all(p is not None for p in pools) and total <= exhaustive_limit:
            idx = np.indices([len(p) for p in pools]).reshape(len(pools), -1).T
            out[name] = ([tuple(p[i] for p, i in zip(pools, row)) for row in idx], "exhaustive")
        else:
            out[name] = ([sampler() for _ in range(samples)], f"sampled({samples})")

    units = _maybe(lambda: space.units)
    syms = _maybe(lambda: space.eps_sym)
    sym_units = _maybe(lambda: space.sym_units)
    collect("R1", [units, units], lambda: (space.random_unit(rng), space.random_unit(rng)))
    collect("R2", [syms, syms], lambda: (space.random_eps_sym(rng), space.random_eps_sym(rng)))
    out["R3"] = ([()], "exhaustive")
    collect("R4", [units, syms], lambda: (space.random_unit(rng), space.random_eps_sym(rng)))
    collect("R5", [units], lambda: (space.random_unit(rng),))
    if sym_units is not None and len(sym_units) == 0:
        out["R6"] = ([], "exhaustive(empty)")
    else:
        collect("R6", [sym_units], lambda: (space.random_sym_unit(rng),))
    return out


def _maybe(fn):
    try:
        return fn()
    except ValueError:
        return None


def relation_words(space, name, params):
    """(lhs, rhs) as lists of (kind, param) words for one relation instance."""
    A, B = space.A, space.ring
    e = A.scalar(space.eps_el)
    if name == "R1":
        s, t = params
        return [("h", s), ("h", t)], [("h", A.mul(s, t))]
    if name == "R2":
        q, r = params
        return [("u", q), ("u", r)], [("u", A.add(q, r))]
    if name == "R3":
        return [("omega", None), ("omega", None)], [("h", e)]
    if name == "R4":
        t, r = params
        return [("h", t), ("u", r)], [("u", A.mul(A.mul(t, r), A.star(t))), ("h", t)]
    if name == "R5":
        (t,) = params
        return [("omega", None), ("h", t)], [("h", A.invert(A.star(t))), ("omega", None)]
    if name == "R6":
        (t,) = params
        tinv = A.invert(t)
        x = A.mul_scalar_left(B.neg(space.eps_el), tinv)
        return ([("u", t), ("omega", None), ("u", x), ("omega", None), ("u", t)],
                [("omega", None), ("h", A.neg(tinv))])
    raise ValueError(name)


def check_relations(space, evaluate, multiply, equal, *, exhaustive_limit=EXHAUSTIVE_LIMIT,
                    samples=SAMPLES, seed=0, only=None):
    """Check R1-R6 for the objects produced by ``evaluate(kind, param)``.

    Returns {name: {"pass", "mode", "checked", "failures"}}.
    """
    rng = np.random.default_rng(seed)
    sets = _param_sets(space, exhaustive_limit, samples, rng)
    report = {}
    for name in RELATIONS:
        if only is not None and name not in only:
            continue
        cases, mode = sets[name]
        failures = []
        for params in cases:
            lhs, rhs = relation_words(space, name, params)
            if not equal(_product(lhs, evaluate, multiply), _product(rhs, evaluate, multiply)):
                failures.append([np.asarray(p).tolist() for p in params])
        report[name] = {"pass": not failures, "mode": mode, "checked": len(cases),
                        "failures": failures[:5]}
    return report


def _product(word, evaluate, multiply):
    out = None
    for kind, param in word:
        g = evaluate(kind, param)
        out = g if out is None else multiply(out, g)
    return out


def matrix_relations(space, **kw):
    """R1-R6 as identities among Bruhat matrices."""
    A2 = space.A2
    return check_relations(space, lambda k, p: space.bruhat(k, p).matrix, A2.mul, A2.equal, **kw)
