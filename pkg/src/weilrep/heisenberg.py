"""The Heisenberg group H = B x V and its Schrodinger model on X = C[B^m]."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import AdditiveCharacter
from .cyclotomic import Cyclotomic, field
from .hermitian import ColumnSpace, HermitianSpace
from .operators import Operator


@dataclass(frozen=True)
class HeisenbergElement:
    b: int
    u: tuple  # length 2m: M-coordinates then N-coordinates

    @classmethod
    def make(cls, b, u):
        return cls(int(b), tuple(int(x) for x in np.asarray(u).ravel()))

    def vec(self):
        return np.array(self.u, dtype=np.int64)


def h_mul(space: HermitianSpace, x: HeisenbergElement, y: HeisenbergElement):
    """(b, u)(c, v) = (b + c + h(u, v), u + v)."""
    B = space.ring
    u, v = x.vec(), y.vec()
    b = B.add(B.add(x.b, y.b), int(space.h(u, v)))
    return HeisenbergElement.make(b, B.add(u, v))


def h_inv(space: HermitianSpace, x: HeisenbergElement):
    B = space.ring
    u = x.vec()
    out = HeisenbergElement.make(B.add(B.neg(x.b), int(space.h(u, u))), B.neg(u))
    if h_mul(space, x, out) != identity(space):
        raise AssertionError("Heisenberg inverse formula failed")
    return out


def identity(space: HermitianSpace):
    return HeisenbergElement.make(0, np.zeros(2 * space.m, dtype=np.int64))


def u_act(space: HermitianSpace, g, x: HeisenbergElement):
    """^g (b, u) = (b, g u)."""
    g = np.asarray(g, dtype=np.int64)
    gu = ColumnSpace(space.ring, 2 * space.m).apply(g, x.vec())
    return HeisenbergElement.make(x.b, gu)


def heisenberg_elements(space: HermitianSpace, limit=10 ** 5):
    B = space.ring
    size = B.size ** (2 * space.m + 1)
    if size > limit:
        raise ValueError(f"|H| = {size} exceeds limit {limit}")
    V = space.vectors_V(limit)
    return [HeisenbergElement.make(b, u) for b in range(B.size) for u in V]


def random_element(space: HermitianSpace, rng):
    B = space.ring
    return HeisenbergElement.make(B.random(rng), B.random(rng, size=2 * space.m))


def generating_set(space: HermitianSpace):
    """Central elements (b, 0) for b in a basis of B+, plus (0, e_i b) for each coordinate."""
    B = space.ring
    m = space.m
    basis = [B.encode(np.eye(B.r, dtype=np.int64)[i]) for i in range(B.r)]
    gens = [HeisenbergElement.make(b, np.zeros(2 * m)) for b in basis]
    for i in range(2 * m):
        for b in basis:
            u = np.zeros(2 * m, dtype=np.int64)
            u[i] = b
            gens.append(HeisenbergElement.make(0, u))
    return gens


class SchrodingerModel:
    """S(b, (p; q)) e_a = beta(b + p^*q + 2 p^*a) e_{a+q}, built from the generator formulas.

    Here (p; q) has p in M and q in N, and X has basis e_a, a in N = B^m.
    """

    def __init__(self, space: HermitianSpace, beta: AdditiveCharacter):
        if beta.ring is not space.ring:
            raise ValueError("character lives on a different ring")
        self.space, self.beta = space, beta
        self.X = space.X
        self.n = beta.n
        self.d = self.X.dim

    def _split(self, x):
        u = x.vec()
        return u[: self.space.m], u[self.space.m:]

    def translation(self, q):
        """S(0, w) for w = (0; q) in N: e_a -> e_{a+q}."""
        X = self.X
        perm = X.encode(X.add(X.vectors, np.asarray(q)[None, :]))
        return Operator.phases(self.n, perm, np.zeros(self.d, dtype=np.int64))

    def diagonal(self, p):
        """S(0, u) for u = (p; 0) in M: diagonal beta(2 h(u, v))."""
        X, B = self.X, self.space.ring
        two_p = B.mul(B.scalar(2), np.asarray(p))
        exps = self.beta.exponent(X.star_dot(two_p[None, :], X.vectors))
        return Operator.phases(self.n, np.arange(self.d), exps)

    def central(self, b):
        return Operator.phases(self.n, np.arange(self.d), np.full(self.d, self.beta.exponent(int(b))))

    def __call__(self, x: HeisenbergElement):
        """S(b, u + w) = S(b - h(u, w), 0) S(0, u) S(0, w)."""
        B = self.space.ring
        m = self.space.m
        p, q = self._split(x)
        u = np.concatenate([p, np.zeros(m, dtype=np.int64)])
        w = np.concatenate([np.zeros(m, dtype=np.int64), q])
        c = B.sub(x.b, int(self.space.h(u, w)))
        return self.central(c) @ self.diagonal(p) @ self.translation(q)

    def closed_form(self, x: HeisenbergElement):
        """Same operator from the one-line formula, used as a cross-check."""
        X, B = self.X, self.space.ring
        p, q = self._split(x)
        a = X.vectors
        arg = B.add(B.add(x.b, int(X.star_dot(p, q))), X.star_dot(B.mul(B.scalar(2), p)[None, :], a))
        perm = X.encode(X.add(a, q[None, :]))
        return Operator.phases(self.n, perm, self.beta.exponent(arg))

    def character(self, x):
        return self(x).trace()


def schrodinger(space, beta, x):
    return SchrodingerModel(space, beta)(x)


def chi_beta(space: HermitianSpace, beta: AdditiveCharacter, limit=10 ** 5):
    """Character table of S over H plus the irreducibility certificate.

    Returns dict with "elements", "values" (Cyclotomic), "degree" and
    "norm" = sum |chi|^2, which equals |H| iff S is irreducible.
    """
    S = SchrodingerModel(space, beta)
    elems = heisenberg_elements(space, limit)
    vals = [S(x).trace() for x in elems]
    F = field(beta.n)
    coords = np.array([v.coeffs for v in vals], dtype=np.int64)
    conj = coords @ F.conj_mat
    total = F.cmul(coords, conj).sum(axis=0)
    norm = Cyclotomic(beta.n, total.tolist(), vals[0].den ** 2)
    degree = vals[elems.index(identity(space))]
    return {"elements": elems, "values": vals, "degree": degree, "norm": norm, "order": len(elems)}


def submodule(space: HermitianSpace, gens, limit=10 ** 4):
    """Right B-submodule of V generated by ``gens``, as a set of vector indices."""
    B = space.ring
    VS = ColumnSpace(B, 2 * space.m)
    if VS.dim > limit:
        raise ValueError("V too large")
    elems = B.elements()
    span = {0}
    for g in gens:
        g = np.asarray(g, dtype=np.int64)
        multiples = VS.encode(np.asarray(B.mul(g[None, :], elems[:, None]), dtype=np.int64))
        new = set()
        for s in span:
            sv = VS.decode(s)
            new.update(VS.encode(VS.add(sv[None, :], VS.decode(multiples))).tolist())
        span |= new
    return span


def perp_check(space: HermitianSpace, gens, beta: AdditiveCharacter, limit=10 ** 4):
    """Compute N^perp and N^dagger for N = <gens> and test N^perp = N^dagger, |V| = |N||N^perp|."""
    B = space.ring
    VS = ColumnSpace(B, 2 * space.m)
    N = sorted(submodule(space, gens, limit))
    V = VS.vectors
    Nv = VS.decode(np.array(N, dtype=np.int64))
    H = space.h(V[:, None, :], Nv[None, :, :])  # h(u, v), u in V, v in N
    perp = np.flatnonzero(np.all(H == 0, axis=1))
    twoH = np.asarray(B.mul(B.scalar(2), H))
    dagger = np.flatnonzero(np.all(beta.exponent(twoH) == 0, axis=1))
    equal = bool(np.array_equal(perp, dagger))
    return {
        "N_size": len(N),
        "perp_size": int(len(perp)),
        "perp_equals_dagger": equal,
        "cardinality_identity": len(N) * len(perp) == VS.dim,
        "pass": equal and len(N) * len(perp) == VS.dim,
        "perp": perp.tolist(),
    }


def _monomial_tables(space, S, elems):
    """perm[i, a] and beta-exponent[i, a] of S(x_i) e_a from the closed form."""
    X, B = S.X, space.ring
    m = space.m
    U = np.array([x.u for x in elems], dtype=np.int64)
    b = np.array([x.b for x in elems], dtype=np.int64)
    p, q = U[:, :m], U[:, m:]
    a = X.vectors
    two_p = B.mul(B.scalar(2), p)
    arg = B.add(B.add(b, X.star_dot(p, q))[:, None], X.star_dot(two_p[:, None, :], a[None, :, :]))
    perm = X.encode(X.add(a[None, :, :], q[:, None, :]))
    return perm, S.beta.exponent(arg)


def verify_schrodinger(space, beta, *, exhaustive_limit=10 ** 3, samples=1000, seed=0):
    """Multiplicativity of S, closed-form agreement, and the character certificates.

    In exhaustive mode every S(x) is checked against the closed form, and
    multiplicativity is then checked on the closed-form monomial tables.
    """
    S = SchrodingerModel(space, beta)
    rng = np.random.default_rng(seed)
    H_size = space.ring.size ** (2 * space.m + 1)
    if H_size <= exhaustive_limit:
        elems = heisenberg_elements(space)
        mode = "exhaustive"
        checked = len(elems) ** 2
        closed = all(S.closed_form(x) == S(x) for x in elems)
        perm, ex = _monomial_tables(space, S, elems)
        B = space.ring
        VS = ColumnSpace(B, 2 * space.m)
        U = np.array([x.u for x in elems], dtype=np.int64)
        bs = np.array([x.b for x in elems], dtype=np.int64)
        uidx = VS.encode(U)
        where = np.empty(len(elems), dtype=np.int64)
        where[bs * VS.dim + uidx] = np.arange(len(elems))
        n = S.n
        mult = True
        for i in range(len(elems)):
            # (b, u)(c, v) = (b + c + h(u, v), u + v)
            hb = B.add(B.add(bs[i], bs), space.h(U[i][None, :], U))
            k = where[hb * VS.dim + VS.encode(VS.add(U[i][None, :], U))]
            # S(x_i) S(x_j) e_a = beta(e_j[a] + e_i[perm_j[a]]) e_{perm_i[perm_j[a]]}
            lhs_perm = perm[i][perm]
            lhs_exp = (ex + ex[i][perm]) % n
            if not (np.array_equal(lhs_perm, perm[k]) and np.array_equal(lhs_exp, ex[k] % n)):
                mult = False
                break
    else:
        mode = f"sampled({samples})"
        checked = samples
        mult = closed = True
        for _ in range(samples):
            x, y = random_element(space, rng), random_element(space, rng)
            if S(x) @ S(y) != S(h_mul(space, x, y)):
                mult = False
            if S.closed_form(x) != S(x):
                closed = False
    return {"multiplicative": mult, "closed_form": closed, "mode": mode, "checked": checked}
