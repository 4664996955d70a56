"""Gauss sums, the sign character mu and Weil operators.

Operators act on X with basis e_a, a in B^m (see :class:`ColumnSpace` for
the index order).  Closed forms on Bruhat elements:

    W(h_T) e_a = mu(T) e_{(T^*)^{-1} a}
    W(u_S) e_a = beta(-eps a^* S a) e_a
    W(omega) e_a = f sum_b beta(2 a^* b) e_b

with f = G(beta)^{-m} (-1)^{(|B|^m - 1)/2} when eps = -1 and f = 1/|B|^(m/2)
when eps = +1.  :func:`weil_general` builds W(g) for an arbitrary isometry
from a common fixed vector and the determinant ratio on X+ and X-.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .characters import AdditiveCharacter, check_primitive
from .cyclotomic import Cyclotomic, det as cdet, field
from .heisenberg import (SchrodingerModel, generating_set, heisenberg_elements,
                         random_element, u_act)
from .hermitian import BruhatElement, ColumnSpace, HermitianSpace, check_relations
from .operators import Operator, _dense_product
from .rings import FiniteRing, MatrixRing, NotUnit, mat_invert

EXHAUSTIVE_LIMIT = 10_000


# --- transversals and mu ----------------------------------------------------

class Transversal:
    """One vector out of each pair {v, -v}, v != 0, in B^m.

    rule "lex": v is chosen iff its index is smaller than that of -v;
    rule "revlex": iff it is larger.
    """

    def __init__(self, X: ColumnSpace, rule="lex"):
        if rule not in ("lex", "revlex"):
            raise ValueError(f"unknown transversal rule {rule!r}")
        self.X, self.rule = X, rule
        idx = np.arange(X.dim)
        neg = X.neg_perm
        self.mask = idx < neg if rule == "lex" else idx > neg
        self.elements = np.flatnonzero(self.mask)

    def check(self):
        X = self.X
        neg = X.neg_perm
        inI = self.mask
        negI = inI[neg]
        return {
            "size": len(self.elements) == (X.dim - 1) // 2,
            "disjoint": not np.any(inI & negI),
            "covers": bool(np.all(inI | negI | (np.arange(X.dim) == 0))),
        }


def _mu_perm(perm, I: Transversal):
    """Sign for the permutation a -> perm[a] of B^m."""
    inI = I.mask
    flips = np.count_nonzero(inI & inI[I.X.neg_perm[perm]])
    return -1 if flips % 2 else 1


def mu(T, I: Transversal, check=True):
    """(-1)^{|{v in I : T v in -I}|} for invertible T."""
    X = I.X
    T = np.asarray(T, dtype=np.int64)
    if check:
        mat_invert(MatrixRing(X.ring, X.m), T)
    return _mu_perm(X.index_of_apply(T), I)


# --- Gauss sums ---------------------------------------------------------------

def _sum_exponents(n, exps):
    counts = np.bincount(np.asarray(exps).ravel() % n, minlength=n)
    return Cyclotomic.from_counts(n, counts)


def gauss_sum(T, beta: AdditiveCharacter, m=None):
    """G_T = sum over b in B^m of beta(b^* T b)."""
    T = np.asarray(T, dtype=np.int64)
    m = T.shape[0] if m is None else m
    X = ColumnSpace(beta.ring, m)
    v = X.vectors
    return _sum_exponents(beta.n, beta.exponent(X.form(v, T, v)))


def gauss_hat(beta: AdditiveCharacter):
    """sum over b in B of beta(b^* b)."""
    R = beta.ring
    b = R.elements()
    return _sum_exponents(beta.n, beta.exponent(R.mul(R.star(b), b)))


def legendre(t, p):
    r = pow(t % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def nu(t, p):
    half = (p - 1) // 2
    return sum(1 for j in range(1, half + 1) if (t * j) % p > half)


def classical_gauss_suite(p):
    """Check G_t = (t/p) G_1 = (-1)^nu(t) G_1 and G_t^2 = (-1)^((p-1)/2) p over F_p."""
    from .rings import ring, is_prime

    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    R = ring("prime_field", p)
    beta = AdditiveCharacter(R, [1], recipe="identity")
    x = np.arange(p)
    G = {t: _sum_exponents(p, (t * x * x) % p) for t in range(1, p)}
    G1 = G[1]
    target = complex(0, math.sqrt(p)) if p % 4 == 3 else complex(math.sqrt(p), 0)
    rows = []
    for t in range(1, p):
        leg = legendre(t, p)
        nv = nu(t, p)
        rows.append({
            "t": t,
            "legendre": leg,
            "nu": nv,
            "gaus2": G[t] == G1 * leg,
            "nu_parity": (-1) ** nv == leg,
            "gaus3": G[t] * G[t] == (-1) ** ((p - 1) // 2) * p,
        })
    emb = G1.embed()
    return {
        "p": p,
        "G1": G1,
        "G1_embedded": emb,
        "embedding_error": abs(emb - target),
        "embedding_ok": abs(emb - target) < 1e-9,
        "rows": rows,
        "pass": abs(emb - target) < 1e-9 and all(r["gaus2"] and r["nu_parity"] and r["gaus3"] for r in rows),
    }


# --- configuration ------------------------------------------------------------

@dataclass
class WeilConfig:
    space: HermitianSpace
    beta: AdditiveCharacter
    rule: str = "lex"
    f: Cyclotomic = dc_field(init=False)

    def __post_init__(self):
        sp, beta = self.space, self.beta
        if beta.ring is not sp.ring:
            raise ValueError("character lives on a different ring")
        if sp.eps == 1 and sp.m % 2:
            raise ValueError("the hermitian Weil module needs even m")
        if not beta.satisfies_a6(sp.eps):
            raise ValueError("beta(b + eps b^*) = 1 fails for this character")
        if not check_primitive(beta).primitive:
            raise ValueError("character is not primitive")
        self.model = SchrodingerModel(sp, beta)
        self.X = sp.X
        self.n = beta.n
        self.d = sp.X.dim
        self.transversal = Transversal(sp.X, self.rule)
        self.f = normalisation(beta, sp.m, sp.eps)
        self.tag = "skew_hermitian" if sp.eps == -1 else "hermitian"
        self._cache = {}

    def mu(self, T, check=True):
        return mu(T, self.transversal, check)


def normalisation(beta, m, eps):
    """f = G(beta)^{-m} (-1)^{(|B|^m-1)/2} (eps = -1) or 1/|B|^{m/2} (eps = +1)."""
    N = beta.ring.size ** m
    if eps == -1:
        return gauss_hat(beta) ** (-m) * (-1) ** ((N - 1) // 2)
    if m % 2:
        raise ValueError("eps = +1 needs even m")
    return Cyclotomic.from_int(beta.n, 1, beta.ring.size ** (m // 2))


# --- closed-form operators ----------------------------------------------------

def _fourier(cfg, sign=1):
    """Dense operator e_a -> sum_b beta(2 sign a^* b) e_b (no scalar)."""
    X, B = cfg.X, cfg.space.ring
    G = X.gram_table()  # G[a, b] = a^* b
    arg = np.asarray(B.mul(B.scalar(2 * sign), G))
    exps = cfg.beta.exponent(arg).T  # row b, column a
    return Operator.from_exponents(cfg.n, exps)


def w_h(cfg, T):
    A = cfg.space.A
    perm = cfg.X.index_of_apply(A.invert(A.star(T)))
    sign = cfg.mu(T)
    return Operator.signed_phases(cfg.n, perm, np.zeros(cfg.d, dtype=np.int64), np.full(cfg.d, sign))


def w_u(cfg, S):
    X, B = cfg.X, cfg.space.ring
    v = X.vectors
    arg = B.mul(B.neg(cfg.space.eps_el), X.form(v, S, v))
    return Operator.phases(cfg.n, np.arange(cfg.d), cfg.beta.exponent(arg))


def w_omega(cfg):
    if "omega" not in cfg._cache:
        cfg._cache["omega"] = _fourier(cfg).scale(cfg.f)
    return cfg._cache["omega"]


def w_omega_inv(cfg):
    """W(omega^{-1}) = W(omega) W(h_eps)."""
    if "omega_inv" not in cfg._cache:
        A = cfg.space.A
        cfg._cache["omega_inv"] = w_omega(cfg) @ w_h(cfg, A.scalar(cfg.space.eps_el))
    return cfg._cache["omega_inv"]


def weil_bruhat(cfg: WeilConfig, g):
    """Closed-form W on a Bruhat element (a :class:`BruhatElement` or (kind, param))."""
    if isinstance(g, BruhatElement):
        kind, param = g.kind, g.param
    else:
        kind, param = g
    if kind == "omega":
        return w_omega(cfg)
    if kind == "omega_inv":
        return w_omega_inv(cfg)
    if kind == "h":
        return w_h(cfg, param)
    if kind == "u":
        if not cfg.space.is_eps_sym(param):
            raise ValueError("u_S needs S + eps S^* = 0")
        return w_u(cfg, param)
    raise ValueError(f"unknown Bruhat kind {kind!r}")


def weil_relations(cfg, **kw):
    """R1-R6 for the closed-form operators."""
    return check_relations(cfg.space, lambda k, p: weil_bruhat(cfg, (k, p)),
                           lambda a, b: a @ b, lambda a, b: a == b, **kw)


# --- g_T, k_T, l_T ------------------------------------------------------------

def g_matrix(space, T):
    A = space.A
    return space.from_blocks(A.identity(), A.zero(), T, A.identity())


def l_matrix(space, T):
    A = space.A
    return space.from_blocks(A.zero(), A.neg(A.invert(T)), T, A.zero())


def projective_gT(cfg: WeilConfig, T):
    """P(g_T), c(g_T), W(l_T) and the decomposition cross-check.

    P(g_T) e_a = sum_b beta(q(b - a)) e_b with q(x) = x^*(-eps T^{-1})x,
    c(g_T) = (sum_b beta(q(b)))^{-1} and
    W(l_T) e_a = c sum_b beta(2 eps a^* T^{-1} b) e_b.
    """
    space, X, B = cfg.space, cfg.X, cfg.space.ring
    A = space.A
    T = np.asarray(T, dtype=np.int64)
    if not space.is_eps_sym(T):
        raise ValueError("g_T needs T + eps T^* = 0")
    Tinv = A.invert(T)
    Q = A.mul_scalar_left(B.neg(space.eps_el), Tinv)
    v = X.vectors
    qvals = cfg.beta.exponent(X.form(v, Q, v))  # q(x) for every x
    diff = X.encode(X.add(v[None, :, :], X.neg(v)[:, None, :]))  # diff[a, b] = b - a
    P = Operator.from_exponents(cfg.n, qvals[diff].T)
    total = _sum_exponents(cfg.n, qvals)
    if total.is_zero():
        raise AssertionError("sum defining c(g_T) vanished")
    c = total.inverse()
    W_g = P.scale(c)
    G = X.gram_table()
    arg = X.star_dot(v[:, None, :], X.apply(Tinv, v)[None, :, :])  # a^* T^{-1} b
    arg = B.mul(B.scalar(2), B.mul(space.eps_el, arg))
    W_l = Operator.from_exponents(cfg.n, cfg.beta.exponent(arg).T).scale(c)
    k = weil_bruhat(cfg, ("u", A.neg(Tinv)))
    return {
        "P": P,
        "c": c,
        "c_inverse": total,
        "W_g": W_g,
        "W_l": W_l,
        "decomposition": k @ W_g @ k == W_l,
        "matrix_decomposition": space.A2.equal(
            space.A2.mul(space.A2.mul(space.u_el(A.neg(Tinv)).matrix, g_matrix(space, T)),
                         space.u_el(A.neg(Tinv)).matrix),
            l_matrix(space, T)),
    }


# --- general construction -----------------------------------------------------

def _model(cfg):
    return cfg.model if isinstance(cfg, WeilConfig) else cfg


def fixed_vector(cfg, g):
    """Nonzero common fixed vector of S(0, g u), u in M, and the fixed-space dimension."""
    S = _model(cfg)
    space, X, B, beta = S.space, S.X, S.space.ring, S.beta
    a, b, c, d = space.blocks(g)
    p = X.vectors
    ap, cp = X.apply(a, p), X.apply(c, p)
    n = beta.n
    # dim of the fixed space = trace of the averaging projector
    zero_c = np.all(cp == 0, axis=1)
    exps = beta.exponent(X.star_dot(B.mul(B.scalar(2), ap)[zero_c][:, None, :], p[None, :, :]))
    trace = _sum_exponents(n, exps) * Cyclotomic.from_int(n, 1, X.dim)
    if trace != 1:
        raise AssertionError(f"common fixed space has dimension {trace}, expected 1")
    base = beta.exponent(X.star_dot(ap, cp))  # beta((ap)^*(cp))
    for col in range(X.dim):
        c0 = X.decode(col)
        target = X.encode(X.add(c0[None, :], cp))
        e = (base + beta.exponent(X.star_dot(B.mul(B.scalar(2), ap), np.broadcast_to(c0, ap.shape)))) % n
        counts = np.zeros((X.dim, n), dtype=np.int64)
        np.add.at(counts, (target, e), 1)
        coords = counts @ field(n).pow
        if coords.any():
            return coords
    raise AssertionError("averaging projector vanished")


def _normalise_vector(n, coords):
    """Scale so that the first nonzero entry is 1; returns (numerators, den)."""
    first = int(np.flatnonzero(np.any(coords != 0, axis=1))[0])
    inv = Cyclotomic(n, coords[first].tolist()).inverse()
    F = field(n)
    num = F.cmul(coords, np.asarray(inv.coeffs, dtype=np.int64))
    return num, inv.den


def _shift_phase(S, P_vec, Q_vec, x_num):
    """Coordinates of S(0, (P; Q)) x."""
    X, B, beta = S.X, S.space.ring, S.beta
    y = X.vectors
    e = beta.exponent(B.add(int(X.star_dot(P_vec, Q_vec)),
                            X.star_dot(B.mul(B.scalar(2), P_vec)[None, :], y)))
    F = field(beta.n)
    out = np.zeros_like(x_num)
    out[X.encode(X.add(y, Q_vec[None, :]))] = F.cmul(F.root(e), x_num)
    return out


def projective_general(cfg, g):
    """P(g) with P(g) e_0 normalised, or the closed forms on U_M."""
    S = _model(cfg)
    space, X, B, beta = S.space, S.X, S.space.ring, S.beta
    A = space.A
    g = np.asarray(g, dtype=np.int64)
    a, b, c, d = space.blocks(g)
    n = beta.n
    if not np.any(c):
        # g = u_{b d^{-1}} h_a: P e_v = beta(h(u v, v)) e_v after e_v -> e_{d v}
        Sm = A.mul(b, A.invert(d))
        v = X.vectors
        dv = X.apply(d, v)
        zero = np.zeros_like(dv)
        # u_S maps (0; dv) to (S dv; dv)
        uw = np.concatenate([X.apply(Sm, dv), dv], axis=1)
        nv = np.concatenate([zero, dv], axis=1)
        exps = beta.exponent(space.h(uw, nv))
        return Operator.phases(n, X.encode(dv), exps), "closed-form"
    x0 = fixed_vector(S, g)
    x0, den = _normalise_vector(n, x0)
    v = X.vectors
    bv, dv = X.apply(b, v), X.apply(d, v)
    num = np.zeros((X.dim, X.dim, field(n).L), dtype=np.int64)
    for col in range(X.dim):
        num[:, col] = _shift_phase(S, bv[col], dv[col], x0)
    return Operator.dense(n, num, den), "fixed-point"


def parity_split(P: Operator, X: ColumnSpace, I: Transversal):
    """Matrices of P on X+ (basis e_0, e_v + e_-v) and X- (basis e_v - e_-v), v in I."""
    neg = X.neg_perm
    reps = np.concatenate([[0], I.elements])
    num = P.dense_num()
    plus = num[np.ix_(reps, reps)].copy()
    plus[:, 1:] += num[np.ix_(reps, neg[I.elements])]
    minus = num[np.ix_(I.elements, I.elements)] - num[np.ix_(I.elements, neg[I.elements])]
    return plus, minus, P.den


def _cdet(n, num, den):
    if num.shape[0] == 0:
        return Cyclotomic.from_int(n, 1)
    rows = [[Cyclotomic(n, num[i, j].tolist(), den) for j in range(num.shape[1])] for i in range(num.shape[0])]
    return cdet(rows)


def correcting_scalar(P: Operator, X: ColumnSpace, I: Transversal):
    """c = det(P|X-) / det(P|X+)."""
    plus, minus, den = parity_split(P, X, I)
    # invariance of X+ and X- under P
    neg = X.neg_perm
    num = P.dense_num()
    if not np.array_equal(num[neg][:, neg], num):
        raise AssertionError("P does not commute with e_v -> e_-v")
    return _cdet(P.n, minus, den) / _cdet(P.n, plus, den)


def weil_general(cfg, g, rule="lex"):
    """W(g) = c(g) P(g) for any isometry g."""
    S = _model(cfg)
    g = np.asarray(g, dtype=np.int64)
    if not S.space.is_isometry(g):
        raise ValueError("g is not an isometry")
    P, how = projective_general(S, g)
    I = cfg.transversal if isinstance(cfg, WeilConfig) else Transversal(S.X, rule)
    c = correcting_scalar(P, S.X, I)
    return P.scale(c)


# --- verification -------------------------------------------------------------

def verify_intertwining(cfg, g, Wg: Operator, *, exhaustive_limit=EXHAUSTIVE_LIMIT,
                        random=1000, seed=0, elements=None):
    """W(g) S(x) = S(^g x) W(g) for x in H (exhaustive, or generators plus random draws)."""
    S = _model(cfg)
    space = S.space
    g = np.asarray(g, dtype=np.int64)
    H_size = space.ring.size ** (2 * space.m + 1)
    if elements is not None:
        xs, mode = list(elements), "given"
    elif H_size <= exhaustive_limit:
        xs, mode = heisenberg_elements(space), "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        xs = generating_set(space) + [random_element(space, rng) for _ in range(random)]
        mode = f"generators+sampled({random})"
    failures = 0
    for x in xs:
        if Wg @ S(x) != S(u_act(space, g, x)) @ Wg:
            failures += 1
    return {"pass": failures == 0, "mode": mode, "checked": len(xs), "failures": failures}


def theorem_suite_mu(cfg_or_parts, *, exhaustive_limit=EXHAUSTIVE_LIMIT, samples=1000, seed=0):
    """Gauss-sum identities tied to mu, plus mu(T) = mu(T^*).

    eps = -1: G_T = G_{T^-1} = mu(T) G_1 and G_T^2 = (-1)^((|N|-1)/2) |N| for T^* = T.
    eps = +1: G_T = mu(-T^-1) |B|^(m/2) = mu(T) |B|^(m/2) for T^* = -T.
    """
    if isinstance(cfg_or_parts, WeilConfig):
        space, beta, I = cfg_or_parts.space, cfg_or_parts.beta, cfg_or_parts.transversal
    else:
        space, beta = cfg_or_parts
        I = Transversal(space.X)
    A, m, eps = space.A, space.m, space.eps
    N = space.X.dim
    rng = np.random.default_rng(seed)
    out = {"eps": eps, "m": m}
    Ts = space.sym_units
    rows = []
    if eps == -1:
        G1 = gauss_sum(A.identity(), beta)
        sign = (-1) ** ((N - 1) // 2)
        for T in Ts:
            GT = gauss_sum(T, beta)
            Ginv = gauss_sum(A.invert(T), beta)
            mT = mu(T, I)
            rows.append({"T": T.tolist(), "mu": mT, "sum_matches_mu": GT == Ginv and GT == G1 * mT,
                         "square": GT * GT == sign * N})
        out["case"] = "skew"
        out["pass_main"] = bool(rows) and all(r["sum_matches_mu"] and r["square"] for r in rows)
    else:
        if m % 2:
            raise ValueError("eps = +1 needs even m")
        scale = space.ring.size ** (m // 2)
        for T in Ts:
            GT = gauss_sum(T, beta)
            mT = mu(T, I)
            mneg = mu(A.neg(A.invert(T)), I)
            rows.append({"T": T.tolist(), "mu": mT, "G": GT.to_json(),
                         "sum_matches_mu": GT == scale * mneg and GT == scale * mT})
        out["case"] = "hermitian"
        out["pass_main"] = bool(rows) and all(r["sum_matches_mu"] for r in rows)
        nq = m // 2
        Q = A.zero()
        Q[:nq, nq:] = A.neg(A.scalar(space.ring.one))[:nq, :nq]
        Q[nq:, :nq] = A.scalar(space.ring.one)[:nq, :nq]
        out["mu(-Q)"] = mu(A.neg(Q), I)
        out["mu(-1)"] = mu(A.neg(A.identity()), I)
    out["rows"] = rows
    out["qualifying"] = len(rows)
    # mu(T) = mu(T^*)
    try:
        units = space.units
        if len(units) > exhaustive_limit:
            raise ValueError
        pool, mode = units, "exhaustive"
    except ValueError:
        pool = [A.random_unit(rng) for _ in range(samples)]
        mode = f"sampled({samples})"
    bad = sum(1 for T in pool if mu(T, I, check=False) != mu(A.star(T), I, check=False))
    out["adjoint_invariance"] = {"pass": bad == 0, "mode": mode, "checked": len(pool), "failures": bad}
    out["pass"] = out["pass_main"] and bad == 0
    return out


def mu_independence(A: MatrixRing, units=None):
    """mu under the lex and revlex transversals on a set of invertible matrices."""
    X = ColumnSpace(A.base, A.m)
    I1, I2 = Transversal(X, "lex"), Transversal(X, "revlex")
    units = A.units() if units is None else units
    diff = sum(1 for T in units if mu(T, I1, check=False) != mu(T, I2, check=False))
    return {"pass": diff == 0, "checked": len(units), "disagreements": diff,
            "transversals_valid": all(I1.check().values()) and all(I2.check().values())}


def mu_homomorphism(A: MatrixRing, units=None, limit=EXHAUSTIVE_LIMIT, rng=None, samples=1000):
    X = ColumnSpace(A.base, A.m)
    I = Transversal(X)
    units = A.units() if units is None else units
    vals = {A.key(T): mu(T, I, check=False) for T in units}
    if len(units) ** 2 <= limit:
        pairs = [(S, T) for S in units for T in units]
        mode = "exhaustive"
    else:
        rng = rng or np.random.default_rng(0)
        pairs = [(units[rng.integers(len(units))], units[rng.integers(len(units))]) for _ in range(samples)]
        mode = f"sampled({samples})"
    bad = sum(1 for S, T in pairs if vals[A.key(A.mul(S, T))] != vals[A.key(S)] * vals[A.key(T)])
    return {"pass": bad == 0, "mode": mode, "checked": len(pairs), "failures": bad}


# --- homomorphism over a finite set of group elements -------------------------

def _matrix_codes(mats, base_size):
    flat = np.asarray(mats, dtype=np.int64).reshape(len(mats), -1)
    if base_size ** flat.shape[1] < 2 ** 62:
        radix = base_size ** np.arange(flat.shape[1], dtype=np.int64)
        return flat @ radix, lambda x: int(np.asarray(x).reshape(-1) @ radix)
    return [r.tobytes() for r in flat], lambda x: np.asarray(x, dtype=np.int64).reshape(-1).tobytes()


def homomorphism_check(A2: MatrixRing, mats, ops):
    """W(g h) = W(g) W(h) for all pairs from a multiplicatively closed list."""
    mats = np.asarray(mats, dtype=np.int64)
    codes, code_of = _matrix_codes(mats, A2.base.size)
    where = {int(c) if not isinstance(c, bytes) else c: i for i, c in enumerate(codes)}
    N = len(ops)
    n, d = ops[0].n, ops[0].d
    F = field(n)
    nums = np.stack([op.dense_num() for op in ops])  # (N, d, d, L)
    dens = [op.den for op in ops]
    big = int(np.abs(nums).max(initial=0)) * max(dens) ** 2 * d * F.L * F.L
    stacked = nums.transpose(1, 0, 2, 3).reshape(d, N * d, F.L)
    failures, missing = 0, 0
    for i in range(N):
        prods = A2.mul(mats[i][None], mats)
        prod = _dense_product(F, nums[i], stacked).reshape(d, N, d, F.L).transpose(1, 0, 2, 3)
        for j in range(N):
            k = where.get(code_of(prods[j]))
            if k is None:
                missing += 1
                continue
            if big < 2 ** 62:
                lhs = prod[j] * dens[k]
                rhs = nums[k] * (dens[i] * dens[j])
            else:
                lhs = prod[j].astype(object) * dens[k]
                rhs = nums[k].astype(object) * (dens[i] * dens[j])
            if not np.array_equal(lhs, rhs):
                failures += 1
    return {"pass": failures == 0 and missing == 0, "checked": N * N, "failures": failures,
            "not_closed": missing}
