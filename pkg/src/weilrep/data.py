"""Abstract data (P, chi, gamma, alpha, f), its axioms, and the operators R.

All of chi, gamma and alpha take values in the 2n-th roots of unity and are
stored as exponents modulo 2n, where n is the (odd) additive exponent of B:
zeta_{2n}^e with zeta_{2n}^2 = zeta_n and zeta_{2n}^n = -1.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .characters import AdditiveCharacter, find_character
from .cyclotomic import Cyclotomic, field, root_of_unity
from .hermitian import ColumnSpace, HermitianSpace, check_relations
from .operators import Operator
from .rings import FiniteRing
from .weil import Transversal, WeilConfig, mu, normalisation, weil_bruhat

EXHAUSTIVE_LIMIT = 10_000
SAMPLES = 1_000


@lru_cache(maxsize=None)
def _pow2(n):
    """Reduced coordinates of zeta_{2n}^e for e in Z/2n."""
    return np.array([root_of_unity(n, e).coeffs for e in range(2 * n)], dtype=np.int64)


def _sum2(n, exps):
    counts = np.bincount(np.asarray(exps).ravel() % (2 * n), minlength=2 * n)
    return Cyclotomic(n, (counts @ _pow2(n)).tolist())


@dataclass
class AbstractData:
    space: HermitianSpace
    P: ColumnSpace
    chi: np.ndarray  # chi[x, y] as exponent mod 2n
    gamma: Callable  # gamma(b) -> exponents mod 2n over P
    alpha: Callable  # alpha(t) -> exponent mod 2n
    f: Cyclotomic
    n: int
    label: str = "canonical"

    @property
    def two_n(self):
        return 2 * self.n

    def with_f(self, f, label):
        return dataclasses.replace(self, f=f, label=label)

    def with_alpha(self, alpha, label):
        return dataclasses.replace(self, alpha=alpha, label=label)


def canonical_data(ring_or_space, m=None, eps=None, beta=None, rule="lex"):
    """chi(a, b) = beta(2 a^* b), gamma(S, a) = beta(-eps a^* S a), alpha = mu, f as for W(omega)."""
    if isinstance(ring_or_space, HermitianSpace):
        space = ring_or_space
    else:
        space = HermitianSpace(ring_or_space, m, eps)
    B, m, eps = space.ring, space.m, space.eps
    if eps == 1 and m % 2:
        raise ValueError("eps = +1 needs even m")
    beta = find_character(B, eps) if beta is None else beta
    X = space.X
    n = beta.n
    G = X.gram_table()
    chi = (2 * beta.exponent(B.mul(B.scalar(2), G))) % (2 * n)
    v = X.vectors
    neg_eps = B.neg(space.eps_el)

    def gamma(S):
        return (2 * beta.exponent(B.mul(neg_eps, X.form(v, np.asarray(S), v)))) % (2 * n)

    I = Transversal(X, rule)

    def alpha(t):
        return 0 if mu(t, I, check=False) == 1 else n

    return AbstractData(space, X, chi, gamma, alpha, normalisation(beta, m, eps), n)


def trivial_alpha(data: AbstractData):
    return data.with_alpha(lambda t: 0, "alpha=1")


def scaled_f(data: AbstractData, factor: Cyclotomic):
    return data.with_f(data.f * factor, "f*factor")


# --- quantifier plumbing ----------------------------------------------------------

def _pools(data):
    sp = data.space
    return {
        "units": sp.units,
        "sym": sp.eps_sym,
        "symunits": sp.sym_units,
        "P": np.arange(data.P.dim),
    }


def _tuples(pools, names, limit, samples, rng):
    sizes = [len(pools[n]) for n in names]
    total = int(np.prod(sizes, dtype=object)) if sizes else 1
    if total == 0:
        return [], "exhaustive(empty)"
    if total <= limit:
        idx = np.indices(sizes).reshape(len(sizes), -1).T
        mode = "exhaustive"
    else:
        idx = np.stack([rng.integers(0, s, size=samples) for s in sizes], axis=1)
        mode = f"sampled({samples})"
    return [tuple(pools[n][i] for n, i in zip(names, row)) for row in idx], mode


def _verdict(cases, mode, ok):
    bad = sum(1 for c in cases if not ok(*c))
    return {"pass": bad == 0, "mode": mode, "checked": len(cases), "failures": bad}


# --- axioms -------------------------------------------------------------------------

def verify_axioms(data: AbstractData, *, exhaustive_limit=EXHAUSTIVE_LIMIT, samples=SAMPLES, seed=0):
    """Per-axiom verdicts for chi1, chi2, chi3, gamma1, gamma2, gamma3, cez and c."""
    sp, P, A, B = data.space, data.P, data.space.A, data.space.ring
    rng = np.random.default_rng(seed)
    pools = _pools(data)
    nn = data.two_n
    chi = data.chi
    vecs = P.vectors

    def act(t, x):
        return P.encode(P.apply(t, vecs[x]))

    def ex(names):
        return _tuples(pools, names, exhaustive_limit, samples, rng)

    out = {"seed": seed}

    cases, mode = ex(["units", "P", "P"])
    out["chi1"] = _verdict(cases, mode, lambda t, x, y: (data.alpha(A.mul(A.star(t), t)) + chi[act(t, x), y]) % nn
                           == chi[x, act(A.star(t), y)])

    cases, mode = ex(["P", "P"])
    out["chi2"] = _verdict(cases, mode, lambda x, y: chi[y, x] == (-sp.eps * chi[x, y]) % nn)

    zero_rows = [y for y in range(1, P.dim) if not np.any(chi[:, y] % nn)]
    out["chi3"] = {"pass": not zero_rows, "mode": "exhaustive", "checked": P.dim - 1, "failures": len(zero_rows)}

    cases, mode = ex(["sym", "sym", "P"])
    out["gamma1"] = _verdict(cases, mode, lambda b, c, x: data.gamma(A.add(b, c))[x]
                             == (data.gamma(b)[x] + data.gamma(c)[x]) % nn)

    cases, mode = ex(["sym", "units", "P"])
    out["gamma2"] = _verdict(cases, mode, lambda b, t, x: data.gamma(b)[act(t, x)]
                             == data.gamma(A.mul(A.mul(A.star(t), b), t))[x])

    cases, mode = ex(["symunits", "P", "P"])
    out["gamma3"] = _verdict(cases, mode, lambda t, x, z: data.gamma(t)[P.encode(P.add(vecs[x], vecs[z]))]
                             == (data.gamma(t)[x] + data.gamma(t)[z] + chi[act(t, z), x]) % nn)

    eps_scalar = A.scalar(sp.eps_el)
    lhs = data.f * data.f * P.dim
    out["cez"] = {"pass": lhs == root_of_unity(data.n, data.alpha(eps_scalar)), "mode": "exhaustive",
                  "checked": 1, "failures": 0 if lhs == root_of_unity(data.n, data.alpha(eps_scalar)) else 1}

    out["c"] = _axiom_c(data, pools, exhaustive_limit, samples, rng)
    out["pass"] = all(v["pass"] for k, v in out.items() if isinstance(v, dict))
    return out


def _axiom_c(data, pools, limit, samples, rng):
    """f gamma(-eps t, x) sum_y chi(x, y) gamma(t^-1, y) = alpha(-t)."""
    sp, A, B = data.space, data.space.A, data.space.ring
    T = pools["symunits"]
    d = data.P.dim
    if len(T) == 0:
        return {"pass": True, "mode": "exhaustive(empty)", "checked": 0, "failures": 0}
    if len(T) * d <= limit:
        cases = [(t, x) for t in T for x in range(d)]
        mode = "exhaustive"
    else:
        cases = [(T[rng.integers(len(T))], int(rng.integers(d))) for _ in range(samples)]
        mode = f"sampled({samples})"
    neg_eps = B.neg(sp.eps_el)
    bad = 0
    cache = {}
    for t, x in cases:
        key = A.key(t)
        if key not in cache:
            g_inv = data.gamma(A.invert(t))
            g_neg = data.gamma(A.mul_scalar_left(neg_eps, t))
            cache[key] = (g_inv, g_neg, root_of_unity(data.n, data.alpha(A.neg(t))))
        g_inv, g_neg, rhs = cache[key]
        s = _sum2(data.n, data.chi[x] + g_inv)
        lhs = data.f * root_of_unity(data.n, g_neg[x]) * s
        bad += lhs != rhs
    return {"pass": bad == 0, "mode": mode, "checked": len(cases), "failures": int(bad)}


def lemma_checks(data: AbstractData, *, exhaustive_limit=EXHAUSTIVE_LIMIT, samples=SAMPLES, seed=0):
    """formi, coro and gae on the given data."""
    sp, P, A, B = data.space, data.P, data.space.A, data.space.ring
    rng = np.random.default_rng(seed)
    pools = _pools(data)
    nn = data.two_n
    vecs = P.vectors
    out = {}
    neg_eps = B.neg(sp.eps_el)

    bad, checked = 0, 0
    T = pools["symunits"]
    for t in T:
        g_inv = data.gamma(A.invert(t))
        s_star = _sum2(data.n, data.gamma(A.star(t)))
        s_inv = _sum2(data.n, g_inv)
        g_neg = data.gamma(A.mul_scalar_left(neg_eps, t))
        xs = range(P.dim) if len(T) * P.dim <= exhaustive_limit else rng.integers(0, P.dim, size=5)
        for x in xs:
            lhs = root_of_unity(data.n, g_neg[x]) * _sum2(data.n, data.chi[x] + g_inv)
            checked += 1
            bad += not (lhs == s_star == s_inv)
    out["formi"] = {"pass": bad == 0, "checked": checked, "failures": int(bad),
                    "mode": "exhaustive" if len(T) * P.dim <= exhaustive_limit else "sampled"}

    neg_eps_scalar = A.scalar(neg_eps)
    bad = sum(1 for t in T
              if data.alpha(A.mul(t, t)) != data.alpha(neg_eps_scalar)
              or data.alpha(A.star(t)) != data.alpha(A.invert(t)))
    out["coro"] = {"pass": bad == 0, "checked": len(T), "failures": bad, "mode": "exhaustive"}

    cases, mode = _tuples(pools, ["sym", "P"], exhaustive_limit, samples, rng)
    neg_perm = P.neg_perm
    bad = 0
    for t, x in cases:
        g = data.gamma(t)
        gneg = data.gamma(A.neg(t))
        if g[neg_perm[x]] != g[x] or (g[x] + gneg[x]) % nn != 0:
            bad += 1
    out["gae"] = {"pass": bad == 0, "checked": len(cases), "failures": bad, "mode": mode}
    out["pass"] = all(v["pass"] for v in out.values())
    return out


# --- the operators R ------------------------------------------------------------------

def _root_ops(n, perm, exps2):
    return Operator.monomial(n, perm, _pow2(n)[np.asarray(exps2) % (2 * n)])


def R_on_bruhat(data: AbstractData, g):
    """R(h_t) e_x = alpha(t) e_{(t^*)^-1 x}, R(u_b) e_x = gamma(b, x) e_x, R(omega) e_x = f sum chi(x, y) e_y."""
    kind, param = (g.kind, g.param) if hasattr(g, "kind") else g
    A, P, n = data.space.A, data.P, data.n
    if kind == "h":
        perm = P.index_of_apply(A.invert(A.star(param)))
        return _root_ops(n, perm, np.full(P.dim, data.alpha(param)))
    if kind == "u":
        return _root_ops(n, np.arange(P.dim), data.gamma(param))
    if kind == "omega":
        num = _pow2(n)[data.chi.T]  # row y, column x
        return Operator.dense(n, num).scale(data.f)
    if kind == "omega_inv":
        return R_on_bruhat(data, ("omega", None)) @ R_on_bruhat(data, ("h", A.scalar(data.space.eps_el)))
    raise ValueError(f"unknown Bruhat kind {kind!r}")


def R_relations(data: AbstractData, **kw):
    cache = {}

    def ev(kind, param):
        key = (kind, None if param is None else np.asarray(param).tobytes())
        if key not in cache:
            cache[key] = R_on_bruhat(data, (kind, param))
        return cache[key]

    return check_relations(data.space, ev, lambda a, b: a @ b, lambda a, b: a == b, **kw)


def compare_R_W(space: HermitianSpace, beta: AdditiveCharacter | None = None, data=None, *,
                exhaustive_limit=EXHAUSTIVE_LIMIT, samples=SAMPLES, seed=0):
    """Entrywise equality of R (canonical data) and W on Bruhat generators."""
    beta = find_character(space.ring, space.eps) if beta is None else beta
    cfg = WeilConfig(space, beta)
    data = canonical_data(space, beta=beta) if data is None else data
    rng = np.random.default_rng(seed)
    units, syms = space.units, space.eps_sym
    if len(units) + len(syms) <= exhaustive_limit:
        params = [("omega", None), ("omega_inv", None)] + [("h", t) for t in units] + [("u", r) for r in syms]
        mode = "exhaustive"
    else:
        params = [("omega", None), ("omega_inv", None)]
        params += [("h", units[i]) for i in rng.integers(len(units), size=samples)]
        params += [("u", syms[i]) for i in rng.integers(len(syms), size=samples)]
        mode = f"sampled({samples})"
    failures = []
    for kind, p in params:
        if R_on_bruhat(data, (kind, p)) != weil_bruhat(cfg, (kind, p)):
            failures.append(kind if p is None else [kind, np.asarray(p).tolist()])
    return {"pass": not failures, "mode": mode, "checked": len(params), "failures": failures[:5],
            "failure_count": len(failures)}
