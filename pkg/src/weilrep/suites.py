"""Verification suites bundled into JSON-ready verdict dicts.

Each suite returns a dict with a top-level boolean "pass".  Suites that
need a character report ``{"pass": False, "error": ...}`` when the ring
admits no primitive character compatible with eps.
"""

from __future__ import annotations

import numpy as np

from . import data as dmod
from .characters import NotFound, find_character
from .cyclotomic import Cyclotomic
from .groups import (bruhat_generators, closure, enumerate_isometries, index_certificate,
                     notlocal_counterexample, reflection_T, weil_closure)
from .heisenberg import (SchrodingerModel, chi_beta, generating_set, heisenberg_elements,
                         perp_check, u_act, verify_schrodinger)
from .hermitian import ColumnSpace, HermitianSpace, matrix_relations
from .operators import Operator
from .weil import (WeilConfig, homomorphism_check, mu_homomorphism, mu_independence,
                   theorem_suite_mu, verify_intertwining, weil_bruhat, weil_general,
                   weil_relations)

SUITES = ("relations", "intertwining", "mu-theorems", "data-axioms", "compare",
          "schrodinger", "homomorphism", "notlocal")

H_EXHAUSTIVE = 10_000
GENERATOR_LIMIT = 2_000
HOMOMORPHISM_LIMIT = 2_000


def jsonable(x):
    """Plain JSON types for reports (numpy, Cyclotomic and tuples included)."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, Cyclotomic):
        return x.to_json()
    return x


def weil_config(space):
    return WeilConfig(space, find_character(space.ring, space.eps))


def _needs_beta(fn):
    def run(space, **kw):
        try:
            return fn(space, **kw)
        except NotFound as exc:
            return {"pass": False, "error": f"no admissible character: {exc}"}
        except ValueError as exc:
            return {"pass": False, "error": str(exc)}
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _generator_params(space, limit, seed):
    units, syms = space.units, space.eps_sym
    params = [("omega", None), ("omega_inv", None)]
    if len(units) + len(syms) <= limit:
        return params + [("h", t) for t in units] + [("u", r) for r in syms], "exhaustive"
    rng = np.random.default_rng(seed)
    half = limit // 2
    params += [("h", units[i]) for i in rng.integers(len(units), size=half)]
    params += [("u", syms[i]) for i in rng.integers(len(syms), size=half)]
    return params, f"sampled({limit})"


def relations(space, seed=0):
    """R1-R6 for Bruhat matrices and for the closed-form Weil operators."""
    mats = matrix_relations(space, seed=seed)
    out = {"matrices": mats, "seed": seed}
    weil = _needs_beta(lambda sp, seed: weil_relations(weil_config(sp), seed=seed))(space, seed=seed)
    out["weil"] = weil
    ok = all(v["pass"] for v in mats.values())
    if "error" in weil:
        out["error"] = weil["error"]
        ok = False
    else:
        ok = ok and all(v["pass"] for v in weil.values())
    out["pass"] = ok
    return out


@_needs_beta
def intertwining(space, seed=0, generator_limit=GENERATOR_LIMIT, general=True):
    """W(g) S(x) W(g)^-1 = S(^g x) for every Bruhat generator, plus weil_general on omega."""
    cfg = weil_config(space)
    params, gmode = _generator_params(space, generator_limit, seed)
    failures = []
    modes = set()
    for kind, p in params:
        g = space.bruhat(kind, p).matrix
        r = verify_intertwining(cfg, g, weil_bruhat(cfg, (kind, p)), exhaustive_limit=H_EXHAUSTIVE,
                                seed=seed)
        modes.add(r["mode"])
        if not r["pass"]:
            failures.append(kind if p is None else [kind, np.asarray(p).tolist()])
    out = {"pass": not failures, "generators": len(params), "generator_mode": gmode,
           "heisenberg_mode": sorted(modes), "failures": failures[:5], "seed": seed}
    if general:
        om = space.omega().matrix
        same = weil_general(cfg, om) == weil_bruhat(cfg, ("omega", None))
        out["general_omega_matches_closed_form"] = same
        out["pass"] = out["pass"] and same
    return out


@_needs_beta
def mu_theorems(space, seed=0):
    """Gauss-sum identities tied to mu, mu(T) = mu(T^*), transversal independence, multiplicativity."""
    rep = theorem_suite_mu(weil_config(space), seed=seed)
    A = space.A
    units = space.units if len(space.units) <= 10 ** 4 else None
    if units is not None:
        rep["independence"] = mu_independence(A, units)
        rep["homomorphism"] = mu_homomorphism(A, units, rng=np.random.default_rng(seed))
        rep["pass"] = rep["pass"] and rep["independence"]["pass"] and rep["homomorphism"]["pass"]
    rep["seed"] = seed
    return rep


@_needs_beta
def data_axioms(space, seed=0):
    """Axioms and lemmas for the canonical data, and R1-R6 for the operators R."""
    d = dmod.canonical_data(space)
    ax = dmod.verify_axioms(d, seed=seed)
    lm = dmod.lemma_checks(d, seed=seed)
    rel = dmod.R_relations(d, seed=seed)
    ok = ax["pass"] and lm["pass"] and all(v["pass"] for v in rel.values())
    return {"pass": ok, "axioms": ax, "lemmas": lm, "R_relations": rel, "f": d.f, "seed": seed}


@_needs_beta
def compare(space, seed=0):
    """R (canonical data) against W, entry by entry on Bruhat generators."""
    return dmod.compare_R_W(space, seed=seed)


@_needs_beta
def schrodinger(space, seed=0):
    """Multiplicativity of S, the character norm, degree and Bruhat invariance of chi."""
    beta = find_character(space.ring, space.eps)
    rep = verify_schrodinger(space, beta, seed=seed)
    H_size = space.ring.size ** (2 * space.m + 1)
    rep["H_order"] = H_size
    ok = rep["multiplicative"] and rep["closed_form"]
    if H_size <= H_EXHAUSTIVE:
        ch = chi_beta(space, beta)
        rep["degree"] = ch["degree"]
        rep["norm"] = ch["norm"]
        rep["irreducible"] = ch["norm"] == H_size
        rep["degree_ok"] = ch["degree"] == space.X.dim
        rep["invariance"] = character_invariance(space, ch)
        ok = ok and rep["irreducible"] and rep["degree_ok"] and rep["invariance"]["pass"]
        gens = [x.vec() for x in generating_set(space) if any(x.u)]
        N = gens[: space.m * space.ring.r]
        rep["perp"] = {k: v for k, v in perp_check(space, N, beta).items() if k != "perp"}
        ok = ok and rep["perp"]["pass"]
    rep["pass"] = ok
    rep["seed"] = seed
    return rep


def character_invariance(space, ch, generator_limit=GENERATOR_LIMIT):
    """chi(^g x) = chi(x) for every Bruhat generator g and every x in H."""
    elems = ch["elements"]
    VS = ColumnSpace(space.ring, 2 * space.m)
    index = np.array([x.b * VS.dim + int(VS.encode(x.vec())) for x in elems])
    where = np.empty(len(elems), dtype=np.int64)
    where[index] = np.arange(len(elems))
    keys = {}
    ids = np.array([keys.setdefault(v, len(keys)) for v in ch["values"]])
    b = np.array([x.b for x in elems])
    u = np.array([int(VS.encode(x.vec())) for x in elems])
    params, mode = _generator_params(space, generator_limit, 0)
    bad = []
    for kind, p in params:
        perm = VS.index_of_apply(space.bruhat(kind, p).matrix)
        moved = where[b * VS.dim + perm[u]]
        if not np.array_equal(ids[moved], ids):
            bad.append(kind if p is None else [kind, np.asarray(p).tolist()])
    return {"pass": not bad, "generators": len(params), "mode": mode, "failures": bad[:5]}


@_needs_beta
def homomorphism(space, seed=0, limit=HOMOMORPHISM_LIMIT, full_group=True):
    """BFS well-definedness, then W(g h) = W(g) W(h) over SSL via weil_general.

    When T lies outside SSL the whole isometry group is also tested and
    reported under "full_group".
    """
    cfg = weil_config(space)
    gens = bruhat_generators(space)
    gen_ops = [weil_bruhat(cfg, (g.kind, g.param)) for g in gens]
    C, bfs_ops, state = weil_closure(space, gen_ops, generators=gens)
    if C.order > limit:
        return {"pass": False, "error": f"|SSL| = {C.order} exceeds limit {limit}"}
    general = [weil_general(cfg, X) for X in C.elements]
    agree = sum(1 for a, b in zip(general, bfs_ops) if a == b)
    hom = homomorphism_check(space.A2, C.elements, general)
    out = {
        "ssl_order": C.order,
        "bfs_conflicts": state["conflicts"],
        "bfs_rediscoveries": state["checked"],
        "general_matches_bfs": agree == C.order,
        "ssl_homomorphism": hom,
    }
    ok = state["conflicts"] == 0 and agree == C.order and hom["pass"]
    T = reflection_T(space)
    if full_group and space.is_isometry(T) and C.find(T) is None:
        SL = enumerate_isometries(space)
        if len(SL) <= limit:
            ops = [weil_general(cfg, X) for X in SL]
            out["full_group"] = homomorphism_check(space.A2, SL, ops)
            out["full_group"]["order"] = len(SL)
            ok = ok and out["full_group"]["pass"]
    out["pass"] = ok
    return out


def notlocal(space=None, seed=0):
    """The M(2, F_3) counterexample; the given space is ignored."""
    return notlocal_counterexample(3)


def index(space, mode="auto"):
    return index_certificate(space, mode)


RUNNERS = {
    "relations": relations,
    "intertwining": intertwining,
    "mu-theorems": mu_theorems,
    "data-axioms": data_axioms,
    "compare": compare,
    "schrodinger": schrodinger,
    "homomorphism": homomorphism,
    "notlocal": notlocal,
}


def run_suite(name, space, seed=0):
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return RUNNERS[name](space, seed=seed)
