"""Subgroups of SL^eps_*(2, A): closures, isometry enumeration, index reports."""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field

import numpy as np

from .characters import NotFound
from .hermitian import ColumnSpace, HermitianSpace, epsilon_symmetric_set
from .rings import MatrixRing, NotUnit, det_mod_p, flatten, ring, units_mask

CLOSURE_LIMIT = int(os.environ.get("WEILREP_CLOSURE_LIMIT", 10 ** 6))
NODE_LIMIT = int(os.environ.get("WEILREP_NODE_LIMIT", 10 ** 7))


class NotInSSL(LookupError):
    """The matrix is not a product of Bruhat elements."""


class Encoder:
    """Injective integer (or bytes) codes for 2m x 2m matrices."""

    def __init__(self, base_size, m2):
        self.entries = m2 * m2
        self.small = base_size ** self.entries < 2 ** 62
        self.radix = base_size ** np.arange(self.entries, dtype=np.int64) if self.small else None

    def many(self, mats):
        flat = np.asarray(mats, dtype=np.int64).reshape(-1, self.entries)
        if self.small:
            return (flat @ self.radix).tolist()
        return [r.tobytes() for r in flat]

    def one(self, mat):
        return self.many(np.asarray(mat)[None])[0]


@dataclass
class Generator:
    kind: str
    param: np.ndarray | None
    matrix: np.ndarray

    def label(self):
        return self.kind if self.param is None else [self.kind, np.asarray(self.param).tolist()]


def bruhat_generators(space: HermitianSpace, extra=()):
    """omega, omega^-1, all h_t, all u_r, then ``extra`` matrices, in that order."""
    gens = [Generator("omega", None, space.omega().matrix),
            Generator("omega_inv", None, space.omega_inv().matrix)]
    for t in space.units:
        gens.append(Generator("h", t, space.h_el(t).matrix))
    for r in space.eps_sym:
        gens.append(Generator("u", r, space.u_el(r).matrix))
    for i, x in enumerate(extra):
        gens.append(Generator(f"extra{i}", None, np.asarray(x, dtype=np.int64)))
    return gens


@dataclass
class GroupClosure:
    space: HermitianSpace
    generators: list
    elements: list
    parent: list  # (parent index, generator index) per element
    index: dict = dc_field(repr=False)
    encoder: Encoder = dc_field(repr=False)
    conflicts: int = 0
    edges: int = 0

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, X):
        return self.encoder.one(X) in self.index

    def find(self, X):
        return self.index.get(self.encoder.one(X))

    def word(self, i):
        """Generator indices g_1 .. g_k with element i = g_1 g_2 ... g_k."""
        out = []
        while self.parent[i][0] >= 0:
            p, g = self.parent[i]
            out.append(g)
            i = p
        return out

    def word_labels(self, i):
        return [self.generators[g].label() for g in self.word(i)]

    def evaluate(self, word):
        A2 = self.space.A2
        out = A2.identity()
        for g in word:
            out = A2.mul(out, self.generators[g].matrix)
        return out

    def matrices(self):
        return np.stack(self.elements)


def closure(space: HermitianSpace, extra=(), *, generators=None, callback=None, limit=None):
    """BFS over left multiplication by the generators.

    ``callback(new_index, gen_index, old_index, is_new)`` is called on every
    edge g * x; ``is_new`` tells whether g * x was first reached by this edge.
    """
    limit = CLOSURE_LIMIT if limit is None else limit
    A2 = space.A2
    gens = generators if generators is not None else bruhat_generators(space, extra)
    G = np.stack([g.matrix for g in gens])
    enc = Encoder(space.ring.size, 2 * space.m)
    ident = A2.identity()
    elements, parent = [ident], [(-1, -1)]
    index = {enc.one(ident): 0}
    frontier = [0]
    edges = 0
    chunk = max(1, 2 ** 22 // (len(gens) * G[0].size))
    while frontier:
        nxt = []
        for start in range(0, len(frontier), chunk):
            edges = _expand(frontier[start:start + chunk], elements, G, A2, enc, index, parent, nxt,
                            callback, limit, edges)
        frontier = nxt
    return GroupClosure(space, gens, elements, parent, index, enc, edges=edges)


def _expand(frontier, elements, G, A2, enc, index, parent, nxt, callback, limit, edges):
    F = np.stack([elements[i] for i in frontier])
    prods = A2.mul(G[:, None], F[None])  # (ng, nf, 2m, 2m)
    codes = enc.many(prods)
    nf = len(frontier)
    for fi, x in enumerate(frontier):
        for gi in range(len(G)):
            code = codes[gi * nf + fi]
            j = index.get(code)
            edges += 1
            if j is None:
                j = len(elements)
                if j >= limit:
                    raise RuntimeError(f"closure exceeded {limit} elements")
                index[code] = j
                elements.append(prods[gi, fi])
                parent.append((x, gi))
                nxt.append(j)
                if callback:
                    callback(j, gi, x, True)
            elif callback:
                callback(j, gi, x, False)
    return edges


def weil_closure(space, gens_ops, generators=None):
    """Closure that carries operators and counts rediscovery conflicts.

    ``gens_ops[i]`` is the operator of generator i.  Returns (closure, ops, conflicts).
    """
    ops = [None]
    first = gens_ops[0]
    from .operators import Operator

    ops[0] = Operator.identity(first.n, first.d)
    state = {"conflicts": 0, "checked": 0}

    def cb(j, gi, x, new):
        prod = gens_ops[gi] @ ops[x]
        if new:
            ops.append(prod)
        else:
            state["checked"] += 1
            if prod != ops[j]:
                state["conflicts"] += 1

    C = closure(space, generators=generators, callback=cb)
    C.conflicts = state["conflicts"]
    return C, ops, state


# --- isometry enumeration -------------------------------------------------------

def enumerate_isometries(space: HermitianSpace, candidates=None, node_limit=None):
    """All X with X^* J X = J, built column by column.

    ``candidates[j]`` optionally restricts column j (vectors of length 2m);
    by default every column ranges over all of V.
    """
    node_limit = NODE_LIMIT if node_limit is None else node_limit
    m2 = 2 * space.m
    if candidates is None:
        V = space.vectors_V(limit=10 ** 6)
        candidates = [V] * m2
    J = space.J
    results = []
    nodes = [0]

    def extend(cols):
        j = len(cols)
        if j == m2:
            results.append(np.stack(cols, axis=1))
            return
        cand = candidates[j]
        ok = np.asarray(space.h(cand, cand)) == J[j, j]
        for i, ci in enumerate(cols):
            ok &= np.asarray(space.h(ci[None, :], cand)) == J[i, j]
        for v in cand[ok]:
            nodes[0] += 1
            if nodes[0] > node_limit:
                raise RuntimeError(f"backtracking exceeded {node_limit} nodes")
            extend(cols + [v])

    extend([])
    return results


def isometry_order_formula(q, m):
    """2 q^{m(m-1)} (q^m - 1) prod_{i<m} (q^{2i} - 1): order of the split O_{2m}(q)."""
    out = 2 * q ** (m * (m - 1)) * (q ** m - 1)
    for i in range(1, m):
        out *= q ** (2 * i) - 1
    return out


def kernel_isometries(space: HermitianSpace):
    """Isometries congruent to 1 modulo the radical (local base rings)."""
    B = space.ring
    m2 = 2 * space.m
    elems = B.elements()
    rad = elems[~np.asarray(B.is_unit(elems))]
    one_plus = np.asarray(B.add(B.one, rad))
    cols = []
    for j in range(m2):
        grids = np.indices((len(rad),) * m2).reshape(m2, -1).T
        vecs = rad[grids]
        vecs[:, j] = one_plus[grids[:, j]]
        cols.append(vecs)
    return enumerate_isometries(space, cols)


# --- reflection, coprime search, factorisation -----------------------------------

def reflection_T(space: HermitianSpace):
    """[[k, e], [e, k]] with e the (m, m) matrix unit and k = 1 - e."""
    A = space.A
    e = A.zero()
    e[-1, -1] = space.ring.one
    k = A.sub(A.identity(), e)
    return space.from_blocks(k, e, e, k)


def coprime_find_s(A: MatrixRing, a, c, eps, syms=None):
    """First s in A^{eps-sym} with a + s c a unit, or raise NotFound."""
    B = A.base
    e = B.one if eps == 1 else B.neg(B.one)
    a, c = A.asarray(a), A.asarray(c)
    lhs = A.mul(A.star(a), c)
    rhs = A.mul_scalar_left(B.neg(e), A.mul(A.star(c), a))
    if not A.equal(lhs, rhs):
        raise ValueError("a^* c = -eps c^* a fails")
    syms = epsilon_symmetric_set(A, eps) if syms is None else syms
    cand = A.add(a[None], A.mul(syms, c[None]))
    ok = units_mask(A, cand)
    hit = np.flatnonzero(ok)
    if hit.size == 0:
        raise NotFound("no eps-symmetric s makes a + s c a unit")
    return syms[hit[0]]


def word_product(space, word):
    A2 = space.A2
    out = A2.identity()
    for kind, param in word:
        out = A2.mul(out, space.bruhat(kind, param).matrix)
    return out


def _unit_block_word(space, X):
    """X = omega u_{eps c a^-1} omega^-1 h_a u_{a^-1 b} when a is a unit."""
    A = space.A
    a, b, c, d = space.blocks(X)
    ainv = A.invert(a)
    r = A.mul_scalar_left(space.eps_el, A.mul(c, ainv))
    word = [("omega", None), ("u", r), ("omega_inv", None), ("h", a), ("u", A.mul(ainv, b))]
    try:
        if space.A2.equal(word_product(space, word), X):
            return word
    except (ValueError, NotUnit):
        pass
    return None


def factor_bruhat(space: HermitianSpace, X, closure_obj=None, depth=0, use_closure=True):
    """A word of Bruhat elements [(kind, param), ...] whose product is X."""
    A = space.A
    X = np.asarray(X, dtype=np.int64)
    a, b, c, d = space.blocks(X)
    if A.is_unit(a):
        word = _unit_block_word(space, X)
        if word is not None:
            return word
    if depth < 2:
        try:
            s = coprime_find_s(A, a, c, space.eps, space.eps_sym)
            Y = space.A2.mul(space.u_el(s).matrix, X)
            return [("u", A.neg(s))] + factor_bruhat(space, Y, closure_obj, depth + 1, use_closure)
        except (NotFound, NotInSSL, ValueError):
            pass
        if depth == 0:
            try:
                Y = space.A2.mul(space.omega().matrix, X)
                return [("omega_inv", None)] + factor_bruhat(space, Y, closure_obj, depth + 1, use_closure)
            except NotInSSL:
                pass
    if depth > 0 or not use_closure:
        raise NotInSSL("reduction stalled")
    if closure_obj is None:
        closure_obj = closure(space)
    i = closure_obj.find(X)
    if i is None:
        raise NotInSSL("matrix is not in the Bruhat closure")
    return [(g.kind, g.param) for g in (closure_obj.generators[k] for k in closure_obj.word(i))]


# --- index certificates ----------------------------------------------------------

def _normalises_by_factoring(space, T):
    """T g T^-1 factors into Bruhat elements for every generator g."""
    A2 = space.A2
    Tinv = A2.invert(T)
    for g in bruhat_generators(space):
        try:
            factor_bruhat(space, A2.mul(A2.mul(T, g.matrix), Tinv), use_closure=False)
        except NotInSSL:
            return False
    return True


def _normalises(space, C, T):
    A2 = space.A2
    Tinv = A2.invert(T)
    return all(C.find(A2.mul(A2.mul(T, g.matrix), Tinv)) is not None for g in C.generators)


def index_certificate(space: HermitianSpace, mode="auto"):
    """Orders of SSL and SL, their index, and the reflection-coset checks."""
    report = {"config": {"ring": space.ring.config.to_json(), "m": space.m, "eps": space.eps}}
    T = reflection_T(space)
    T_iso = space.is_isometry(T)
    if mode == "auto":
        mode = "reduction" if space.ring.local and space.ring.config.k > 1 else "enumeration"
    report["mode"] = mode
    if mode == "enumeration":
        C = closure(space)
        SL = enumerate_isometries(space)
        sl_order = len(SL)
        ssl_order = C.order
        report["ssl_closure_valid"] = all(space.is_isometry(x) for x in C.elements)
        T_in = T_iso and C.find(T) is not None
        report["T_is_isometry"] = T_iso
        report["T_in_ssl"] = bool(T_in)
        if T_iso and not T_in:
            C2 = closure(space, extra=[T])
            report["ssl_T_order"] = C2.order
            report["T_normalises_ssl"] = _normalises(space, C, T)
        report["witness_words"] = [C.word_labels(i) for i in range(min(3, C.order))]
    else:
        report.update(_reduction_certificate(space, T))
        sl_order, ssl_order = report["sl_order"], report["ssl_order"]
    report["ssl_order"] = ssl_order
    report["sl_order"] = sl_order
    report["index"] = sl_order // ssl_order if sl_order % ssl_order == 0 else None
    report["lagrange"] = sl_order % ssl_order == 0
    return report


def _reduction_certificate(space, T):
    """|SL| and |SSL| via reduction modulo the maximal ideal of B.

    The kernel (isometries = 1 mod rad) is enumerated and each kernel
    element is factored into Bruhat elements, so it lies in SSL.  The
    residue group is enumerated; Omega(SSL) is the residue Bruhat closure
    and Omega(SL) contains it together with the lifted reflection T.
    """
    B = space.ring
    cfg = B.config
    residue = ring("prime_field" if B.residue == "field_p" else "quadratic_frobenius", cfg.p)
    res_space = HermitianSpace(residue, space.m, space.eps)
    kernel = kernel_isometries(space)
    factored = 0
    for X in kernel:
        word = _unit_block_word(space, X)
        if word is not None:
            factored += 1
    C_res = closure(res_space)
    SL_res = enumerate_isometries(res_space)
    T_res = reflection_T(res_space)
    T_iso = res_space.is_isometry(T_res)
    T_in_res = T_iso and C_res.find(T_res) is not None
    image = closure(res_space, extra=[T_res]).order if T_iso and not T_in_res else C_res.order
    ssl_order = len(kernel) * C_res.order
    return {
        "kernel_order": len(kernel),
        "kernel_in_ssl": factored == len(kernel),
        "residue_ssl_order": C_res.order,
        "residue_sl_order": len(SL_res),
        "reduction_surjective": image == len(SL_res),
        "T_is_isometry": space.is_isometry(T),
        "T_in_ssl": False if not T_in_res else None,
        "ssl_order": ssl_order,
        "sl_order": len(kernel) * len(SL_res) if image == len(SL_res) else None,
        "T_normalises_ssl": _normalises_by_factoring(space, T),
    }


# --- the non-local counterexample ---------------------------------------------

def notlocal_counterexample(q=3):
    """M(2, F_q) with the adjugate involution, m = 1, eps = -1."""
    B = ring("matrix2_adjugate", q)
    space = HermitianSpace(B, 1, -1)
    A = space.A
    E11, E12, E21, E22 = (B.encode(np.eye(4, dtype=np.int64)[i]) for i in range(4))
    a, b, c, d = ([[x]] for x in (E22, E12, E21, E11))
    X = space.from_blocks(np.array(a), np.array(b), np.array(c), np.array(d))
    det_X = det_mod_p(flatten(space.A2, X), q)
    gens = bruhat_generators(space)
    gen_dets = sorted({det_mod_p(flatten(space.A2, g.matrix), q) for g in gens})
    syms = space.eps_sym
    scalars = [B.encode(np.array([l, 0, 0, l])) for l in range(q)]
    sym_is_scalar = sorted(int(s[0, 0]) for s in syms) == sorted(scalars)
    units_hit = [int(r[0, 0]) for r in syms
                 if B.is_unit(B.add(int(a[0][0]), B.mul(int(r[0, 0]), int(c[0][0]))))]
    return {
        "eqelements": space.is_isometry(X),
        "det_X": det_X if det_X <= q // 2 else det_X - q,
        "generator_dets": gen_dets,
        "eps_sym_size": len(syms),
        "eps_sym_scalar": sym_is_scalar,
        "unit_a_plus_rc": len(units_hit),
        "pass": space.is_isometry(X) and (det_X - q) == -1 and gen_dets == [1]
        and len(syms) == q and sym_is_scalar and not units_hit,
    }
