import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weilrep.characters import AdditiveCharacter, find_character
from weilrep.cyclotomic import Cyclotomic
from weilrep.hermitian import ColumnSpace
from weilrep.operators import Operator
from weilrep.rings import matrix_ring, ring
from weilrep.weil import (Transversal, _fourier, classical_gauss_suite, correcting_scalar, gauss_hat,
                          gauss_sum, legendre, mu, mu_homomorphism, mu_independence, nu,
                          projective_general, projective_gT, theorem_suite_mu, verify_intertwining,
                          weil_bruhat, weil_general, weil_relations)

from conftest import space, weil_cfg

ZETA = Cyclotomic.root(3, 1)


def one(n=3, v=1, den=1):
    return Cyclotomic.from_int(n, v, den)


# --- transversal and mu -------------------------------------------------------

@pytest.mark.parametrize("cfg,m", [(("prime_field", 3), 2), (("quadratic_frobenius", 3), 1),
                                   (("integers_mod_pk", 3, 2), 2)])
@pytest.mark.parametrize("rule", ["lex", "revlex"])
def test_transversal_invariants(cfg, m, rule):
    X = ColumnSpace(ring(*cfg), m)
    I = Transversal(X, rule)
    assert len(I.elements) == (X.dim - 1) // 2
    assert all(I.check().values())
    neg = set(X.neg_perm[I.elements].tolist())
    assert not neg & set(I.elements.tolist())
    assert neg | set(I.elements.tolist()) | {0} == set(range(X.dim))


def test_mu_examples():
    A = matrix_ring(ring("prime_field", 3), 1)
    I = Transversal(ColumnSpace(A.base, 1))
    assert mu(A.identity(), I) == 1
    assert mu(A.scalar(2), I) == -1
    assert mu(A.scalar(2), I) ** 2 == mu(A.mul(A.scalar(2), A.scalar(2)), I) == 1
    A2 = matrix_ring(ring("prime_field", 3), 2)
    I2 = Transversal(ColumnSpace(A2.base, 2))
    assert mu(A2.neg(A2.identity()), I2) == (-1) ** ((9 - 1) // 2)


def test_mu_rejects_singular():
    A = matrix_ring(ring("prime_field", 3), 1)
    with pytest.raises(Exception):
        mu(A.zero(), Transversal(ColumnSpace(A.base, 1)))


@pytest.mark.parametrize("cfg,m", [(("prime_field", 3), 2), (("quadratic_frobenius", 3), 1),
                                   (("integers_mod_pk", 3, 2), 1), (("ramified_even", 3, 1), 1)])
def test_mu_independent_of_transversal_and_multiplicative(cfg, m):
    A = matrix_ring(ring(*cfg), m)
    assert mu_independence(A)["pass"]
    assert mu_homomorphism(A)["pass"]


def test_mu_equals_mu_of_adjoint_on_GL2_F3():
    A = matrix_ring(ring("prime_field", 3), 2)
    I = Transversal(ColumnSpace(A.base, 2))
    U = A.units()
    assert len(U) == 48
    assert all(mu(T, I) == mu(A.star(T), I) for T in U)


# --- Gauss sums ------------------------------------------------------------------

def test_gauss_examples():
    b3 = find_character(ring("prime_field", 3), -1)
    G = gauss_sum([[1]], b3)
    assert G == Cyclotomic(3, [1, 2])
    assert abs(G.embed() - 1j * math.sqrt(3)) < 1e-9
    b5 = AdditiveCharacter(ring("prime_field", 5), [1])
    assert abs(gauss_sum([[1]], b5).embed() - math.sqrt(5)) < 1e-9
    assert gauss_hat(b3) == G


def test_gauss_Q_over_F3_is_three():
    R = ring("prime_field", 3)
    beta = find_character(R, 1)
    assert gauss_sum([[0, 2], [1, 0]], beta) == one(3, 3)


def test_classical_suite_examples():
    s5 = classical_gauss_suite(5)
    G = {r["t"]: r for r in s5["rows"]}
    assert G[2]["legendre"] == -1 and G[2]["gaus2"]
    assert nu(1, 7) == 0
    s13 = classical_gauss_suite(13)
    assert s13["G1"] * s13["G1"] == one(13, 13)
    with pytest.raises(ValueError):
        classical_gauss_suite(9)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23]), st.integers(1, 10 ** 4))
def test_euler_criterion_matches_square_count(p, t):
    t = t % p or 1
    squares = {x * x % p for x in range(1, p)}
    assert legendre(t, p) == (1 if t in squares else -1)
    assert (-1) ** nu(t, p) == legendre(t, p)


# --- closed forms ---------------------------------------------------------------

def test_weil_small_examples(sp2_cfg):
    Wu = weil_bruhat(sp2_cfg, ("u", [[1]]))
    assert Wu == Operator.phases(3, [0, 1, 2], [0, 1, 1])
    Wh = weil_bruhat(sp2_cfg, ("h", [[2]]))
    assert Wh == Operator.signed_phases(3, [0, 2, 1], [0, 0, 0], [-1, -1, -1])
    W = weil_bruhat(sp2_cfg, ("omega", None))
    assert W @ W == weil_bruhat(sp2_cfg, ("h", [[2]]))


def test_weil_rejects_odd_hermitian():
    sp = space("quadratic_frobenius", 3, eps=1)
    from weilrep.weil import WeilConfig
    with pytest.raises(ValueError):
        WeilConfig(sp, find_character(sp.ring, 1))


def test_projective_gT_over_F3(sp2_cfg):
    rep = projective_gT(sp2_cfg, [[1]])
    assert rep["c_inverse"] == Cyclotomic(3, [1, 2])
    assert rep["decomposition"] and rep["matrix_decomposition"]
    g = np.array([[1, 0], [1, 1]])
    assert verify_intertwining(sp2_cfg, g, rep["W_g"])["pass"]


def test_projective_gT_over_F3_hermitian_Q():
    cfg = weil_cfg("prime_field", 3, m=2, eps=1)
    rep = projective_gT(cfg, [[0, 2], [1, 0]])
    assert rep["c_inverse"] == one(3, 3)


def test_projective_gT_stretch_decomposition():
    cfg = weil_cfg("quadratic_frobenius", 3)
    for T in cfg.space.sym_units:
        rep = projective_gT(cfg, T)
        assert rep["decomposition"] and rep["matrix_decomposition"]


# --- general construction ----------------------------------------------------------

def test_general_examples(sp2, sp2_cfg):
    assert weil_general(sp2_cfg, np.eye(2, dtype=np.int64)) == Operator.identity(3, 3)
    for t in sp2.units:
        assert weil_general(sp2_cfg, sp2.h_el(t).matrix) == weil_bruhat(sp2_cfg, ("h", t))
    assert weil_general(sp2_cfg, sp2.omega().matrix) == weil_bruhat(sp2_cfg, ("omega", None))


@pytest.mark.parametrize("cfg", [("prime_field", 3), ("quadratic_frobenius", 3), ("integers_mod_pk", 3, 2)])
def test_correcting_scalar_squared_skew(cfg):
    c = weil_cfg(*cfg)
    N = c.d
    for kind in ("omega", "omega_inv"):
        P, _ = projective_general(c, c.space.bruhat(kind).matrix)
        z = correcting_scalar(P, c.X, c.transversal)
        assert z * z == Cyclotomic.from_int(c.n, (-1) ** ((N - 1) // 2), c.space.ring.size)


def test_correcting_scalar_squared_hermitian():
    c = weil_cfg("ramified_even", 3, m=2, eps=1)
    P, _ = projective_general(c, c.space.omega().matrix)
    z = correcting_scalar(P, c.X, c.transversal)
    assert z * z == Cyclotomic.from_int(c.n, 1, c.space.ring.size ** 2)


@pytest.mark.parametrize("cfg", [("prime_field", 3), ("quadratic_frobenius", 3), ("integers_mod_pk", 3, 2)])
def test_fixed_point_operators_match_fourier_kernels(cfg):
    c = weil_cfg(*cfg)

    def proportional(P, F):
        return P.scale(F.entry(0, 0)) == F.scale(P.entry(0, 0))

    P_om, _ = projective_general(c, c.space.omega().matrix)
    P_oi, _ = projective_general(c, c.space.omega_inv().matrix)
    assert proportional(P_om, _fourier(c, 1))   # sum beta(2 a* b) e_b
    assert proportional(P_oi, _fourier(c, -1))  # sum beta(2 eps a* b) e_b


def test_intertwining_and_mutation(sp2, sp2_cfg):
    ident = np.eye(2, dtype=np.int64)
    assert verify_intertwining(sp2_cfg, ident, Operator.identity(3, 3))["pass"]
    for kind, p in [("omega", None), ("omega_inv", None)] + [("h", t) for t in sp2.units] + \
            [("u", r) for r in sp2.eps_sym]:
        W = weil_bruhat(sp2_cfg, (kind, p))
        rep = verify_intertwining(sp2_cfg, sp2.bruhat(kind, p).matrix, W)
        assert rep["pass"] and rep["checked"] == 27
    W = weil_bruhat(sp2_cfg, ("omega", None)).perturbed(0, 1)
    assert not verify_intertwining(sp2_cfg, sp2.omega().matrix, W)["pass"]


@pytest.mark.parametrize("cfg", [("prime_field", 3, 1, None, 1, -1), ("quadratic_frobenius", 3, 1, None, 1, -1),
                                 ("integers_mod_pk", 3, 2, None, 1, -1), ("ramified_even", 3, 1, None, 2, 1),
                                 ("matrix2_adjugate", 3, 1, None, 1, -1)])
def test_weil_relations(cfg):
    rep = weil_relations(weil_cfg(*cfg))
    assert all(v["pass"] for v in rep.values()), rep


# --- theorem suites -------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2])
def test_mu_theorem_skew_over_F3(m):
    rep = theorem_suite_mu(weil_cfg("prime_field", 3, m=m))
    assert rep["pass"] and rep["qualifying"] > 0


def test_mu_theorem_hermitian_over_F3_Q_and_2Q():
    rep = theorem_suite_mu(weil_cfg("prime_field", 3, m=2, eps=1))
    assert rep["pass"]


def test_mu_theorem_hermitian_ramified():
    rep = theorem_suite_mu(weil_cfg("ramified_even", 3, m=2, eps=1))
    assert rep["pass"] and rep["mu(-Q)"] in (1, -1) and rep["mu(-1)"] in (1, -1)
