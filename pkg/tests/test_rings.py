import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weilrep.rings import (FAMILIES, MatrixRing, NotUnit, RingConfig, build_ring, mat_invert,
                           matrix_ring, ring)

SMALL = [
    ("prime_field", 3, 1, None),
    ("prime_field", 7, 1, None),
    ("quadratic_frobenius", 3, 1, None),
    ("integers_mod_pk", 3, 2, None),
    ("galois_ring_frobenius", 3, 2, None),
    ("ramified_even", 3, 1, None),
    ("ramified_even", 3, 2, None),
    ("skew_poly_quotient", 3, 1, 2),
    ("skew_poly_quotient", 3, 1, 3),
    ("matrix2_adjugate", 3, 1, None),
]


def test_prime_field_identity_involution():
    R = ring("prime_field", 3)
    assert R.size == 3
    assert R.star(R.elements()).tolist() == [0, 1, 2]


def test_adjugate_involution_on_matrix_unit():
    R = ring("matrix2_adjugate", 3)
    e12 = R.encode([0, 1, 0, 0])
    assert R.star(e12) == R.encode([0, 2, 0, 0])


def test_skew_relation_t_a_equals_frobenius_a_t():
    R = ring("skew_poly_quotient", 3, s=2)
    F9 = ring("quadratic_frobenius", 3)
    assert R.size == 81
    t = R.encode([0, 0, 1, 0])
    for a in F9.elements():
        a3 = F9.mul(a, F9.mul(a, a))
        lift = lambda x: R.encode(np.concatenate([F9.digits(x), [0, 0]]))
        assert R.mul(t, lift(a)) == R.mul(lift(a3), t)


@pytest.mark.parametrize("cfg", SMALL, ids=lambda c: f"{c[0]}-{c[1]}-{c[2]}-{c[3]}")
def test_ring_axioms_and_involution(cfg):
    R = ring(*cfg)
    rng = np.random.default_rng(1)
    if R.size <= 100:
        x, y, z = (a.ravel() for a in np.meshgrid(*[R.elements()] * 3, indexing="ij"))
    else:
        x, y, z = (R.random(rng, size=10_000) for _ in range(3))
    assert np.array_equal(R.mul(R.mul(x, y), z), R.mul(x, R.mul(y, z)))
    assert np.array_equal(R.mul(x, R.add(y, z)), R.add(R.mul(x, y), R.mul(x, z)))
    assert np.array_equal(R.mul(R.add(x, y), z), R.add(R.mul(x, z), R.mul(y, z)))
    assert np.array_equal(R.mul(R.one, x), x) and np.array_equal(R.mul(x, R.one), x)
    assert np.array_equal(R.star(R.mul(x, y)), R.mul(R.star(y), R.star(x)))
    assert np.array_equal(R.star(R.add(x, y)), R.add(R.star(x), R.star(y)))
    assert np.array_equal(R.star(R.star(x)), x)
    assert R.star(R.one) == R.one
    assert R.is_unit(R.scalar(2))


@pytest.mark.parametrize("cfg", [c for c in SMALL if c[0] != "matrix2_adjugate"])
def test_radical_is_the_non_units_and_an_ideal(cfg):
    R = ring(*cfg)
    e = R.elements()
    assert np.array_equal(~np.asarray(R.is_unit(e)), np.asarray(R.in_radical(e)))
    rad = e[np.asarray(R.in_radical(e))]
    if R.size <= 100:
        assert np.all(R.in_radical(R.add(rad[:, None], rad[None, :])))
        assert np.all(R.in_radical(R.mul(rad[:, None], e[None, :])))
        assert np.all(R.in_radical(R.mul(e[:, None], rad[None, :])))


def _brute_units(R):
    e = R.elements()
    prod = R.mul(e[:, None], e[None, :])
    ok = (prod == R.one) & (prod.T == R.one)
    return set(np.flatnonzero(ok.any(axis=1)).tolist())


def test_unit_counts():
    F3 = ring("prime_field", 3)
    assert F3.units().tolist() == [1, 2]
    Z9 = ring("integers_mod_pk", 3, 2)
    assert len(_brute_units(Z9)) == 6 == len(Z9.units())
    S = ring("skew_poly_quotient", 3, s=3)
    assert len(_brute_units(S)) == 648 == len(S.units())
    const = S.digits(S.elements())[:, :2].any(axis=1)
    assert np.array_equal(const, np.asarray(S.is_unit(S.elements())))


@pytest.mark.parametrize("cfg", SMALL[:7] + SMALL[9:])
def test_unit_predicate_matches_brute_search(cfg):
    R = ring(*cfg)
    assert set(R.units().tolist()) == _brute_units(R)
    for u in R.units():
        v = R.invert(u)
        assert R.mul(u, v) == R.one == R.mul(v, u)


def test_invert_rejects_non_unit():
    with pytest.raises(NotUnit):
        ring("integers_mod_pk", 3, 2).invert(3)


@pytest.mark.parametrize("bad", [
    RingConfig("prime_field", 4), RingConfig("prime_field", 2), RingConfig("skew_poly_quotient", 3, 1, 1),
    RingConfig("prime_field", 3, 2), RingConfig("no_such_family", 3),
])
def test_build_ring_rejects_bad_parameters(bad):
    with pytest.raises(ValueError):
        build_ring(bad)


def test_config_json_roundtrip():
    cfg = RingConfig.from_json({"family": "matrix2_adjugate", "q": 3})
    assert cfg == RingConfig("matrix2_adjugate", 3)
    assert RingConfig.from_json(cfg.to_json()) == cfg
    assert set(FAMILIES) >= {"prime_field", "skew_poly_quotient"}


def test_matrix_involution_over_F9():
    F9 = ring("quadratic_frobenius", 3)
    A = matrix_ring(F9, 2)
    assert A.equal(A.star(A.identity()), A.identity())
    rng = np.random.default_rng(0)
    cube = lambda x: F9.mul(x, F9.mul(x, x))
    for _ in range(50):
        a, b, c, d = (int(v) for v in F9.random(rng, size=4))
        x = np.array([[a, b], [c, d]])
        assert A.star(x).tolist() == [[cube(a), cube(c)], [cube(b), cube(d)]]


def test_matrix_star_is_anti_multiplicative_over_Z9():
    A = matrix_ring(ring("integers_mod_pk", 3, 2), 2)
    rng = np.random.default_rng(2)
    for _ in range(1000):
        x, y = A.random(rng), A.random(rng)
        assert A.equal(A.star(A.mul(x, y)), A.mul(A.star(y), A.star(x)))


def test_mat_invert_examples():
    A = matrix_ring(ring("prime_field", 3), 2)
    assert mat_invert(A, A.identity()).tolist() == A.identity().tolist()
    assert mat_invert(A, np.array([[1, 1], [0, 1]])).tolist() == [[1, 2], [0, 1]]
    with pytest.raises(NotUnit):
        mat_invert(A, np.array([[1, 0], [0, 0]]))


@pytest.mark.parametrize("cfg", [("prime_field", 3, 1), ("integers_mod_pk", 3, 2)])
def test_mat_invert_matches_brute_force(cfg):
    R = ring(*cfg)
    A = MatrixRing(R, 2)
    q = R.size
    allm = np.stack(np.meshgrid(*[np.arange(q)] * 4, indexing="ij"), -1).reshape(-1, 2, 2)
    ident = A.identity()
    for X in allm:
        prods = A.mul(X[None], allm)
        hit = np.flatnonzero(np.all(prods.reshape(len(allm), -1) == ident.ravel(), axis=1))
        if hit.size:
            assert mat_invert(A, X).tolist() == allm[hit[0]].tolist()
        else:
            with pytest.raises(NotUnit):
                mat_invert(A, X)


def test_adjugate_matrix_ring_inverse():
    A = MatrixRing(ring("matrix2_adjugate", 3), 2)
    rng = np.random.default_rng(3)
    for _ in range(100):
        x = A.random(rng)
        if A.is_unit(x):
            assert A.equal(A.mul(x, mat_invert(A, x)), A.identity())


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_additive_inverse_and_commutative_addition(cfg, a, b):
    R = ring(*cfg)
    x, y = a % R.size, b % R.size
    assert R.add(x, R.neg(x)) == 0
    assert R.add(x, y) == R.add(y, x)
    assert R.sub(R.add(x, y), y) == x
