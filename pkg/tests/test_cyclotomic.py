import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weilrep.cyclotomic import Cyclotomic, cyc_arith, embed_complex, field

ORDERS = [3, 5, 9, 27]


def z(n, e=1):
    return Cyclotomic.root(n, e)


def test_sum_of_cube_roots_vanishes():
    assert (Cyclotomic.from_int(3, 1) + z(3)) + z(3, 2) == Cyclotomic.from_int(3, 0)


def test_conjugate_of_zeta9():
    assert z(9).conjugate() == z(9, 8)


def test_gauss_square_over_F3():
    g = Cyclotomic(3, [1, 2])
    assert g * g == Cyclotomic.from_int(3, -3)


def test_embedding_examples():
    assert embed_complex(Cyclotomic.from_int(3, 0)) == 0
    assert abs(embed_complex(Cyclotomic(3, [1, 2])) - 1j * math.sqrt(3)) < 1e-9


def test_rejects_even_order():
    with pytest.raises(ValueError):
        Cyclotomic.root(4, 1)


def test_mismatched_orders():
    with pytest.raises(ValueError):
        cyc_arith("add", z(3), z(9))


coeffs = st.lists(st.integers(-6, 6), min_size=27, max_size=27)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(ORDERS), coeffs, coeffs)
def test_equality_matches_embedding(n, a, b):
    x, y = Cyclotomic(n, a[:n]), Cyclotomic(n, b[:n])
    close = abs(x.embed() - y.embed()) < 1e-9
    assert (x == y) == close
    assert (x == y) == (x.coeffs == y.coeffs)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(ORDERS), coeffs, coeffs, coeffs)
def test_ring_laws_and_conjugation(n, a, b, c):
    x, y, w = (Cyclotomic(n, v[:n]) for v in (a, b, c))
    assert x * y == y * x
    assert (x * y) * w == x * (y * w)
    assert x * (y + w) == x * y + x * w
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert x.conjugate().conjugate() == x
    assert abs((x * x.conjugate()).embed().imag) < 1e-9
    assert abs((x * y).embed() - x.embed() * y.embed()) < 1e-9 * (1 + abs(x.embed() * y.embed()))


def test_random_products_embed_consistently():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        n = int(rng.choice(ORDERS))
        x = Cyclotomic(n, rng.integers(-5, 6, size=n).tolist())
        y = Cyclotomic(n, rng.integers(-5, 6, size=n).tolist())
        assert abs((x * y).embed() - x.embed() * y.embed()) < 1e-9 * (1 + abs(x.embed() * y.embed()))


def test_inverse_and_division():
    g = Cyclotomic(3, [1, 2])
    assert g * g.inverse() == Cyclotomic.from_int(3, 1)
    assert (z(9, 2) / z(9, 5)) == z(9, -3)
    assert Cyclotomic.from_int(5, 1, 3) * 3 == Cyclotomic.from_int(5, 1)


def test_json_roundtrip():
    x = Cyclotomic(9, [1, -2, 0, 4], 5)
    assert Cyclotomic.from_json(x.to_json()) == x
    assert x.to_json()["order"] == 9


def test_root_powers_and_field_reduction():
    F = field(9)
    assert F.L == 6
    for e in range(9):
        assert abs(z(9, e).embed() - cmath.exp(2j * math.pi * e / 9)) < 1e-12
