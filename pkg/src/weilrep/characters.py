"""Additive characters of a finite ring, stored as exponent maps.

Since B+ is (Z/n)^r, every character is ``b -> zeta_n^(w . digits(b))`` for a
weight vector ``w``.  :func:`find_character` uses a closed-form weight for
each family and falls back to scanning all weight vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclotomic import Cyclotomic
from .rings import FiniteRing


class NotFound(LookupError):
    """No object with the requested properties exists."""


@dataclass
class PrimitivityReport:
    primitive: bool
    witnesses: np.ndarray | None = None  # witnesses[b] = c with beta(bc) != 1
    counterexample: int | None = None  # nonzero b with beta(bB) = 1

    def __bool__(self):
        return self.primitive


class AdditiveCharacter:
    def __init__(self, ring: FiniteRing, weights, recipe="custom"):
        self.ring = ring
        self.n = ring.n
        self.weights = np.asarray(weights, dtype=np.int64) % ring.n
        if self.weights.shape != (ring.r,):
            raise ValueError(f"need {ring.r} weights")
        self.recipe = recipe
        self.certified = {}
        self._table = None
        if ring.size <= 10 ** 5:
            self._table = self._compute(ring.elements())

    def _compute(self, x):
        return (self.ring.digits(x) @ self.weights) % self.n

    def exponent(self, x):
        """beta(x) = zeta_n ** exponent(x)."""
        if self._table is not None:
            out = self._table[np.asarray(x)]
        else:
            out = self._compute(x)
        return int(out) if np.ndim(out) == 0 else out

    def value(self, x):
        return Cyclotomic.root(self.n, self.exponent(x))

    def __call__(self, x):
        return self.value(x)

    def satisfies_a6(self, eps):
        R = self.ring
        b = R.elements()
        sb = R.star(b) if eps == 1 else R.neg(R.star(b))
        return bool(np.all(self.exponent(R.add(b, sb)) == 0))

    def is_trivial(self):
        return not self.weights.any()

    def to_json(self):
        return {"weights": self.weights.tolist(), "order": self.n, "recipe": self.recipe,
                "certified_eps": sorted(self.certified)}

    def __repr__(self):
        return f"AdditiveCharacter({self.ring!r}, weights={self.weights.tolist()}, recipe={self.recipe!r})"


def check_primitive(beta: AdditiveCharacter) -> PrimitivityReport:
    """For each b != 0 find c with beta(bc) != 1, or return a b whose right ideal is in the kernel."""
    R = beta.ring
    elems = R.elements()
    witnesses = np.zeros(R.size, dtype=np.int64)
    for b in range(1, R.size):
        row = beta.exponent(R.mul(b, elems))
        hit = np.flatnonzero(row)
        if hit.size == 0:
            return PrimitivityReport(False, counterexample=b)
        witnesses[b] = hit[0]
    return PrimitivityReport(True, witnesses=witnesses)


def _recipe(ring: FiniteRing, eps):
    """Closed-form weights per family, or None when the family has no recipe for eps."""
    fam, r = ring.family, ring.r
    w = np.zeros(r, dtype=np.int64)
    if fam in ("prime_field", "integers_mod_pk"):
        w[0] = 1
        return w, "identity"
    if fam in ("quadratic_frobenius", "galois_ring_frobenius"):
        # unramified: project B = R + theta R onto R
        w[0] = 1
        return w, "trace-free projection"
    if fam == "ramified_even":
        # beta(a + b pi) = lambda(b)
        w[1] = 1
        return w, "pi-coordinate"
    if fam == "skew_poly_quotient":
        # beta(sum a_i t^i) = lambda(a_{s-1} + a_{s-1}^*) = lambda(2 x_{s-1})
        w[r - 2] = 2
        return w, "top-coefficient trace"
    if fam == "matrix2_adjugate":
        w[0] = w[3] = 1
        return w, "matrix trace"
    return None


def all_characters(ring: FiniteRing):
    """All |B| additive characters, weight vectors in index order."""
    for idx in range(ring.size):
        yield AdditiveCharacter(ring, ring.digits(idx), recipe=f"enumerated#{idx}")


def _qualifies(beta, eps):
    return beta.satisfies_a6(eps) and check_primitive(beta).primitive


def find_character(ring: FiniteRing, eps) -> AdditiveCharacter:
    """A primitive character with beta(b + eps b^*) = 1, or raise :class:`NotFound`."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    rec = _recipe(ring, eps)
    if rec is not None:
        beta = AdditiveCharacter(ring, rec[0], recipe=rec[1])
        if _qualifies(beta, eps):
            beta.certified[eps] = True
            return beta
    for idx in range(1, ring.size):
        beta = AdditiveCharacter(ring, ring.digits(idx), recipe=f"enumerated#{idx}")
        if not beta.satisfies_a6(eps):
            continue
        if check_primitive(beta).primitive:
            beta.certified[eps] = True
            return beta
    raise NotFound(f"no primitive character on {ring!r} satisfies beta(b {'+' if eps == 1 else '-'} b*) = 1")
