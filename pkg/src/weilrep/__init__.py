"""Exact Weil representations of unitary groups over finite rings with involution."""

from .characters import AdditiveCharacter, NotFound, check_primitive, find_character
from .cyclotomic import Cyclotomic, embed_complex
from .data import canonical_data, compare_R_W, lemma_checks, R_on_bruhat, verify_axioms
from .groups import closure, enumerate_isometries, index_certificate, notlocal_counterexample
from .heisenberg import SchrodingerModel, chi_beta
from .hermitian import HermitianSpace, check_relations
from .operators import Operator
from .rings import FiniteRing, MatrixRing, NotUnit, RingConfig, mat_invert, ring
from .weil import WeilConfig, gauss_sum, mu, weil_bruhat, weil_general

__version__ = "0.1.0"
