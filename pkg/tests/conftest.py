from functools import lru_cache

import pytest

from weilrep.characters import find_character
from weilrep.hermitian import HermitianSpace
from weilrep.rings import ring
from weilrep.weil import WeilConfig


@lru_cache(maxsize=None)
def space(family, p, k=1, s=None, m=1, eps=-1):
    return HermitianSpace(ring(family, p, k, s), m, eps)


@lru_cache(maxsize=None)
def weil_cfg(family, p, k=1, s=None, m=1, eps=-1):
    sp = space(family, p, k, s, m, eps)
    return WeilConfig(sp, find_character(sp.ring, eps))


@pytest.fixture
def sp2():
    return space("prime_field", 3)


@pytest.fixture
def sp2_cfg():
    return weil_cfg("prime_field", 3)
