# Gauss sums, exactly.
#
# Values live in Q(zeta_n); `.embed()` gives the complex number only for display.

# %%
from weilrep.characters import find_character
from weilrep.cyclotomic import Cyclotomic
from weilrep.hermitian import HermitianSpace
from weilrep.rings import ring
from weilrep.weil import classical_gauss_suite, gauss_sum

# %% the classical sum g = sum_a zeta_p^(a^2) squares to (-1)^((p-1)/2) p
for p in (3, 5, 7, 13):
    s = classical_gauss_suite(p)
    print(p, s["G1_embedded"], s["G1"] * s["G1"] == Cyclotomic.from_int(p, (-1) ** ((p - 1) // 2) * p))

# %% matrix Gauss sums over F9, m = 2
sp = HermitianSpace(ring("quadratic_frobenius", 3), 2, -1)
beta = find_character(sp.ring, sp.eps)
G = gauss_sum(sp.A.identity(), beta)
print("G_1 over F9^2:", G.embed())
