# Generate SSL from Bruhat generators, then test that W is a homomorphism.

# %%
from weilrep.characters import find_character
from weilrep.groups import bruhat_generators, enumerate_isometries, index_certificate, weil_closure
from weilrep.hermitian import HermitianSpace
from weilrep.rings import ring
from weilrep.weil import WeilConfig, homomorphism_check, weil_bruhat, weil_general

sp = HermitianSpace(ring("prime_field", 3), 1, -1)
cfg = WeilConfig(sp, find_character(sp.ring, sp.eps))
gens = bruhat_generators(sp)
C, ops, state = weil_closure(sp, [weil_bruhat(cfg, (g.kind, g.param)) for g in gens], generators=gens)
print("order", C.order, "conflicts", state["conflicts"])

# %% W on every element, straight from the matrix
SL = enumerate_isometries(sp)
print(homomorphism_check(sp.A2, SL, [weil_general(cfg, X) for X in SL])["pass"])

# %% index of SSL in the isometry group
for fam, eps, m in [("prime_field", -1, 1), ("quadratic_frobenius", 1, 1), ("prime_field", 1, 2)]:
    rep = index_certificate(HermitianSpace(ring(fam, 3), m, eps))
    print(fam, eps, m, "index", rep["index"])
