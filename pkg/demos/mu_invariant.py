# The sign mu(T) and how it ties Gauss sums together.

# %%
from weilrep.characters import find_character
from weilrep.hermitian import ColumnSpace, HermitianSpace
from weilrep.rings import matrix_ring, ring
from weilrep.weil import Transversal, WeilConfig, mu, mu_independence, theorem_suite_mu

A = matrix_ring(ring("prime_field", 3), 2)
I = Transversal(ColumnSpace(A.base, 2))
signs = [mu(T, I) for T in A.units()]
print("mu over GL(2,F3):", {s: signs.count(s) for s in set(signs)})

# %% a different transversal gives the same signs
print(mu_independence(A)["pass"])

# %% Gauss sum identities on a skew-hermitian space
sp = HermitianSpace(ring("prime_field", 3), 2, -1)
rep = theorem_suite_mu(WeilConfig(sp, find_character(sp.ring, sp.eps)))
print(rep["pass"], rep["qualifying"], "symmetric units")
