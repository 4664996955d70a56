# Abstract data (chi, gamma, alpha, f) and the operators R built from it.

# %%
from weilrep.cyclotomic import Cyclotomic
from weilrep.data import canonical_data, compare_R_W, scaled_f, verify_axioms
from weilrep.hermitian import HermitianSpace
from weilrep.rings import ring

sp = HermitianSpace(ring("quadratic_frobenius", 3), 2, 1)
d = canonical_data(sp)
rep = verify_axioms(d)
print({k: rep[k]["pass"] for k in ("chi1", "chi2", "chi3", "gamma1", "gamma2", "gamma3", "cez", "c")})

# %% R agrees with W on the generators
print(compare_R_W(sp)["pass"])

# %% break f and watch the normalisation axioms notice
bad = verify_axioms(scaled_f(d, Cyclotomic.root(3, 1)))
print("cez", bad["cez"]["pass"], "c", bad["c"]["pass"])
