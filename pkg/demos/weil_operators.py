# Weil operators on Bruhat generators, and the relations they satisfy.

# %%
from weilrep.characters import find_character
from weilrep.hermitian import HermitianSpace
from weilrep.rings import ring
from weilrep.weil import WeilConfig, verify_intertwining, weil_bruhat, weil_relations

sp = HermitianSpace(ring("prime_field", 5), 1, -1)
cfg = WeilConfig(sp, find_character(sp.ring, sp.eps))
print("dimension", cfg.d, "normalisation", cfg.f)

# %% omega is a scaled Fourier matrix; show it numerically
W = weil_bruhat(cfg, ("omega", None))
print(W.to_complex().round(3))

# %% it conjugates the Schrodinger model the way omega moves the Heisenberg group
print(verify_intertwining(cfg, sp.omega().matrix, W)["pass"])

# %% the defining relations, checked exactly
for name, verdict in weil_relations(cfg).items():
    print(name, verdict["pass"], verdict["mode"])
