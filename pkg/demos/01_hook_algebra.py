"""Walk through the hook-block model of Z_(p) S_p and its reduction mod p."""
# %%
from __future__ import annotations

import numpy as np

from symp_ainf.hook_algebra import (
    HookProfile,
    LambdaBasis,
    basis_index_certificate,
    gen_morphisms,
    integral_relations,
    reduce_algebra,
    reduced_relations,
)

p = 5
prof = HookProfile(p)
print("period l =", prof.l)
print("block sizes:", [prof.n_lam(k) for k in range(1, p + 1)])
print("c/b split :", [(prof.n_c(k), prof.n_b(k)) for k in range(1, p + 1)])

# %% the basis: four kinds of generators, cut out by congruences between blocks
basis = LambdaBasis(prof)
kinds = {}
for b in basis:
    kinds[b.kind] = kinds.get(b.kind, 0) + 1
print(len(basis), "basis elements by kind:", kinds)
print("determinant equals the index of the lattice:", basis_index_certificate(basis))

# %% generators of the quiver, first over Z then over F_p
table = gen_morphisms(prof)
print("loop sums equal p * identity:", integral_relations(table))
reduced = reduce_algebra(prof)
print("loop sums vanish mod p:     ", reduced_relations(reduced))

# %% a composite of two arrows is the product of their algebra values
f, g = reduced[2, 1], reduced[1, 2]
gf = g.compose(f)
print("e_{1,2} o e_{2,1} = -e_{1,1}:", np.array_equal(gf.value, reduced[1, 1].scale(-1).value))
