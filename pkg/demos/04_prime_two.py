"""At p = 2 the resolution has period one and Ext is a polynomial ring."""
# %%
from __future__ import annotations

from symp_ainf.hom_dga import homology_table, iota_power
from symp_ainf.prime2 import build_resolution_p2, p2_model

res = build_resolution_p2()
print("differential matrix:", res.diff_matrix(1).tolist())
table = homology_table(res, 8, lambda a, j: iota_power(res, j))
print("dim H^k, k = 0..8:", table.dims())

# %%
rep = p2_model()
for name, ok in rep.checks.items():
    print(f"{name:20s} {ok}")
