"""Build the periodic resolution, check it is exact, and read off Ext."""
# %%
from __future__ import annotations

from symp_ainf.hom_dga import build_chi, build_gamma, homology_table, iota_power, m1, odd_square_bracket
from symp_ainf.hook_algebra import HookProfile
from symp_ainf.resolution import build_resolution, check_exactness

res = build_resolution(HookProfile(5))
print("projectives in degrees 0..2l:", [res.module_at(i) for i in range(2 * res.l + 1)])
print("dimensions:", [res.module_dim(res.module_at(i)) for i in range(res.l)])

# %% exactness over three periods, including the augmentation
rep = check_exactness(res)
print("exact over window", rep.window, ":", rep.ok)
print("ranks of the differentials:", [rep.ranks[i] for i in range(1, res.l + 1)])

# %% the two families of cocycles
chi, iota = build_chi(res), iota_power(res)
print("|iota| =", iota.degree, " |chi| =", chi.degree)
print("m1(iota) = 0:", m1(iota).is_zero(), " m1(chi) = 0:", m1(chi).is_zero())
print("chi o chi is the coboundary of gamma_2:", chi.compose(chi) == m1(build_gamma(res, 2)))
print("odd bracket equals iota^(p-1):", odd_square_bracket(res) == iota_power(res, res.p - 1))

# %% cohomology through Hom(-, F_p)
table = homology_table(res, 3 * res.l)
for row in table.rows:
    if row.dim:
        print(f"H^{row.degree}: chi^{row.label[0]} iota^{row.label[1]}  certified={row.certified}")
