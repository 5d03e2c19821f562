"""The minimal A-infinity structure on Ext and its checks."""
# %%
from __future__ import annotations

from symp_ainf.ainfty_model import build_model, ext_tensor, model_table, verify_model

model = build_model(3)
chi = (1, 0)
print("m'_3(chi, chi, chi) =", model.m_prime(3, ext_tensor([chi] * 3)))
print("m'_2(iota, chi iota) =", model.m_prime(2, ext_tensor([(0, 1), (1, 1)])))
print("f_2(chi, chi) has degree", model.f_map(2, ext_tensor([chi, chi])).degree)

# %% one identity by hand: the morphism identity at arity p on odd classes
t = ext_tensor([chi] * 3)
print("residual at n = p:", model.check_finfrel(t))

# %% nonzero products up to degree 12
for rec in model_table(model, 3, 12):
    if rec["result"]:
        print(rec)

# %% the full sweep, then a sign-broken model
print("model passes:", verify_model(model).ok)
broken = verify_model(build_model(3, mutation="f2_sign"), samples=10)
print("broken model first failure:", broken.first_failure())
