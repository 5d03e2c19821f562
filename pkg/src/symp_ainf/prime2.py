"""
The prime 2: F_2 S_2 with its period-one resolution.

Every differential is left multiplication by ``1 + (12)``, the Ext algebra is
polynomial on the degree-one class of the identity shifted by one, and the
minimal model has only a binary product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .ainfty_model import (
    CheckResult,
    ExtBasisElement,
    ExtVector,
    MinimalModel,
    ext_tensor,
)
from .hom_dga import PeriodicGradedMap, homology_table, iota_power, m1
from .hook_algebra import ProjMorphism
from .resolution import PeriodicResolution, augmentation, check_exactness


class GroupAlgebraS2:
    """``F_2 S_2`` in the basis ``(id, (12))``."""

    p = 2
    dim = 2

    def zero(self) -> np.ndarray:
        return np.zeros(2, dtype=np.int64)

    def unit(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def mul(self, x, y) -> np.ndarray:
        x, y = np.asarray(x), np.asarray(y)
        return np.array([x[0] * y[0] + x[1] * y[1], x[0] * y[1] + x[1] * y[0]], dtype=np.int64) % 2

    def augmentation(self, v) -> int:
        return int(np.sum(v)) % 2


def build_resolution_p2() -> PeriodicResolution:
    alg = GroupAlgebraS2()
    one = ProjMorphism(1, 1, alg.unit(0), alg)
    norm = ProjMorphism(1, 1, np.array([1, 1], dtype=np.int64), alg)
    return PeriodicResolution(alg, 1, lambda i: 1, {1: one}, lambda t, s: norm)


class Prime2Model(MinimalModel):
    """Ext classes ``(0, j)`` for the powers of the degree-one generator."""

    def _setup(self):
        pass

    def basis_patterns(self, n: int):
        return [(0,) * n]

    def m_prime(self, n, t):
        if len(t) != n:
            raise ValueError("arity mismatch")
        if n != 2:
            return None
        x, y = t
        return ExtVector(2, {ExtBasisElement(0, x.j + y.j): 1})

    def m_prime_support(self, n):
        return n == 2

    def f_map(self, n, t):
        if len(t) != n:
            raise ValueError("arity mismatch")
        return self.iota(t[0].j) if n == 1 else None

    def f_support(self, n):
        return n == 1


@dataclass
class Prime2Report:
    checks: dict = field(default_factory=dict)
    dims: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": dict(self.checks), "dims": list(self.dims)}


def p2_model(degree_max: int = 10, j_max: int = 4) -> Prime2Report:
    """Build the p = 2 data and run its checks."""
    res = build_resolution_p2()
    model = Prime2Model(res)
    rep = Prime2Report()
    eps = augmentation(res)
    d = res.diff_matrix(1)
    rep.checks["eps_kills_D"] = not np.mod(eps.values @ d, 2).any()
    rep.checks["exactness"] = check_exactness(res, 12).ok
    rep.checks["cycles"] = all(m1(iota_power(res, j)).is_zero() for j in range(j_max + 1))
    table = homology_table(res, max(degree_max, 2))
    rep.dims = table.dims()[: degree_max + 1]
    rep.checks["homology_dims"] = rep.dims == [1] * (degree_max + 1)
    rep.checks["homology_certified"] = all(r.certified for r in table.rows)
    syms = [ExtBasisElement(0, j) for j in range(j_max + 1)]
    rep.checks["associativity"] = all(
        model.check_stasheff((x, y, z)).is_zero() for x, y, z in itertools.product(syms, repeat=3))
    finf = []
    for n in (1, 2):
        for t in itertools.product(syms, repeat=n):
            r = model.check_finfrel(ext_tensor(t))
            finf.append(r is None or r.is_zero())
    rep.checks["morphism_identities"] = all(finf)
    return rep


def prime2_checks(report: Prime2Report) -> list[CheckResult]:
    return [CheckResult(name, 0, 1, ok) for name, ok in report.checks.items()]
