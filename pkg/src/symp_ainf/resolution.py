"""
The l-periodic projective resolution of the trivial module over F_p S_p.

Module elements are coordinate vectors in the ambient algebra; each P_k
carries an echelon basis so that coordinates in P_k are read off at the pivot
columns.  A differential acts on P_k by left multiplication with its value.

The resolution object only needs an algebra with ``mul``, ``unit``,
``zero``, ``dim``, ``p`` and ``augmentation``, so the same machinery runs the
two-dimensional group algebra at the prime 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .gfp_linalg import kernel_basis, rank
from .hook_algebra import (
    GeneratorTable,
    HookProfile,
    ProjMorphism,
    ReducedAlgebra,
    augmentation_integral,
    gen_morphisms,
    reduce_algebra,
    sandwich_span,
)


class PeriodicResolution:
    """``Pr_i = P_{omega(i)}`` for ``i >= 0`` with ``d_i = e_{omega(i-1), omega(i)}``.

    Args:
        algebra: the ambient algebra (F_p S_p in some basis).
        period: the period length ``l``.
        omega: degree -> index of the projective.
        identities: ``k -> ProjMorphism`` identity of ``P_k``.
        arrow: ``(target, source) -> ProjMorphism`` for the differentials.
    """

    def __init__(self, algebra, period: int, omega: Callable[[int], int],
                 identities: dict[int, ProjMorphism], arrow: Callable[[int, int], ProjMorphism],
                 profile: HookProfile | None = None, integral: GeneratorTable | None = None):
        self.algebra = algebra
        self.p = algebra.p
        self.l = period
        self.omega = omega
        self.identities = identities
        self._arrow = arrow
        self.profile = profile
        self.integral = integral
        self._basis_cache: dict[int, tuple[np.ndarray, list[int]]] = {}

    def module_at(self, i: int) -> int | None:
        """Index ``k`` of the projective in degree ``i`` (``None`` below 0)."""
        return self.omega(i) if i >= 0 else None

    def diff_at(self, i: int) -> ProjMorphism | None:
        if i < 1:
            return None
        return self._arrow(self.omega(i - 1), self.omega(i))

    def identity(self, k: int) -> ProjMorphism:
        return self.identities[k]

    def module_basis(self, k: int) -> tuple[np.ndarray, list[int]]:
        """Echelon basis of ``P_k`` and its pivot columns."""
        if k not in self._basis_cache:
            self._basis_cache[k] = sandwich_span(self.algebra, self.identity(k).value, None)
        return self._basis_cache[k]

    def module_dim(self, k: int) -> int:
        return len(self.module_basis(k)[0])

    def coords(self, k: int, v) -> np.ndarray:
        """Coordinates of ``v`` (an element of ``P_k``) in the module basis."""
        B, piv = self.module_basis(k)
        c = np.asarray(v)[piv] % self.p
        if not np.array_equal((c @ B) % self.p, np.mod(v, self.p)):
            raise ValueError(f"vector is not in P_{k}")
        return c

    def morphism_matrix(self, m: ProjMorphism) -> np.ndarray:
        """Matrix (target-dim x source-dim) of ``m`` on the module bases."""
        B, _ = self.module_basis(m.source)
        cols = [self.coords(m.target, self.algebra.mul(m.value, b)) for b in B]
        if not cols:
            return np.zeros((self.module_dim(m.target), 0), dtype=np.int64)
        return np.stack(cols, axis=1)

    def diff_matrix(self, i: int) -> np.ndarray:
        d = self.diff_at(i)
        if d is None:
            raise ValueError(f"no differential in degree {i}")
        return self.morphism_matrix(d)


def build_resolution(profile: HookProfile, algebra: ReducedAlgebra | None = None) -> PeriodicResolution:
    """The resolution for a prime ``p >= 3``."""
    alg = algebra if algebra is not None else ReducedAlgebra(profile)
    integral = gen_morphisms(profile)
    table = reduce_algebra(profile, alg, integral)
    ids = {k: table.identity(k) for k in range(1, profile.p)}
    res = PeriodicResolution(alg, profile.l, profile.omega, ids, lambda t, s: table[t, s],
                             profile=profile, integral=integral)
    res.table = table
    return res


@dataclass
class AugmentationFunctional:
    """A linear functional on ``P_1``, given by its values on the module basis."""

    resolution: PeriodicResolution
    values: np.ndarray

    def __call__(self, v) -> int:
        c = self.resolution.coords(1, v)
        return int(c @ self.values) % self.resolution.p

    def kernel(self) -> np.ndarray:
        """Basis of ``ker`` in module coordinates of ``P_1``."""
        return kernel_basis(self.values[None, :], self.resolution.p)

    def is_module_map(self) -> bool:
        """``ker`` is closed under right multiplication by the whole algebra."""
        res, alg = self.resolution, self.resolution.algebra
        B, _ = res.module_basis(1)
        K = (self.kernel() @ B) % res.p
        for v in K:
            for j in range(alg.dim):
                if self(alg.mul(v, alg.unit(j))) != 0:
                    return False
        return True


def augmentation(res: PeriodicResolution) -> AugmentationFunctional:
    """``eps : P_1 -> F_p``, evaluated through the algebra's trivial character."""
    B, _ = res.module_basis(1)
    vals = np.array([res.algebra.augmentation(b) for b in B], dtype=np.int64)
    return AugmentationFunctional(res, vals)


def integral_augmentation_identity(res: PeriodicResolution) -> bool:
    """``eps^ o e^_{1,1} = p eps^`` on the spanning set ``e~_1 * beta`` of P~_1."""
    if res.integral is None:
        raise ValueError("needs the integral generator table")
    p = res.p
    e1 = res.integral.identity(1).value
    e11 = res.integral[1, 1].value
    for b in res.algebra.basis:
        x = e1 * b.value
        if augmentation_integral(e11 * x) != p * augmentation_integral(x):
            return False
    return True


def hom_to_trivial(res: PeriodicResolution, k: int) -> np.ndarray:
    """Basis of ``Hom(P_k, F_p)`` as row functionals on the module basis.

    ``P_k`` is cyclic on its idempotent, so a module map is fixed by its
    value ``c`` there and equals ``c * eps`` on ``P_k``; it is well defined
    exactly when ``eps(e_k) != 0``.
    """
    alg = res.algebra
    B, _ = res.module_basis(k)
    if alg.augmentation(res.identity(k).value) == 0:
        return np.zeros((0, len(B)), dtype=np.int64)
    return np.array([[alg.augmentation(b) for b in B]], dtype=np.int64)


def hom_to_trivial_bruteforce(res: PeriodicResolution, k: int) -> np.ndarray:
    """Same space as :func:`hom_to_trivial`, by solving the full linear system.

    Solves ``phi(x b) = phi(x) eps(b)`` for every module basis vector ``x``
    and algebra basis element ``b``.
    """
    alg, p = res.algebra, res.p
    B, _ = res.module_basis(k)
    n = len(B)
    rows = []
    for i, x in enumerate(B):
        for j in range(alg.dim):
            b = alg.unit(j)
            row = res.coords(k, alg.mul(x, b)).copy()
            row[i] = (row[i] - alg.augmentation(b)) % p
            if row.any():
                rows.append(row)
    if not rows:
        return np.eye(n, dtype=np.int64)
    return kernel_basis(np.array(rows), p)


@dataclass
class ExactnessReport:
    ok: bool
    window: int
    failed_degree: int | None = None
    reason: str = ""
    ranks: dict = field(default_factory=dict)


def check_exactness(res: PeriodicResolution, window: int | None = None,
                    differential: Callable[[int], ProjMorphism] | None = None) -> ExactnessReport:
    """Check ``d o d = 0`` and exactness of the augmented complex in degrees up to ``window``.

    ``differential`` overrides ``res.diff_at`` (used to feed in corrupted maps).
    """
    p = res.p
    W = window if window is not None else 3 * res.l
    if W < res.l + 2:
        raise ValueError(f"window must be at least l+2 = {res.l + 2}")
    diff = differential or res.diff_at
    eps = augmentation(res)
    ranks = {}

    def mat(i):
        return res.morphism_matrix(diff(i))

    mats = {i: mat(i) for i in range(1, W + 1)}
    for i in range(1, W + 1):
        ranks[i] = rank(mats[i], p) if mats[i].size else 0

    # augmentation: eps o d_1 = 0 and ker eps = im d_1
    if np.mod(eps.values @ mats[1], p).any():
        return ExactnessReport(False, W, 1, "eps o d_1 != 0", ranks)
    dim_ker_eps = res.module_dim(1) - rank(eps.values[None, :], p)
    if ranks[1] != dim_ker_eps:
        return ExactnessReport(False, W, 1, "ker eps != im d_1", ranks)
    for i in range(2, W + 1):
        if np.mod(mats[i - 1] @ mats[i], p).any():
            return ExactnessReport(False, W, i, f"d_{i - 1} o d_{i} != 0", ranks)
        dim_ker = res.module_dim(res.module_at(i - 1)) - ranks[i - 1]
        if ranks[i] != dim_ker:
            return ExactnessReport(False, W, i, f"rank d_{i} = {ranks[i]} != dim ker d_{i - 1} = {dim_ker}",
                                   ranks)
    return ExactnessReport(True, W, None, "", ranks)


def export_resolution(res: PeriodicResolution, window: int) -> dict:
    """JSON-ready description of the differentials on the module bases."""
    degrees = []
    for i in range(0, window + 1):
        entry = {"degree": i, "module": res.module_at(i), "dim": res.module_dim(res.module_at(i))}
        if i >= 1:
            d = res.diff_at(i)
            entry["differential"] = {"source": d.source, "target": d.target,
                                     "matrix": res.morphism_matrix(d).tolist()}
        degrees.append(entry)
    eps = augmentation(res)
    return {"p": res.p, "period": res.l, "augmentation": eps.values.tolist(), "degrees": degrees}
