"""Minimal A-infinity model for the cohomology of the symmetric group S_p over F_p."""

from __future__ import annotations

from .gfp_linalg import PrimeField, kernel_basis, mat_mul, rank, reduce_mod_p, rref
from .hook_algebra import HookProfile, LambdaBasis, ReducedAlgebra, gen_morphisms, reduce_algebra
from .resolution import PeriodicResolution, build_resolution, check_exactness

__all__ = [
    "PrimeField", "kernel_basis", "mat_mul", "rank", "reduce_mod_p", "rref",
    "HookProfile", "LambdaBasis", "ReducedAlgebra", "gen_morphisms", "reduce_algebra",
    "PeriodicResolution", "build_resolution", "check_exactness",
]
