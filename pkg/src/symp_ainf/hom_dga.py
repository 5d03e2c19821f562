"""
The endomorphism dg-algebra of the periodic resolution, on periodic maps.

A periodic map of degree ``y`` sends ``Pr_{i+y}`` to ``Pr_i`` for every
``i >= 0`` and only depends on ``i mod l``; it is stored as an ``(l, dim)``
array whose row ``k`` is the algebra element of the component
``P_{omega(k+y)} -> P_{omega(k)}``.  Composition, the differential and all
named cocycles stay inside this class, so equality is an exact array test.

Homology is computed on the small complex ``Hom(Pr_*, F_p)``, reached from
the dg-algebra through ``g -> eps o g_0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gfp_linalg import rank, solve
from .resolution import PeriodicResolution, augmentation, hom_to_trivial


class PeriodicGradedMap:
    """A degree-``y`` periodic endomorphism of the resolution.

    Args:
        res: the resolution acted on.
        degree: ``y >= 0``.
        values: ``(l, dim)`` array; row ``k`` is the component at residue ``k``.
        check: verify that each row is supported between the right idempotents.
    """

    __slots__ = ("res", "degree", "values")

    def __init__(self, res: PeriodicResolution, degree: int, values, check: bool = False):
        if degree < 0:
            raise ValueError(f"periodic maps of negative degree {degree} are not represented")
        vals = np.mod(np.asarray(values, dtype=np.int64), res.p)
        if vals.shape != (res.l, res.algebra.dim):
            raise ValueError(f"expected {(res.l, res.algebra.dim)} components, got {vals.shape}")
        self.res = res
        self.degree = degree
        self.values = vals
        if check:
            self.validate()

    @classmethod
    def zero(cls, res: PeriodicResolution, degree: int) -> PeriodicGradedMap:
        return cls(res, degree, np.zeros((res.l, res.algebra.dim), dtype=np.int64))

    @classmethod
    def from_components(cls, res: PeriodicResolution, degree: int, components: dict) -> PeriodicGradedMap:
        """Build from ``{residue: ProjMorphism}``; missing residues are zero.

        Each morphism must run ``P_{omega(k+degree)} -> P_{omega(k)}``.
        """
        vals = np.zeros((res.l, res.algebra.dim), dtype=np.int64)
        for k, m in components.items():
            src, tgt = res.omega(k + degree), res.omega(k)
            if (m.source, m.target) != (src, tgt):
                raise ValueError(f"residue {k} of a degree-{degree} map needs P_{src} -> P_{tgt}, "
                                 f"got P_{m.source} -> P_{m.target}")
            vals[k] = m.value
        return cls(res, degree, vals)

    def source(self, k: int) -> int:
        return self.res.omega(k + self.degree)

    def target(self, k: int) -> int:
        return self.res.omega(k)

    def validate(self) -> None:
        """Raise if some component is not ``e_target * x * e_source``."""
        alg = self.res.algebra
        for k in range(self.res.l):
            v = self.values[k]
            left = self.res.identity(self.target(k)).value
            right = self.res.identity(self.source(k)).value
            if not np.array_equal(alg.mul(alg.mul(left, v), right), v):
                raise ValueError(f"component {k} does not map P_{self.source(k)} to P_{self.target(k)}")

    def compose(self, h: PeriodicGradedMap) -> PeriodicGradedMap:
        """``self o h``: component ``k`` is ``self_k o h_{k + |self|}``."""
        if h.res is not self.res:
            raise ValueError("maps live on different resolutions")
        alg, l = self.res.algebra, self.res.l
        out = np.empty_like(self.values)
        for k in range(l):
            out[k] = alg.mul(self.values[k], h.values[(k + self.degree) % l])
        return PeriodicGradedMap(self.res, self.degree + h.degree, out)

    def __matmul__(self, h: PeriodicGradedMap) -> PeriodicGradedMap:
        return self.compose(h)

    def _same_space(self, other: PeriodicGradedMap):
        if other.res is not self.res or other.degree != self.degree:
            raise ValueError(f"cannot add degree {self.degree} and degree {other.degree} maps")

    def __add__(self, other: PeriodicGradedMap) -> PeriodicGradedMap:
        self._same_space(other)
        return PeriodicGradedMap(self.res, self.degree, self.values + other.values)

    def __sub__(self, other: PeriodicGradedMap) -> PeriodicGradedMap:
        self._same_space(other)
        return PeriodicGradedMap(self.res, self.degree, self.values - other.values)

    def __neg__(self) -> PeriodicGradedMap:
        return self.scale(-1)

    def scale(self, c: int) -> PeriodicGradedMap:
        return PeriodicGradedMap(self.res, self.degree, c * self.values)

    def is_zero(self) -> bool:
        return not self.values.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicGradedMap):
            return NotImplemented
        return (other.res is self.res and other.degree == self.degree
                and np.array_equal(self.values, other.values))

    __hash__ = None

    def component(self, k: int):
        """The component at residue ``k`` as a ProjMorphism."""
        from .hook_algebra import ProjMorphism

        return ProjMorphism(self.source(k), self.target(k), self.values[k % self.res.l], self.res.algebra)

    def __repr__(self):
        nz = [k for k in range(self.res.l) if self.values[k].any()]
        return f"PeriodicGradedMap(degree={self.degree}, nonzero residues={nz})"


def differential_map(res: PeriodicResolution) -> PeriodicGradedMap:
    """The differential as a degree-1 map, component ``e_{omega(k), omega(k+1)}``."""
    return PeriodicGradedMap.from_components(res, 1, {k: res.diff_at(k + 1) for k in range(res.l)})


def m1(g: PeriodicGradedMap) -> PeriodicGradedMap:
    """``d o g - (-1)^{|g|} g o d``."""
    d = differential_map(g.res)
    left, right = d.compose(g), g.compose(d)
    return left + right if g.degree % 2 else left - right


def iota_power(res: PeriodicResolution, j: int = 1) -> PeriodicGradedMap:
    """``iota^j``: degree ``j l`` with identity components."""
    if j < 0:
        raise ValueError("negative power")
    return PeriodicGradedMap.from_components(res, j * res.l,
                                             {k: res.identity(res.omega(k)) for k in range(res.l)})


def build_iota(res: PeriodicResolution) -> PeriodicGradedMap:
    """The periodicity map: degree ``l``, identity components."""
    return iota_power(res, 1)


def identity_map(res: PeriodicResolution) -> PeriodicGradedMap:
    return iota_power(res, 0)


def _table(res: PeriodicResolution):
    table = getattr(res, "table", None)
    if table is None:
        raise ValueError("this construction needs the generator table of a prime p >= 3")
    return table


def build_chi(res: PeriodicResolution) -> PeriodicGradedMap:
    """The degree ``l-1`` cocycle that generates the odd part of the homology."""
    table = _table(res)
    p = res.p
    comps = {0: table.identity(1), p - 1: table.identity(p - 1)}
    for k in range(1, p - 1):
        comps[k] = table[k + 1, k]
        comps[p - 1 + k] = table[p - k - 1, p - k]
    return PeriodicGradedMap.from_components(res, res.l - 1, comps)


def chi_iota(res: PeriodicResolution, j: int) -> PeriodicGradedMap:
    return build_chi(res).compose(iota_power(res, j))


def gamma_degree(p: int, k: int) -> int:
    return k * (2 * (p - 1) - 2) + 1


def build_gamma(res: PeriodicResolution, k: int) -> PeriodicGradedMap:
    """The correction map whose coboundary compensates products of odd classes.

    Degree ``k(l-2)+1``, supported at residues ``k-1`` and ``k-1+(p-1)``.
    """
    table = _table(res)
    p = res.p
    if not 2 <= k <= p - 1:
        raise ValueError(f"k must lie in [2, {p - 1}], got {k}")
    comps = {k - 1: table.identity(k), k - 1 + (p - 1): table.identity(p - k)}
    return PeriodicGradedMap.from_components(res, gamma_degree(p, k), comps)


def gamma_boundary_formula(res: PeriodicResolution, k: int) -> PeriodicGradedMap:
    """Closed form of ``m1(gamma_k)``: four arrow components."""
    table = _table(res)
    p = res.p
    comps = {
        k - 2: table[k - 1, k],
        k - 2 + (p - 1): table[p - k + 1, p - k],
        k - 1: table[k, k - 1],
        k - 1 + (p - 1): table[p - k, p - k + 1],
    }
    return PeriodicGradedMap.from_components(res, gamma_degree(p, k) + 1, comps)


def odd_square_bracket(res: PeriodicResolution) -> PeriodicGradedMap:
    """``chi o gamma_{p-1} + gamma_{p-1} o chi + sum_k gamma_k o gamma_{p-k}``."""
    p = res.p
    chi, top = build_chi(res), build_gamma(res, p - 1)
    total = chi.compose(top) + top.compose(chi)
    for k in range(2, p - 1):
        total = total + build_gamma(res, k).compose(build_gamma(res, p - k))
    return total


def random_periodic_map(res: PeriodicResolution, degree: int, rng: np.random.Generator) -> PeriodicGradedMap:
    """Uniform random periodic map of the given degree."""
    from .hook_algebra import sandwich_span

    cache = res.__dict__.setdefault("_hom_cache", {})
    vals = np.zeros((res.l, res.algebra.dim), dtype=np.int64)
    for k in range(res.l):
        key = (res.omega(k), res.omega(k + degree))
        if key not in cache:
            cache[key] = sandwich_span(res.algebra, res.identity(key[0]).value,
                                       res.identity(key[1]).value)[0]
        B = cache[key]
        if len(B):
            vals[k] = rng.integers(0, res.p, len(B)) @ B
    return PeriodicGradedMap(res, degree, vals)


def psi(g: PeriodicGradedMap) -> np.ndarray:
    """``eps o g_0`` as a functional on the module basis of ``Pr_{|g|}``."""
    res = g.res
    eps = augmentation(res)
    if g.target(0) != 1:
        raise ValueError("component 0 must land in P_1")
    B, _ = res.module_basis(g.source(0))
    return np.array([eps(res.algebra.mul(g.values[0], b)) for b in B], dtype=np.int64)


@dataclass
class HomologyRow:
    degree: int
    dim: int
    label: tuple[int, int] | None
    certified: bool


@dataclass
class HomologyClassTable:
    p: int
    period: int
    rows: list[HomologyRow]

    def dims(self) -> list[int]:
        return [r.dim for r in self.rows]


def ext_label(degree: int, period: int) -> tuple[int, int] | None:
    """``(a, j)`` with ``a(l-1) + j l = degree``, if any."""
    if period == 1:
        return (0, degree)
    j, r = divmod(degree, period)
    if r == 0:
        return (0, j)
    if r == period - 1:
        return (1, j)
    return None


def homology_table(res: PeriodicResolution, degree_bound: int | None = None,
                   representative=None) -> HomologyClassTable:
    """``H^k`` for ``k`` in ``[0, D]`` via the complex ``Hom(Pr_k, F_p)``.

    The coboundary sends ``phi`` to ``(-1)^k phi o d_{k+1}``.  Each nonzero
    class is matched with its label ``(a, j)`` and certified by checking that
    ``psi`` of the representative cocycle spans the cohomology.

    Args:
        representative: ``(a, j) -> PeriodicGradedMap``; defaults to
            ``chi^a iota^j``.
    """
    p, l = res.p, res.l
    D = degree_bound if degree_bound is not None else 2 * l
    if D < 2 * l:
        raise ValueError(f"degree bound must be at least 2l = {2 * l}")
    if representative is None:
        def representative(a, j):
            return chi_iota(res, j) if a else iota_power(res, j)

    cochains = [hom_to_trivial(res, res.module_at(k)) for k in range(D + 2)]
    cob_rank = []
    for k in range(D + 1):
        C, Cn = cochains[k], cochains[k + 1]
        if len(C) == 0 or len(Cn) == 0:
            # a nonzero image in a zero space is impossible; still check it is zero
            if len(C):
                img = np.mod(C @ res.diff_matrix(k + 1), p)
                if img.any():
                    raise ArithmeticError(f"coboundary out of degree {k} leaves Hom(-, F_p)")
            cob_rank.append(0)
            continue
        img = np.mod((-1) ** k * (C @ res.diff_matrix(k + 1)), p)
        coeffs = []
        for row in img:
            x = solve(Cn.T, row, p)
            if x is None:
                raise ArithmeticError(f"coboundary out of degree {k} leaves Hom(-, F_p)")
            coeffs.append(x)
        cob_rank.append(rank(np.array(coeffs), p))

    rows = []
    for k in range(D + 1):
        dim = len(cochains[k]) - cob_rank[k] - (cob_rank[k - 1] if k else 0)
        label = ext_label(k, l)
        certified = False
        if dim == 1 and label is not None:
            g = representative(*label)
            certified = bool(g.degree == k and m1(g).is_zero() and rank(
                np.vstack([cochains[k], psi(g)]), p) == 1 and np.mod(psi(g), p).any())
        rows.append(HomologyRow(k, dim, label if dim else None, certified))
    return HomologyClassTable(p, l, rows)
