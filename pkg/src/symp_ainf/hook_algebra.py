"""
The hook part of the Wedderburn image of Z_(p) S_p and its reduction mod p.

For a prime ``p >= 3`` the group ring Z_(p) S_p is realised as the subring
``Lambda`` of the product of matrix rings ``Gamma`` cut out by congruences
between neighbouring hook blocks.  Only the hook blocks lambda^1..lambda^p are
stored: every idempotent and every morphism between the projectives P_k is
supported on them.

Elements of ``Gamma`` are :class:`HookTupleElement` (one integer matrix per hook
block).  Elements of ``Lambda_bar = Lambda / p Lambda`` are coordinate vectors
mod p with respect to the beta basis of ``Lambda`` (see :class:`LambdaBasis`);
reducing the ``Gamma`` entries mod p would not do, because ``Lambda`` meets
``p Gamma`` in more than ``p Lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb

import numpy as np

from .gfp_linalg import is_prime, rank, row_basis


@dataclass(frozen=True)
class HookProfile:
    """Shape data of the hook blocks for a prime ``p >= 3``."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 3:
            raise ValueError(f"hook profile needs a prime p >= 3, got {self.p}")

    @property
    def l(self) -> int:
        return 2 * (self.p - 1)

    def n_c(self, k: int) -> int:
        return comb(self.p - 2, k - 2) if k >= 2 else 0

    def n_b(self, k: int) -> int:
        return comb(self.p - 2, k - 1) if k >= 1 else 0

    def n_lam(self, k: int) -> int:
        return comb(self.p - 1, k - 1)

    def omega(self, i: int) -> int:
        """Index of the projective sitting in homological degree ``i``."""
        r = i % self.l
        return r + 1 if r <= self.p - 2 else self.l - r

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """Start of block ``k`` (1-based) inside the flat layout; length p+1."""
        out = [0]
        for k in range(1, self.p + 1):
            out.append(out[-1] + self.n_lam(k) ** 2)
        return tuple(out)

    @property
    def flat_size(self) -> int:
        return self.offsets[-1]

    def flat_index(self, k: int, i: int, j: int) -> int:
        """Flat position of entry ``(i, j)`` (1-based) of block ``k``."""
        n = self.n_lam(k)
        if not (1 <= k <= self.p and 1 <= i <= n and 1 <= j <= n):
            raise IndexError(f"no entry ({i},{j}) in block {k}")
        return self.offsets[k - 1] + (i - 1) * n + (j - 1)


@dataclass(frozen=True, eq=False)
class HookTupleElement:
    """An element of the hook part of Gamma: one square matrix per hook block.

    ``modulus`` is ``None`` for integer entries, otherwise the prime the
    entries are reduced by.
    """

    profile: HookProfile
    blocks: tuple[np.ndarray, ...]
    modulus: int | None = None

    def __post_init__(self):
        if len(self.blocks) != self.profile.p:
            raise ValueError("need one block per hook partition")
        for k, b in enumerate(self.blocks, start=1):
            n = self.profile.n_lam(k)
            if b.shape != (n, n):
                raise ValueError(f"block {k} has shape {b.shape}, expected {(n, n)}")

    @classmethod
    def zero(cls, profile: HookProfile, modulus: int | None = None) -> HookTupleElement:
        return cls(profile, tuple(np.zeros((profile.n_lam(k),) * 2, dtype=np.int64)
                                  for k in range(1, profile.p + 1)), modulus)

    @classmethod
    def identity(cls, profile: HookProfile) -> HookTupleElement:
        return cls(profile, tuple(np.eye(profile.n_lam(k), dtype=np.int64)
                                  for k in range(1, profile.p + 1)))

    @classmethod
    def from_flat(cls, profile: HookProfile, flat, modulus: int | None = None) -> HookTupleElement:
        flat = np.asarray(flat, dtype=np.int64)
        off = profile.offsets
        blocks = tuple(flat[off[k - 1]:off[k]].reshape(profile.n_lam(k), profile.n_lam(k)).copy()
                       for k in range(1, profile.p + 1))
        return cls(profile, blocks, modulus)

    def flat(self) -> np.ndarray:
        return np.concatenate([b.reshape(-1) for b in self.blocks])

    def block(self, k: int) -> np.ndarray:
        return self.blocks[k - 1]

    def sub(self, k: int, part: str) -> np.ndarray:
        """Sub-block ``'cc'``, ``'bc'``, ``'cb'`` or ``'bb'`` of block ``k``.

        The first letter names the columns, the second the rows, so ``'bc'``
        is the top-right block (c-rows, b-columns).  The split is after
        row/column ``n_c^k``.
        """
        c = self.profile.n_c(k)
        cols = slice(0, c) if part[0] == "c" else slice(c, None)
        rows = slice(0, c) if part[1] == "c" else slice(c, None)
        return self.blocks[k - 1][rows, cols]

    def _wrap(self, blocks) -> HookTupleElement:
        if self.modulus is not None:
            blocks = tuple(np.mod(b, self.modulus) for b in blocks)
        return HookTupleElement(self.profile, tuple(blocks), self.modulus)

    def _check(self, other: HookTupleElement):
        if other.profile != self.profile or other.modulus != self.modulus:
            raise ValueError("elements live in different rings")

    def __add__(self, other: HookTupleElement) -> HookTupleElement:
        self._check(other)
        return self._wrap(a + b for a, b in zip(self.blocks, other.blocks))

    def __sub__(self, other: HookTupleElement) -> HookTupleElement:
        self._check(other)
        return self._wrap(a - b for a, b in zip(self.blocks, other.blocks))

    def __neg__(self) -> HookTupleElement:
        return self._wrap(-a for a in self.blocks)

    def __rmul__(self, c: int) -> HookTupleElement:
        return self._wrap(int(c) * a for a in self.blocks)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.__rmul__(other)
        self._check(other)
        return self._wrap(a @ b for a, b in zip(self.blocks, other.blocks))

    def __eq__(self, other) -> bool:
        if not isinstance(other, HookTupleElement):
            return NotImplemented
        return (self.profile == other.profile and self.modulus == other.modulus
                and all(np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks)))

    def __hash__(self):
        return hash((self.profile, self.modulus, self.flat().tobytes()))

    def is_zero(self) -> bool:
        return all(not b.any() for b in self.blocks)

    def reduce(self, p: int) -> HookTupleElement:
        """Entrywise reduction mod ``p`` (a ring map Gamma -> Gamma/p)."""
        return HookTupleElement(self.profile, tuple(np.mod(b, p) for b in self.blocks), p)

    def __repr__(self):
        parts = ", ".join(str(b.tolist()) for b in self.blocks)
        return f"HookTupleElement(p={self.profile.p}, [{parts}])"


def eta(profile: HookProfile, k: int, i: int, j: int) -> HookTupleElement:
    """Matrix unit: a single 1 at entry ``(i, j)`` of block ``k`` (1-based)."""
    flat = np.zeros(profile.flat_size, dtype=np.int64)
    flat[profile.flat_index(k, i, j)] = 1
    return HookTupleElement.from_flat(profile, flat)


def idempotent_e(profile: HookProfile, k: int) -> HookTupleElement:
    """The idempotent straddling blocks ``k`` and ``k+1``."""
    if not 1 <= k <= profile.p - 1:
        raise ValueError(f"idempotent index must lie in [1, {profile.p - 1}], got {k}")
    nc = profile.n_c(k)
    return eta(profile, k, nc + 1, nc + 1) + eta(profile, k + 1, 1, 1)


def lambda_member(x: HookTupleElement) -> bool:
    """Whether an integral tuple satisfies the congruences defining Lambda."""
    prof, p = x.profile, x.profile.p
    for k in range(1, p + 1):
        if np.mod(x.sub(k, "bc"), p).any():
            return False
    for k in range(1, p):
        if np.mod(x.sub(k, "bb") - x.sub(k + 1, "cc"), p).any():
            return False
    return True


@dataclass(frozen=True)
class BetaElement:
    """One beta basis element of Lambda.

    ``kind`` is one of ``"<=>"`` (bb^k paired with cc^{k+1}), ``"<="``
    (p times bb^k), ``"<-"`` (a cb entry) or ``"->"`` (p times a bc entry).
    """

    kind: str
    k: int
    x: int
    y: int
    value: HookTupleElement = field(repr=False, compare=False)


class LambdaBasis:
    """The beta basis of Lambda and the coordinate maps it induces.

    Coordinates are exact: :meth:`coordinates` raises if the input is not in
    Lambda, and ``lift(coordinates(x)) == x`` for every ``x`` in Lambda.
    """

    KINDS = ("<=>", "<=", "<-", "->")

    def __init__(self, profile: HookProfile):
        self.profile = prof = profile
        p = prof.p
        self.elements: list[BetaElement] = []
        for k in range(1, p + 1):
            nc, nb = prof.n_c(k), prof.n_b(k)
            if k <= p - 1:
                for x in range(1, nb + 1):
                    for y in range(1, nb + 1):
                        bb = eta(prof, k, nc + x, nc + y)
                        self.elements.append(BetaElement("<=>", k, x, y, bb + eta(prof, k + 1, x, y)))
                        self.elements.append(BetaElement("<=", k, x, y, p * bb))
            for x in range(1, nb + 1):
                for y in range(1, nc + 1):
                    self.elements.append(BetaElement("<-", k, x, y, eta(prof, k, nc + x, y)))
            for x in range(1, nc + 1):
                for y in range(1, nb + 1):
                    self.elements.append(BetaElement("->", k, x, y, p * eta(prof, k, x, nc + y)))
        self.index = {(b.kind, b.k, b.x, b.y): i for i, b in enumerate(self.elements)}
        self._build_maps()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i) -> BetaElement:
        return self.elements[i]

    def _build_maps(self):
        prof, p = self.profile, self.profile.p
        size = prof.flat_size
        # lift: g = c[primary] * primary_coef, then g[bb] += p * c[<=]
        primary = np.full(size, -1, dtype=np.int64)
        primary_coef = np.zeros(size, dtype=np.int64)
        extra_pos, extra_src = [], []
        direct_idx, direct_pos = [], []
        div_idx, div_pos = [], []
        pair_idx, pair_pos, pair_src = [], [], []
        for i, b in enumerate(self.elements):
            nc = prof.n_c(b.k)
            if b.kind == "<=>":
                bb = prof.flat_index(b.k, nc + b.x, nc + b.y)
                cc = prof.flat_index(b.k + 1, b.x, b.y)
                primary[bb], primary_coef[bb] = i, 1
                primary[cc], primary_coef[cc] = i, 1
                direct_idx.append(i)
                direct_pos.append(cc)
            elif b.kind == "<=":
                bb = prof.flat_index(b.k, nc + b.x, nc + b.y)
                extra_pos.append(bb)
                extra_src.append(i)
                pair_idx.append(i)
                pair_pos.append(bb)
                pair_src.append(self.index[("<=>", b.k, b.x, b.y)])
            elif b.kind == "<-":
                pos = prof.flat_index(b.k, nc + b.x, b.y)
                primary[pos], primary_coef[pos] = i, 1
                direct_idx.append(i)
                direct_pos.append(pos)
            else:
                pos = prof.flat_index(b.k, b.x, nc + b.y)
                primary[pos], primary_coef[pos] = i, p
                div_idx.append(i)
                div_pos.append(pos)
        assert (primary >= 0).all(), "every Gamma entry must be covered"
        arr = lambda v: np.asarray(v, dtype=np.int64)  # noqa: E731
        self._primary, self._primary_coef = primary, primary_coef
        self._extra_pos, self._extra_src = arr(extra_pos), arr(extra_src)
        self._direct = (arr(direct_idx), arr(direct_pos))
        self._div = (arr(div_idx), arr(div_pos))
        self._pair = (arr(pair_idx), arr(pair_pos), arr(pair_src))

    def lift_flat(self, coords) -> np.ndarray:
        """Flat Gamma entries of ``sum_i coords[i] * beta_i``."""
        c = np.asarray(coords, dtype=np.int64)
        g = c[self._primary] * self._primary_coef
        g[self._extra_pos] += self.profile.p * c[self._extra_src]
        return g

    def lift(self, coords) -> HookTupleElement:
        return HookTupleElement.from_flat(self.profile, self.lift_flat(coords))

    def coordinates_flat(self, g) -> np.ndarray:
        p = self.profile.p
        g = np.asarray(g, dtype=np.int64)
        c = np.zeros(len(self.elements), dtype=np.int64)
        idx, pos = self._direct
        c[idx] = g[pos]
        idx, pos = self._div
        vals = g[pos]
        if np.mod(vals, p).any():
            raise ValueError("element is not in Lambda (bc entry not divisible by p)")
        c[idx] = vals // p
        idx, pos, src = self._pair
        vals = g[pos] - c[src]
        if np.mod(vals, p).any():
            raise ValueError("element is not in Lambda (bb/cc congruence fails)")
        c[idx] = vals // p
        return c

    def coordinates(self, x: HookTupleElement) -> np.ndarray:
        """Integer coordinates of an element of Lambda in the beta basis."""
        if x.modulus is not None:
            raise ValueError("coordinates need an integral element")
        return self.coordinates_flat(x.flat())

    def matrix(self) -> np.ndarray:
        """Columns are the beta elements as flat Gamma vectors."""
        return np.stack([b.value.flat() for b in self.elements], axis=1)


def lambda_basis(profile: HookProfile) -> LambdaBasis:
    return LambdaBasis(profile)


@dataclass(frozen=True, eq=False)
class ProjMorphism:
    """A morphism ``P_source -> P_target`` stored as ``e_target * x * e_source``.

    ``value`` is a :class:`HookTupleElement` for integral morphisms, or a
    coordinate vector in ``algebra`` for morphisms over F_p.  Composition is
    multiplication of values, ``(g o f).value = g.value * f.value``.
    """

    source: int
    target: int
    value: object
    algebra: ReducedAlgebra | None = None

    def compose(self, f: ProjMorphism) -> ProjMorphism:
        """``self o f``."""
        if f.target != self.source:
            raise ValueError(f"cannot compose P_{self.source}->P_{self.target} "
                             f"after P_{f.source}->P_{f.target}")
        if self.algebra is None:
            val = self.value * f.value
        else:
            val = self.algebra.mul(self.value, f.value)
        return ProjMorphism(f.source, self.target, val, self.algebra)

    def _combine(self, other: ProjMorphism, sign: int) -> ProjMorphism:
        if (other.source, other.target) != (self.source, self.target):
            raise ValueError("morphisms have different source or target")
        if self.algebra is None:
            val = self.value + other.value if sign > 0 else self.value - other.value
        else:
            val = np.mod(self.value + sign * other.value, self.algebra.p)
        return ProjMorphism(self.source, self.target, val, self.algebra)

    def __add__(self, other: ProjMorphism) -> ProjMorphism:
        return self._combine(other, 1)

    def __sub__(self, other: ProjMorphism) -> ProjMorphism:
        return self._combine(other, -1)

    def scale(self, c: int) -> ProjMorphism:
        if self.algebra is None:
            return ProjMorphism(self.source, self.target, c * self.value)
        return ProjMorphism(self.source, self.target, np.mod(c * self.value, self.algebra.p),
                            self.algebra)

    def is_zero(self) -> bool:
        if self.algebra is None:
            return self.value.is_zero()
        return not np.any(self.value)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjMorphism):
            return NotImplemented
        if (self.source, self.target) != (other.source, other.target):
            return False
        if self.algebra is None:
            return self.value == other.value
        return np.array_equal(self.value, other.value)

    __hash__ = None


class GeneratorTable:
    """The named morphisms between the projectives P_1..P_{p-1}.

    ``table.identity(k)`` is ``e_k``; ``table[t, s]`` is the morphism
    ``e_{t,s} : P_s -> P_t`` (defined for ``|t - s| == 1`` and for the two
    loops ``(1, 1)`` and ``(p-1, p-1)``).
    """

    def __init__(self, profile: HookProfile, identities: dict, arrows: dict):
        self.profile = profile
        self._identities = identities
        self._arrows = arrows

    def identity(self, k: int) -> ProjMorphism:
        return self._identities[k]

    def __getitem__(self, key) -> ProjMorphism:
        t, s = key
        return self._arrows[(t, s)]

    def arrows(self) -> dict:
        return dict(self._arrows)

    def items(self):
        yield from ((("id", k), m) for k, m in sorted(self._identities.items()))
        yield from sorted(self._arrows.items())


def gen_morphisms(profile: HookProfile) -> GeneratorTable:
    """The integral generators of the resolution over Z_(p)."""
    p = profile.p
    e = {k: idempotent_e(profile, k) for k in range(1, p)}
    ids = {k: ProjMorphism(k, k, e[k]) for k in range(1, p)}
    arrows = {
        (1, 1): ProjMorphism(1, 1, p * eta(profile, 1, 1, 1)),
        (p - 1, p - 1): ProjMorphism(p - 1, p - 1, p * eta(profile, p, 1, 1)),
    }
    for k in range(1, p - 1):
        nc = profile.n_c(k + 1)
        arrows[(k + 1, k)] = ProjMorphism(k, k + 1, eta(profile, k + 1, nc + 1, 1))
        arrows[(k, k + 1)] = ProjMorphism(k + 1, k, p * eta(profile, k + 1, 1, nc + 1))
    for (t, s), m in arrows.items():
        # the value must be e_t x e_s for the morphism to be well defined
        assert m.value == e[t] * m.value * e[s], (t, s)
    return GeneratorTable(profile, ids, arrows)


def augmentation_integral(x: HookTupleElement) -> int:
    """The Z_(p)-valued augmentation on P~_1: the scalar lambda^1 block."""
    return int(x.block(1)[0, 0])


class ReducedAlgebra:
    """``Lambda_bar = Lambda / p Lambda``, i.e. F_p S_p (hook part).

    Elements are int64 vectors of beta-coordinates with entries in
    ``[0, p-1]``.  Products go through integral lifts in Gamma.
    """

    def __init__(self, profile: HookProfile, basis: LambdaBasis | None = None):
        self.profile = profile
        self.p = profile.p
        self.basis = basis if basis is not None else LambdaBasis(profile)
        self.dim = len(self.basis)
        self._cache: dict = {}
        off = profile.offsets
        self._slices = [(off[k - 1], off[k], profile.n_lam(k)) for k in range(1, profile.p + 1)]

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def unit(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def reduce(self, x: HookTupleElement) -> np.ndarray:
        """Image of an integral element of Lambda in Lambda_bar."""
        return np.mod(self.basis.coordinates(x), self.p)

    def lift(self, v) -> HookTupleElement:
        return self.basis.lift(np.mod(v, self.p))

    def mul(self, x, y) -> np.ndarray:
        key = (x.tobytes(), y.tobytes())
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not x.any() or not y.any():
            out = self.zero()
        else:
            gx, gy = self.basis.lift_flat(x), self.basis.lift_flat(y)
            g = np.empty_like(gx)
            for a, b, n in self._slices:
                g[a:b] = (gx[a:b].reshape(n, n) @ gy[a:b].reshape(n, n)).reshape(-1)
            out = np.mod(self.basis.coordinates_flat(g), self.p)
        out.setflags(write=False)
        self._cache[key] = out
        return out

    def augmentation(self, v) -> int:
        """The trivial character: the lambda^1 entry of any lift, mod p."""
        return int(self.basis.lift_flat(np.mod(v, self.p))[0]) % self.p


def reduce_algebra(profile: HookProfile, algebra: ReducedAlgebra | None = None,
                   integral: GeneratorTable | None = None) -> GeneratorTable:
    """Reduce the integral generator table mod p."""
    alg = algebra if algebra is not None else ReducedAlgebra(profile)
    integral = integral if integral is not None else gen_morphisms(profile)

    def red(m: ProjMorphism) -> ProjMorphism:
        v = alg.reduce(m.value)
        v.setflags(write=False)
        return ProjMorphism(m.source, m.target, v, alg)

    ids = {k: red(integral.identity(k)) for k in range(1, profile.p)}
    arrows = {key: red(m) for key, m in integral.arrows().items()}
    return GeneratorTable(profile, ids, arrows)


def sandwich_span(algebra: ReducedAlgebra, left, right) -> tuple[np.ndarray, list[int]]:
    """Echelon basis of ``left * Lambda_bar * right`` (``None`` = no factor)."""
    vecs = []
    for i in range(algebra.dim):
        v = algebra.unit(i)
        if left is not None:
            v = algebra.mul(left, v)
        if right is not None:
            v = algebra.mul(v, right)
        if v.any():
            vecs.append(v)
    return row_basis(vecs, algebra.p, ncols=algebra.dim)


def hom_space_basis(algebra: ReducedAlgebra, table: GeneratorTable, k: int, k2: int) -> np.ndarray:
    """Basis (rows, in Lambda_bar coordinates) of Hom(P_k, P_k2) = e_k2 Lambda_bar e_k."""
    B, _ = sandwich_span(algebra, table.identity(k2).value, table.identity(k).value)
    return B


def module_basis(algebra: ReducedAlgebra, table: GeneratorTable, k: int) -> tuple[np.ndarray, list[int]]:
    """Echelon F_p-basis of the right module P_k = e_k Lambda_bar."""
    return sandwich_span(algebra, table.identity(k).value, None)


def lambda_index_exponent(profile: HookProfile) -> int:
    """``log_p [Gamma : Lambda]`` read off from the two defining congruences."""
    p = profile.p
    return sum(profile.n_b(k) ** 2 + profile.n_c(k) * profile.n_b(k) for k in range(1, p + 1))


def basis_index_certificate(basis: LambdaBasis, moduli=(2147483629, 2147483587)) -> bool:
    """Certify ``|det(beta matrix)| = [Gamma : Lambda]``.

    The beta elements lie in Lambda, so the determinant is a multiple of the
    index; equality means they form a Z-basis of Lambda.  Equality is checked
    through ``log|det|`` in floating point and ``det = +-p^N`` modulo two
    large primes.
    """
    from .gfp_linalg import det_mod

    p = basis.profile.p
    N = lambda_index_exponent(basis.profile)
    M = basis.matrix()
    if M.shape[0] != M.shape[1]:
        return False
    sign, logdet = np.linalg.slogdet(M.astype(float))
    if sign == 0 or abs(logdet - N * np.log(p)) > 1e-6 * max(1.0, N):
        return False
    for q in moduli:
        d = det_mod(M, q)
        if d not in (pow(p, N, q), (-pow(p, N, q)) % q):
            return False
    return True


def reductions_independent(basis: LambdaBasis) -> bool:
    """Rank check of the reduced beta elements in Lambda_bar coordinates."""
    p = basis.profile.p
    coords = np.stack([np.mod(basis.coordinates(b.value), p) for b in basis])
    return rank(coords, p) == len(basis)


def _relation_sums(table: GeneratorTable) -> dict:
    """Left-hand sides of the three relations among arrows around each vertex."""
    p = table.profile.p
    sums = {1: table[1, 1] + table[1, 2].compose(table[2, 1])}
    for k in range(2, p - 1):
        sums[k] = table[k, k - 1].compose(table[k - 1, k]) + table[k, k + 1].compose(table[k + 1, k])
    sums[p - 1] = table[p - 1, p - 2].compose(table[p - 2, p - 1]) + table[p - 1, p - 1]
    return sums


def integral_relations(table: GeneratorTable) -> dict[int, bool]:
    """For each vertex ``k``: the loop sum equals ``p`` times the identity, over Z."""
    p = table.profile.p
    return {k: s == table.identity(k).scale(p) for k, s in _relation_sums(table).items()}


def reduced_relations(table: GeneratorTable) -> dict[int, bool]:
    """For each vertex ``k``: the loop sum vanishes over F_p."""
    return {k: s.is_zero() for k, s in _relation_sums(table).items()}
