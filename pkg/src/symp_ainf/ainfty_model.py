"""
The minimal A-infinity model on Ext and its comparison morphism to the
endomorphism dg-algebra, plus generic Koszul-signed identity checkers.

Ext classes are symbols ``(a, j)`` standing for ``chi^a iota^j`` in degree
``a(l-1) + j l``.  The higher products ``m'_n`` only fire for ``n = 2`` and
for ``n = p`` on odd classes; the morphism components ``f_n`` for
``2 <= n <= p-1`` send tensors of odd classes to signed ``gamma_n iota^J``.

Both identity checkers take operation families as callables, so they can be
pointed at any model; the dg-side family is the differential, composition
and zero from arity three on.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .hom_dga import (
    PeriodicGradedMap,
    build_chi,
    build_gamma,
    iota_power,
    m1,
)
from .resolution import PeriodicResolution, build_resolution


@dataclass(frozen=True, order=True)
class ExtBasisElement:
    """The class of ``chi^a iota^j``."""

    a: int
    j: int

    def __post_init__(self):
        if self.a not in (0, 1) or self.j < 0:
            raise ValueError(f"invalid Ext symbol ({self.a}, {self.j})")

    def degree(self, period: int) -> int:
        return self.a * (period - 1) + self.j * period

    def as_dict(self) -> dict:
        return {"a": self.a, "j": self.j}


class ExtVector:
    """Finite F_p-combination of Ext symbols, kept in canonical form."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict | None = None):
        self.p = p
        self.terms: dict[ExtBasisElement, int] = {}
        for b, c in (terms or {}).items():
            self.add(b, c)

    def add(self, b: ExtBasisElement, c: int) -> None:
        c = (self.terms.get(b, 0) + c) % self.p
        if c:
            self.terms[b] = c
        else:
            self.terms.pop(b, None)

    def __iadd__(self, other: ExtVector) -> ExtVector:
        for b, c in other.terms.items():
            self.add(b, c)
        return self

    def scaled(self, c: int) -> ExtVector:
        return ExtVector(self.p, {b: c * v for b, v in self.terms.items()})

    def items(self):
        return sorted(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtVector):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"{c}*({b.a},{b.j})" for b, c in self.items()) or "0"
        return f"ExtVector[{body}]"


ExtTensor = tuple  # tuple of ExtBasisElement


def ext_tensor(pairs: Iterable) -> ExtTensor:
    """``[(a, j), ...] -> tuple of ExtBasisElement``."""
    return tuple(b if isinstance(b, ExtBasisElement) else ExtBasisElement(*b) for b in pairs)


@dataclass
class SignedTerm:
    """A coefficient together with the outputs of a tensor of operations."""

    coeff: int
    payload: list


def koszul_sign(op_degrees: Sequence[int], block_degrees: Sequence[int]) -> int:
    """Sign of ``(g_1 x ... x g_r)(b_1 x ... x b_r)``.

    Each ``g_v`` moves past every earlier block ``b_u``, contributing
    ``(-1)^{|g_v| |b_u|}``.
    """
    exponent = 0
    seen = 0
    for gd, bd in zip(op_degrees, block_degrees):
        exponent += gd * seen
        seen += bd
    return -1 if exponent % 2 else 1


def koszul_apply(ops: Sequence[tuple[Callable, int, int]], args: Sequence, degree_of: Callable) -> SignedTerm | None:
    """Apply a tensor product of operations to a tensor of homogeneous arguments.

    Args:
        ops: ``(function, arity, degree)`` triples; ``function`` takes a tuple
            of arguments and returns a value or ``None`` for zero.
        args: the arguments, consumed left to right by the arities.
        degree_of: degree of a single argument.

    Returns:
        The signed list of outputs, or ``None`` when some output is zero.
    """
    if sum(a for _, a, _ in ops) != len(args):
        raise ValueError(f"arities {[a for _, a, _ in ops]} do not partition {len(args)} arguments")
    blocks, pos = [], 0
    for _, arity, _ in ops:
        blocks.append(tuple(args[pos:pos + arity]))
        pos += arity
    sign = koszul_sign([d for _, _, d in ops], [sum(degree_of(x) for x in b) for b in blocks])
    outputs = []
    for (fn, _, _), block in zip(ops, blocks):
        out = fn(block)
        if out is None:
            return None
        outputs.append(out)
    return SignedTerm(sign, outputs)


@dataclass
class OperationFamily:
    """Graded multilinear operations ``op_n`` of degree ``degree(n)``.

    ``apply(n, args)`` returns a value or ``None`` for zero; ``support(n)``
    may return ``False`` for arities known to vanish, which lets the
    checkers skip them.
    """

    apply: Callable
    degree: Callable[[int], int]
    support: Callable[[int], bool] = lambda n: True


def stasheff_residual(ms: OperationFamily, t: ExtTensor, p: int, degree_of: Callable) -> ExtVector:
    """``sum (-1)^{rs+t} m_{r+1+t} o (1^r x m_s x 1^t)`` applied to ``t``."""
    n = len(t)
    total = ExtVector(p)
    ident = (lambda b: b[0], 1, 0)
    for s in range(1, n + 1):
        if not ms.support(s):
            continue
        for r in range(0, n - s + 1):
            tt = n - r - s
            if not ms.support(r + 1 + tt):
                continue
            ops = [ident] * r + [(lambda b, s=s: ms.apply(s, b), s, ms.degree(s))] + [ident] * tt
            term = koszul_apply(ops, t, degree_of)
            if term is None:
                continue
            sign = term.coeff * (-1 if (r * s + tt) % 2 else 1)
            inner = term.payload[r]
            for b, c in inner.items():
                args = tuple(term.payload[:r]) + (b,) + tuple(term.payload[r + 1:])
                out = ms.apply(r + 1 + tt, args)
                if out is not None:
                    total += out.scaled(sign * c)
    return total


def compositions(n: int, allowed: Callable[[int], bool]) -> Iterable[tuple[int, ...]]:
    """Ordered tuples of positive parts summing to ``n``, each part allowed."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        if allowed(first):
            for rest in compositions(n - first, allowed):
                yield (first,) + rest


def morphism_residual(fs: OperationFamily, ms_source: OperationFamily, ms_target: OperationFamily,
                      t: ExtTensor, degree_of: Callable, zero: Callable[[int], object]):
    """LHS minus RHS of the A-infinity morphism identity on ``t``.

    LHS is ``sum (-1)^{rs+t} f_{r+1+t} o (1^r x m'_s x 1^t)`` and RHS is
    ``sum (-1)^v m_r o (f_{i_1} x ... x f_{i_r})`` with
    ``v = sum_{u<w} (1 - i_w) i_u``.  Returns ``(residual, lhs, rhs)``; the
    values are added with ``+`` and scaled with ``.scale``.
    """
    n = len(t)
    target_degree = sum(degree_of(x) for x in t) + 2 - n
    lhs = rhs = None

    def acc(total, value, c):
        value = value.scale(c)
        return value if total is None else total + value

    ident = (lambda b: b[0], 1, 0)
    for s in range(1, n + 1):
        if not ms_source.support(s):
            continue
        for r in range(0, n - s + 1):
            tt = n - r - s
            if not fs.support(r + 1 + tt):
                continue
            ops = [ident] * r + [(lambda b, s=s: ms_source.apply(s, b), s, ms_source.degree(s))] + [ident] * tt
            term = koszul_apply(ops, t, degree_of)
            if term is None:
                continue
            sign = term.coeff * (-1 if (r * s + tt) % 2 else 1)
            for b, c in term.payload[r].items():
                args = tuple(term.payload[:r]) + (b,) + tuple(term.payload[r + 1:])
                out = fs.apply(r + 1 + tt, args)
                if out is not None:
                    lhs = acc(lhs, out, sign * c)

    for parts in compositions(n, fs.support):
        r = len(parts)
        if not ms_target.support(r):
            continue
        ops = [(lambda b, i=i: fs.apply(i, b), i, fs.degree(i)) for i in parts]
        term = koszul_apply(ops, t, degree_of)
        if term is None:
            continue
        v = sum((1 - parts[w]) * parts[u] for w in range(r) for u in range(w))
        out = ms_target.apply(r, tuple(term.payload))
        if out is not None:
            rhs = acc(rhs, out, term.coeff * (-1 if v % 2 else 1))

    if target_degree < 0:
        if lhs is not None or rhs is not None:
            raise ArithmeticError("nonzero term in negative degree")
        return None, None, None
    lhs = lhs if lhs is not None else zero(target_degree)
    rhs = rhs if rhs is not None else zero(target_degree)
    return lhs - rhs, lhs, rhs


class MinimalModel:
    """The A-infinity structure on Ext and the morphism into the dg-algebra.

    Args:
        res: resolution for a prime ``p >= 3``.
        mutation: ``None``, ``"f2_sign"`` or ``"gamma2_sign"``; the last two
            deliberately break the model, to test the checkers.
    """

    def __init__(self, res: PeriodicResolution, mutation: str | None = None):
        if mutation not in (None, "f2_sign", "gamma2_sign"):
            raise ValueError(f"unknown mutation {mutation!r}")
        self.res = res
        self.p = res.p
        self.l = res.l
        self.mutation = mutation
        self._iota: dict[int, PeriodicGradedMap] = {}
        self._f_cache: dict = {}
        self._setup()

    def _setup(self):
        self.chi = build_chi(self.res)
        self.gammas = {k: build_gamma(self.res, k) for k in range(2, self.p)}
        if self.mutation == "gamma2_sign":
            self.gammas[2] = self.gammas[2].scale(-1)

    def iota(self, j: int) -> PeriodicGradedMap:
        if j not in self._iota:
            self._iota[j] = iota_power(self.res, j)
        return self._iota[j]

    def degree(self, b: ExtBasisElement) -> int:
        return b.degree(self.l)

    def basis_patterns(self, n: int) -> Iterable[tuple[int, ...]]:
        return itertools.product((0, 1), repeat=n)

    # minimal model
    def m_prime(self, n: int, t: ExtTensor) -> ExtVector | None:
        p = self.p
        if len(t) != n:
            raise ValueError("arity mismatch")
        if all(b.a == 1 for b in t):
            if n != p:
                return None
            return ExtVector(p, {ExtBasisElement(0, p - 1 + sum(b.j for b in t)): (-1) ** p})
        if n != 2:
            return None
        x, y = t
        return ExtVector(p, {ExtBasisElement(x.a + y.a, x.j + y.j): 1})

    def m_prime_support(self, n: int) -> bool:
        return n in (2, self.p)

    # morphism to the dg-algebra
    def f_map(self, n: int, t: ExtTensor) -> PeriodicGradedMap | None:
        if len(t) != n:
            raise ValueError("arity mismatch")
        key = (n, t)
        if key in self._f_cache:
            return self._f_cache[key]
        out = self._f_uncached(n, t)
        self._f_cache[key] = out
        return out

    def _f_uncached(self, n: int, t: ExtTensor) -> PeriodicGradedMap | None:
        J = sum(b.j for b in t)
        if n == 1:
            (b,) = t
            return self.chi.compose(self.iota(b.j)) if b.a else self.iota(b.j)
        if n >= self.p or any(b.a == 0 for b in t):
            return None
        g = self.gammas[n].compose(self.iota(J))
        sign = (-1) ** (n - 1)
        if self.mutation == "f2_sign" and n == 2:
            sign = -sign
        return g.scale(sign)

    def f_support(self, n: int) -> bool:
        return 1 <= n <= self.p - 1

    # families for the generic checkers
    def source_family(self) -> OperationFamily:
        return OperationFamily(self.m_prime, lambda n: 2 - n, self.m_prime_support)

    def morphism_family(self) -> OperationFamily:
        return OperationFamily(self.f_map, lambda n: 1 - n, self.f_support)

    def target_family(self) -> OperationFamily:
        def apply(r, args):
            if r == 1:
                return m1(args[0])
            if r == 2:
                return args[0].compose(args[1])
            return None
        return OperationFamily(apply, lambda r: 2 - r, lambda r: r in (1, 2))

    def zero_map(self, degree: int) -> PeriodicGradedMap:
        return PeriodicGradedMap.zero(self.res, degree)

    def check_stasheff(self, t: ExtTensor) -> ExtVector:
        return stasheff_residual(self.source_family(), t, self.p, self.degree)

    def check_finfrel(self, t: ExtTensor) -> PeriodicGradedMap | None:
        residual, _, _ = morphism_residual(self.morphism_family(), self.source_family(),
                                           self.target_family(), t, self.degree, self.zero_map)
        return residual


def m_prime(model: MinimalModel, n: int, t) -> ExtVector:
    """``m'_n(t)`` as an ExtVector (zero vector instead of ``None``)."""
    out = model.m_prime(n, ext_tensor(t))
    return out if out is not None else ExtVector(model.p)


def f_map(model: MinimalModel, n: int, t) -> PeriodicGradedMap | None:
    return model.f_map(n, ext_tensor(t))


@dataclass
class CheckResult:
    identity: str
    n: int
    count: int
    ok: bool
    counterexample: list | None = None

    def as_dict(self) -> dict:
        return {"identity": self.identity, "n": self.n, "count": self.count, "ok": self.ok,
                "counterexample": self.counterexample}


@dataclass
class VerificationReport:
    p: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if not c.ok), None)

    def as_dict(self) -> dict:
        return {"p": self.p, "ok": self.ok, "checks": [c.as_dict() for c in self.checks]}


def sweep_grid(model: MinimalModel, n: int, j_max: int, samples: int, rng: np.random.Generator,
               exhaustive_j: bool = False) -> list[ExtTensor]:
    """All ``a``-patterns with ``j = 0``, then ``samples`` random tensors.

    Half of the random tensors are all-odd, where the higher operations
    live; the rest have uniform ``a``-patterns.
    """
    grid = [ext_tensor(zip(a, [0] * n)) for a in model.basis_patterns(n)]
    if exhaustive_j:
        grid = [ext_tensor(zip(a, js)) for a in model.basis_patterns(n)
                for js in itertools.product((0, 1), repeat=n)]
    patterns = list(model.basis_patterns(n))
    odd = tuple(max(a) for a in zip(*patterns)) if patterns else ()
    for i in range(samples):
        a = odd if i % 2 == 0 else patterns[int(rng.integers(len(patterns)))]
        js = rng.integers(0, j_max + 1, n)
        grid.append(ext_tensor(zip(a, (int(j) for j in js))))
    return grid


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("AINF_THREADS", "1")))
    except ValueError:
        return 1


def _run_cells(model, identity: str, n: int, grid: list[ExtTensor]) -> CheckResult:
    check = model.check_stasheff if identity == "stasheff" else model.check_finfrel
    for t in grid:
        residual = check(t)
        if residual is not None and not residual.is_zero():
            return CheckResult(identity, n, len(grid), False, [b.as_dict() for b in t])
    return CheckResult(identity, n, len(grid), True)


def verify_model(model_or_res, j_max: int = 3, samples: int = 200, seed: int = 0,
                 exhaustive_j: bool = False, n_max: int | None = None) -> VerificationReport:
    """Run both identity families over the verification grid.

    The morphism identity is checked for ``n`` in ``[1, 2p-2]`` and the
    Stasheff identity for ``n`` in ``[1, 2p-1]``.  Since ``f_n = 0`` for
    ``n >= p`` and ``m'_n = 0`` for ``n >= p+1``, higher arities follow.
    Cells are distributed over ``AINF_THREADS`` workers and merged in a
    fixed order.
    """
    model = model_or_res if isinstance(model_or_res, MinimalModel) else MinimalModel(model_or_res)
    p = model.p
    if exhaustive_j and p > 5:
        raise ValueError("the exhaustive j sweep is offered for p <= 5 only")
    rng = np.random.default_rng(seed)
    top = n_max if n_max is not None else 2 * p - 1
    cells = []
    for n in range(1, top + 1):
        grid = sweep_grid(model, n, j_max, samples, rng, exhaustive_j)
        if n <= top - 1 or n_max is not None:
            cells.append(("finfrel", n, grid))
        cells.append(("stasheff", n, grid))
    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda c: _run_cells(model, *c), cells))
    else:
        results = [_run_cells(model, *c) for c in cells]
    results.sort(key=lambda c: (c.identity != "finfrel", c.n))
    return VerificationReport(p, results)


def model_table(model: MinimalModel, n: int, degree_max: int) -> list[dict]:
    """Records ``{n, args, result}`` for ``m'_n`` on basis tensors of total degree <= ``degree_max``."""
    symbols = [ExtBasisElement(a, j) for j in range(degree_max // model.l + 1) for a in (0, 1)
               if ExtBasisElement(a, j).degree(model.l) <= degree_max]
    if model.l == 1:
        symbols = [ExtBasisElement(0, j) for j in range(degree_max + 1)]
    records = []
    for t in itertools.product(symbols, repeat=n):
        if sum(model.degree(b) for b in t) > degree_max:
            continue
        out = model.m_prime(n, t)
        if out is None or out.is_zero():
            result = None
        else:
            ((b, c),) = out.items()
            result = {"coeff": int(c), "a": b.a, "j": b.j}
        records.append({"n": n, "args": [b.as_dict() for b in t], "result": result})
    return records


def build_model(p: int, mutation: str | None = None) -> MinimalModel:
    from .hook_algebra import HookProfile

    return MinimalModel(build_resolution(HookProfile(p)), mutation)
