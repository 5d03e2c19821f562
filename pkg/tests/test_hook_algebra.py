from __future__ import annotations

from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symp_ainf.hook_algebra import (
    HookProfile,
    HookTupleElement,
    LambdaBasis,
    ProjMorphism,
    ReducedAlgebra,
    basis_index_certificate,
    eta,
    gen_morphisms,
    hom_space_basis,
    idempotent_e,
    integral_relations,
    lambda_index_exponent,
    lambda_member,
    module_basis,
    reduce_algebra,
    reduced_relations,
    reductions_independent,
    sandwich_span,
)

from conftest import cached_resolution

# Frozen from the brute-force sandwich oracle (hom_space_basis over every
# reduced basis element); rows are the source index, columns the target.
HOM_DIMS_P5 = [[2, 1, 0, 0], [1, 2, 1, 0], [0, 1, 2, 1], [0, 0, 1, 2]]
MODULE_DIMS = {3: [3, 3], 5: [5, 10, 10, 5], 7: [7, 21, 35, 35, 21, 7]}


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_profile_invariants(p):
    prof = HookProfile(p)
    assert prof.l == 2 * (p - 1)
    for k in range(1, p + 1):
        assert prof.n_c(k) + prof.n_b(k) == prof.n_lam(k) == comb(p - 1, k - 1)
    assert prof.n_c(1) == 0 and prof.n_b(p) == 0
    assert prof.omega(0) == 1 and prof.omega(p - 2) == prof.omega(p - 1) == p - 1
    assert prof.omega(prof.l - 1) == 1
    assert all(prof.omega(i + prof.l) == prof.omega(i) for i in range(3 * prof.l))


@pytest.mark.parametrize("bad", [1, 2, 4, 9])
def test_profile_rejects(bad):
    with pytest.raises(ValueError):
        HookProfile(bad)


def test_eta_matrix_units():
    prof = HookProfile(5)
    x = eta(prof, 1, 1, 1)
    assert x.block(1).tolist() == [[1]] and all(not x.block(k).any() for k in range(2, 6))
    y = eta(prof, 2, 1, 1)
    assert y.block(2).shape == (4, 4) and y.block(2).sum() == 1 and y.block(2)[0, 0] == 1
    assert eta(prof, 3, 2, 4) * eta(prof, 3, 4, 1) == eta(prof, 3, 2, 1)
    assert (eta(prof, 3, 2, 4) * eta(prof, 3, 3, 1)).is_zero()
    with pytest.raises(IndexError):
        eta(prof, 6, 1, 1)
    with pytest.raises(IndexError):
        eta(prof, 2, 5, 1)


def test_idempotent_p3():
    e = idempotent_e(HookProfile(3), 1)
    assert [b.tolist() for b in e.blocks] == [[[1]], [[1, 0], [0, 0]], [[0]]]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_idempotents(p):
    prof = HookProfile(p)
    es = {k: idempotent_e(prof, k) for k in range(1, p)}
    for k, e in es.items():
        assert e * e == e
        assert lambda_member(e)
        for k2, f in es.items():
            if abs(k - k2) >= 2:
                assert (e * f).is_zero()
    with pytest.raises(ValueError):
        idempotent_e(prof, p)


def test_membership_examples():
    prof = HookProfile(5)
    assert not lambda_member(eta(prof, 2, 1, 1))
    for k in range(1, 6):
        n = prof.n_lam(k)
        assert lambda_member(5 * eta(prof, k, n, 1))
        assert lambda_member(5 * eta(prof, k, 1, n))


@pytest.mark.parametrize("p,count", [(3, 6), (5, 70), (7, 924)])
def test_basis_count_and_members(p, count):
    basis = LambdaBasis(HookProfile(p))
    assert len(basis) == count == comb(2 * p - 2, p - 1)
    assert all(lambda_member(b.value) for b in basis)
    assert {b.kind for b in basis} == {"<=>", "<=", "<-", "->"}
    assert reductions_independent(basis)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_basis_index(p):
    prof = HookProfile(p)
    assert basis_index_certificate(LambdaBasis(prof))
    assert lambda_index_exponent(prof) == {3: 3, 5: 35, 7: 462}[p]


def test_coordinates_roundtrip_and_rejection():
    prof = HookProfile(5)
    basis = LambdaBasis(prof)
    rng = np.random.default_rng(1)
    c = rng.integers(-9, 9, len(basis))
    assert np.array_equal(basis.coordinates(basis.lift(c)), c)
    with pytest.raises(ValueError):
        basis.coordinates(eta(prof, 2, 1, 1))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_integral_relations(p):
    prof = HookProfile(p)
    table = gen_morphisms(prof)
    assert all(integral_relations(table).values())
    # the first relation, spelled out
    lhs = table[1, 1] + table[1, 2].compose(table[2, 1])
    assert lhs == table.identity(1).scale(p)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_reduced_relations(p):
    prof = HookProfile(p)
    table = reduce_algebra(prof)
    assert all(reduced_relations(table).values())
    alg = table.identity(1).algebra
    for k in range(1, p):
        e = table.identity(k)
        for m in [table[t, s] for (t, s) in table.arrows() if s == k]:
            assert m.compose(e) == m
    assert (table[1, 2].compose(table[2, 1]) + table[1, 1]).is_zero()
    # p times an element of Lambda reduces to zero
    assert not alg.reduce(p * idempotent_e(prof, 1)).any()
    assert not alg.reduce(p * gen_morphisms(prof)[2, 1].value).any()
    # p times an element of Gamma need not: the cc entry of block 2 is only
    # congruent to a bb entry of block 1
    assert alg.reduce(p * eta(prof, 2, 1, 1)).any()


def test_composition_checks_endpoints():
    table = reduce_algebra(HookProfile(5))
    with pytest.raises(ValueError):
        table[2, 1].compose(table[2, 3])


def test_hom_dims_p5():
    prof = HookProfile(5)
    alg = ReducedAlgebra(prof)
    table = reduce_algebra(prof, alg)
    dims = [[len(hom_space_basis(alg, table, k, k2)) for k2 in range(1, 5)] for k in range(1, 5)]
    assert dims == HOM_DIMS_P5


@pytest.mark.parametrize("p", [3, 5, 7])
def test_module_dims(p):
    prof = HookProfile(p)
    alg = ReducedAlgebra(prof)
    table = reduce_algebra(prof, alg)
    dims = [len(module_basis(alg, table, k)[0]) for k in range(1, p)]
    assert dims == MODULE_DIMS[p] == [prof.n_lam(k) + prof.n_lam(k + 1) for k in range(1, p)]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_distant_homs_vanish(p):
    res = cached_resolution(p)
    for k in range(1, p):
        for k2 in range(1, p):
            if abs(k - k2) > 1:
                assert len(hom_space_basis(res.algebra, res.table, k, k2)) == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4),
       st.randoms(use_true_random=False))
def test_composition_is_value_product(p, a, b, c, rnd):
    a, b, c = (min(x, p - 1) for x in (a, b, c))
    res = cached_resolution(p)
    alg = res.algebra
    rng = np.random.default_rng(rnd.randrange(2**32))

    def rand_hom(src, tgt):
        B = sandwich_span(alg, res.identity(tgt).value, res.identity(src).value)[0]
        v = rng.integers(0, p, len(B)) @ B if len(B) else alg.zero()
        return ProjMorphism(src, tgt, np.mod(v, p), alg)

    f, g = rand_hom(a, b), rand_hom(b, c)
    gf = g.compose(f)
    assert np.array_equal(gf.value, alg.mul(g.value, f.value))
    # the product stays between the right idempotents
    assert np.array_equal(alg.mul(alg.mul(res.identity(c).value, gf.value), res.identity(a).value), gf.value)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 5]), st.randoms(use_true_random=False))
def test_reduced_product_associative(p, rnd):
    alg = cached_resolution(p).algebra
    rng = np.random.default_rng(rnd.randrange(2**32))
    x, y, z = (rng.integers(0, p, alg.dim) for _ in range(3))
    assert np.array_equal(alg.mul(alg.mul(x, y), z), alg.mul(x, alg.mul(y, z)))


def test_tuple_element_shape_check():
    prof = HookProfile(3)
    with pytest.raises(ValueError):
        HookTupleElement(prof, tuple(np.zeros((2, 2), dtype=np.int64) for _ in range(3)))
