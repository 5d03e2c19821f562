from __future__ import annotations

import itertools

import numpy as np

from symp_ainf.ainfty_model import ExtBasisElement, ext_tensor
from symp_ainf.hom_dga import homology_table, iota_power, m1
from symp_ainf.prime2 import GroupAlgebraS2, Prime2Model, build_resolution_p2, p2_model
from symp_ainf.resolution import augmentation, check_exactness


def test_group_algebra():
    alg = GroupAlgebraS2()
    s = alg.unit(1)
    assert alg.mul(s, s).tolist() == [1, 0]
    norm = np.array([1, 1])
    assert not alg.mul(norm, norm).any()
    assert alg.augmentation(norm) == 0 and alg.augmentation(s) == 1


def test_resolution_p2():
    res = build_resolution_p2()
    assert res.l == 1 and all(res.module_at(i) == 1 for i in range(10))
    eps = augmentation(res)
    assert not np.mod(eps.values @ res.diff_matrix(1), 2).any()
    assert check_exactness(res, 10).ok
    assert all(res.diff_at(i) == res.diff_at(1) for i in range(2, 6))


def test_homology_p2():
    res = build_resolution_p2()
    table = homology_table(res, 10, lambda a, j: iota_power(res, j))
    assert table.dims() == [1] * 11
    assert all(r.certified for r in table.rows)


def test_model_p2():
    res = build_resolution_p2()
    model = Prime2Model(res)
    out = model.m_prime(2, ext_tensor([(0, 2), (0, 3)]))
    assert out.items() == [(ExtBasisElement(0, 5), 1)]
    assert model.m_prime(3, ext_tensor([(0, 0)] * 3)) is None
    assert all(m1(iota_power(res, j)).is_zero() for j in range(6))
    syms = [ExtBasisElement(0, j) for j in range(3)]
    for t in itertools.product(syms, repeat=3):
        assert model.check_stasheff(t).is_zero()


def test_report():
    rep = p2_model()
    assert rep.ok, rep.checks
    assert rep.dims == [1] * 11
