from __future__ import annotations

from functools import lru_cache

import pytest

from symp_ainf.ainfty_model import MinimalModel
from symp_ainf.hook_algebra import HookProfile
from symp_ainf.resolution import build_resolution


@lru_cache(maxsize=None)
def cached_resolution(p: int):
    return build_resolution(HookProfile(p))


@lru_cache(maxsize=None)
def cached_model(p: int):
    return MinimalModel(cached_resolution(p))


@pytest.fixture(params=[3, 5], ids=lambda p: f"p{p}")
def small_res(request):
    return cached_resolution(request.param)


@pytest.fixture(params=[3, 5, 7], ids=lambda p: f"p{p}")
def res(request):
    return cached_resolution(request.param)
