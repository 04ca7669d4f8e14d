"""
测试公共夹具
"""

import random
from functools import lru_cache

import pytest

from topodeck import space as sp
from topodeck.enumeration import enumerate_upto_homeo
from topodeck.model_types import Catalog, FiniteSpace


@lru_cache(maxsize=None)
def cached_catalog(n: int) -> Catalog:
    return enumerate_upto_homeo(n)


def random_space(rng: random.Random, n: int) -> FiniteSpace:
    """随机生成关系再取自反传递闭包"""
    p = rng.choice([0.05, 0.15, 0.3, 0.5])
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y and rng.random() < p]
    return sp.from_relation(n, pairs)


def random_perm(rng: random.Random, n: int):
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240517)


@pytest.fixture
def catalog_of():
    return cached_catalog


@pytest.fixture
def star() -> FiniteSpace:
    """中心 0 为开点的三点星形空间"""
    return sp.from_min_open([0b001, 0b011, 0b101])


@pytest.fixture
def block_sum() -> FiniteSpace:
    """indiscrete(2) ⊕ point"""
    return sp.disjoint_sum(sp.indiscrete(2), sp.point())
