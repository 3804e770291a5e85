import random

import pytest

import sampler.search as search_module
from config import settings
from errors import PreconditionError
from exact.valuation import ExtValuation
from sampler.bergman import (
    DEFAULT_EXPONENTS,
    SamplerSeed,
    bergman_point,
    chain_sample,
    random_seed,
    root_matrix,
)
from sampler.search import TARGETS, draw_seed, resolve_target, search
from tropical.arrangements import AAAA, AAAB, NON_STABLE

CHAIN_BASIS = ("d1-d2", "d2-d3", "d3-d4", "d4-d5", "d5-d6", "d1+d2+d3")


def test_root_matrix():
    matrix = root_matrix()
    assert len(matrix.labels) == 36
    assert matrix.as_matrix().rank() == 6
    assert matrix.is_basis(CHAIN_BASIS)
    assert not matrix.is_basis(("d1-d2", "d2-d3", "d1-d3", "d4-d5", "d5-d6", "d1+d2+d3"))


def test_chain_sample_hits_prescribed_valuations():
    seed = SamplerSeed(CHAIN_BASIS, DEFAULT_EXPONENTS, (1, 2, -1, 3, 4, -2), 5)
    d = chain_sample(seed)
    point = bergman_point(d, 5)
    for label, k in zip(CHAIN_BASIS, DEFAULT_EXPONENTS):
        assert point[label] == ExtValuation(k)
    assert point["d1-d3"] == ExtValuation(1)


@pytest.mark.parametrize(
    "exponents, units",
    [
        ((1, 1, 5, 7, 9, 11), (1, 1, 1, 1, 1, 1)),
        ((1, 3, 5, 7, 9, 11), (1, 1, 10, 1, 1, 1)),
        ((1, 3, 5), (1, 1, 1)),
    ],
)
def test_seed_validation(exponents, units):
    with pytest.raises(PreconditionError):
        SamplerSeed(CHAIN_BASIS, exponents, units, 5)


def test_seed_rejects_dependent_basis():
    basis = ("d1-d2", "d2-d3", "d1-d3", "d4-d5", "d5-d6", "d1+d2+d3")
    seed = SamplerSeed(basis, DEFAULT_EXPONENTS, (1,) * 6, 5)
    with pytest.raises(PreconditionError, match="linearly dependent"):
        chain_sample(seed)


def test_random_seed_is_a_basis_with_units():
    seed = random_seed(random.Random(4), 7)
    assert root_matrix().is_basis(seed.basis)
    assert all(int(u) % 7 for u in seed.units)


def test_draw_seed_is_deterministic():
    a = draw_seed(3, 99, 5, DEFAULT_EXPONENTS)
    b = draw_seed(3, 99, 5, DEFAULT_EXPONENTS)
    assert a == b
    assert a != draw_seed(4, 99, 5, DEFAULT_EXPONENTS)


def test_targets():
    assert resolve_target("aaaa") is TARGETS["aaaa"]
    assert TARGETS["naruki-general"].accepts(True, AAAB)
    assert not TARGETS["naruki-general"].accepts(False, AAAA)
    assert TARGETS["non-stable"].accepts(False, NON_STABLE)
    assert TARGETS["any"].accepts(False, "other-stable")
    with pytest.raises(PreconditionError, match="Unknown target"):
        resolve_target("nope")


def test_empty_budget():
    assert search("any", 0, stream=1, prime=5, threads=1) == []


class _RecordingPool:
    sizes: list[int] = []

    def __init__(self, processes):
        self.sizes.append(processes)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    def map(self, job, items):
        return [job(i) for i in items]


def test_worker_request_is_capped_by_settings(monkeypatch):
    monkeypatch.setattr(settings, "threads", 2)
    assert settings.validate_threads() == 2
    assert settings.validate_threads(64) == 2
    assert settings.validate_threads(1) == 1
    with pytest.raises(PreconditionError):
        settings.validate_threads(0)


def test_search_pool_never_exceeds_configured_threads(monkeypatch):
    monkeypatch.setattr(settings, "threads", 2)
    monkeypatch.setattr(_RecordingPool, "sizes", [])
    monkeypatch.setattr(search_module.multiprocessing, "Pool", _RecordingPool)
    monkeypatch.setattr(search_module, "evaluate_draw", lambda i, **kwargs: None)
    assert search("any", 8, stream=1, prime=5, threads=64) == []
    assert _RecordingPool.sizes == [2]


@pytest.mark.slow
def test_search_is_independent_of_worker_count(monkeypatch):
    monkeypatch.setattr(settings, "threads", 2)
    serial = search("smooth", 6, stream=17, prime=5, threads=1)
    pooled = search("smooth", 6, stream=17, prime=5, threads=2)
    assert [f.to_json() for f in serial] == [f.to_json() for f in pooled]
    assert all(f.report["tropical_smoothness"]["class"] is not None for f in serial)
