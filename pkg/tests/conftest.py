import pytest

from kreinval import SamplerConfig, Signature

SIGNATURES = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)]


@pytest.fixture(params=SIGNATURES, ids=lambda pq: f"p{pq[0]}q{pq[1]}")
def signature(request):
    return Signature(*request.param)


@pytest.fixture
def sampler_cfg():
    return SamplerConfig(seed=2026)
