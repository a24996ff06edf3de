import random

import pytest
from hypothesis import HealthCheck, settings

from quivertree import PrimeField, QQ, Quiver, Representation

settings.register_profile("suite", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)
settings.load_profile("suite")

FP = PrimeField(1000003)


@pytest.fixture
def fp():
    return FP


@pytest.fixture
def qq():
    return QQ


def a2():
    return Quiver(["a", "b"], [("ab", "a", "b")])


def a3_linear():
    return Quiver(["a", "b", "c"], [("ab", "a", "b"), ("bc", "b", "c")])


def random_rep(q: Quiver, field, rng: random.Random, max_dim: int = 2, density: float = 0.6) -> Representation:
    """Small random representation with entries drawn from {0, 1, 2} (sparse-ish)."""
    dims = {v: rng.randint(0, max_dim) for v in q.vertices}
    mats = {}
    for a in q.arrows:
        rows, cols = dims[a.tgt], dims[a.src]
        mats[a.id] = [[rng.choice([1, 2]) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]
    return Representation(q, field, dims, mats)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    def order(k):
        return (int(k.rstrip("abcd")), k)
    for key in sorted(mod.RESULTS, key=order):
        ok, detail = mod.RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {key}: {detail}")
