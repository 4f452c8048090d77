import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from binrel.build import STANDARD_CONFIGS, build
from binrel.core import NaiveRelation, Pair

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# Worked fixture: 4 labels, 5 objects, 8 pairs.
R0_PAIRS = [(1, 2), (1, 5), (2, 1), (2, 4), (3, 1), (3, 3), (3, 5), (4, 5)]
R0_N, R0_SIGMA = 5, 4
R0_B = [1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0]
R0_S = [2, 3, 1, 3, 2, 1, 3, 4]

# "EHDHACEEGBCBGCF" over A..H
SAMPLE_TEXT = "EHDHACEEGBCBGCF"
SAMPLE_SYMBOLS = [ord(c) - ord("A") + 1 for c in SAMPLE_TEXT]


def sym(c: str) -> int:
    return ord(c) - ord("A") + 1


@pytest.fixture(scope="session")
def r0_oracle():
    return NaiveRelation(R0_PAIRS, R0_N, R0_SIGMA)


@pytest.fixture(scope="session", params=STANDARD_CONFIGS, ids=lambda c: c.name)
def r0_struct(request):
    return build(request.param, R0_PAIRS, R0_N, R0_SIGMA)


@st.composite
def relations(draw, max_n=12, max_sigma=12):
    """(pairs, n, sigma) drawn as a random subset of the grid."""
    n = draw(st.integers(1, max_n))
    sigma = draw(st.integers(1, max_sigma))
    cells = draw(st.sets(st.integers(0, n * sigma - 1), max_size=n * sigma))
    return [Pair(c // n + 1, c % n + 1) for c in sorted(cells)], n, sigma


def random_relations(count, seed, max_n=20, max_sigma=20):
    rng = random.Random(seed)
    for _ in range(count):
        n, sigma = rng.randint(1, max_n), rng.randint(1, max_sigma)
        cells = rng.sample(range(n * sigma), rng.randint(0, n * sigma))
        yield [Pair(c // n + 1, c % n + 1) for c in cells], n, sigma


def assert_matches_oracle(structure, oracle, seed=0, per_op=15, exhaustive=False):
    """Every op on ``structure`` against the oracle, on random or all argument tuples."""
    from binrel.core import OPS
    from binrel.verify import exhaustive_args, random_args

    rng = random.Random(seed)
    for op in OPS:
        tuples = exhaustive_args(op, oracle) if exhaustive else (
            random_args(op, oracle, rng) for _ in range(per_op))
        for args in tuples:
            assert structure.query(op, *args) == oracle.query(op, *args), (op, args, oracle.pairs)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(module.RESULTS):
            terminalreporter.write_line(module.RESULTS[number])
