import random

import pytest

from rootoidlab.builders.small import FIXTURES

_CACHE = {}


def fixture(name):
    """Fixtures are immutable after construction, so build each one once."""
    if name not in _CACHE:
        _CACHE[name] = FIXTURES[name]()
    return _CACHE[name]


def random_expression(P, rng, max_len=6):
    G = P.G
    g = rng.randrange(G.n_morphisms)
    terms = [g]
    for _ in range(rng.randint(0, max_len - 1)):
        terms.append(rng.choice(G.star(G.dom[terms[-1]])))
    return tuple(terms)


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, desc = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
