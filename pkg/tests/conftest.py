import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hodgephase.algebra import Multivector, Signature

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance_log(request):
    """Append ``(criterion, ok, detail)``; printed as one line per criterion at the end."""
    log = request.config.stash[_ACCEPTANCE_KEY]

    def record(criterion: str, ok: bool, detail: str = ""):
        line = f"{criterion}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        log.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def multivectors(draw, sig: Signature, max_terms: int = 6):
    masks = draw(st.lists(st.integers(0, sig.size - 1), max_size=max_terms, unique=True))
    return Multivector(sig, {m: draw(fractions) for m in masks})


@st.composite
def signatures(draw, max_n: int = 5, euclidean: bool = False):
    n = draw(st.integers(1, max_n))
    q = 0 if euclidean else draw(st.integers(0, n))
    return Signature(n - q, q, negative_first=draw(st.booleans()))


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def cl3():
    return Signature(3)


@pytest.fixture
def cl4():
    return Signature(4)


def F(a, b=1):
    return Fraction(a, b)
