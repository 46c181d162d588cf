import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from genstirling.triple import ParameterTriple


def rationals(max_num=6, max_den=4):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


@st.composite
def triples(draw, allow_zero_beta=True):
    """Rational triples, biased towards the alpha = 0 / beta = 0 edge cases."""
    shape = draw(st.sampled_from(["generic", "alpha0", "beta0", "both0"]))
    alpha, beta, r = draw(rationals()), draw(rationals()), draw(rationals())
    if shape in ("alpha0", "both0"):
        alpha = Fraction(0)
    if shape in ("beta0", "both0") and allow_zero_beta:
        beta = Fraction(0)
    if alpha == beta == r == 0:
        r = Fraction(1)
    return ParameterTriple(alpha, beta, r)


@pytest.fixture
def second_kind():
    return ParameterTriple.of(0, 1, 0)


@pytest.fixture
def first_kind():
    return ParameterTriple.of(1, 0, 0)


@pytest.fixture
def howard():
    return ParameterTriple.of(1, 1, -1)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    RESULTS = getattr(module, "RESULTS", None)
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
