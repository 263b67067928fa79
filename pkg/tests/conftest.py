import random

import pytest
from hypothesis import strategies as st

from mzv_csf.free_algebra import Poly

words = st.text(alphabet="xy", max_size=6)
h1_words = st.one_of(st.just(""), st.builds(lambda w: w + "y", st.text(alphabet="xy", max_size=5)))
hy_words = st.builds(lambda w: w + "y", st.text(alphabet="xy", max_size=5))
coeffs = st.integers(-3, 3)


def polys(word_strategy=words, max_terms=4):
    return st.builds(Poly, st.lists(st.tuples(word_strategy, coeffs), max_size=max_terms))


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
