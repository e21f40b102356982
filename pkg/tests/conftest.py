import random
import time
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from blalg.lattice import Element, NormSpec

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=12)
positive_rationals = st.fractions(min_value=Fraction(1, 12), max_value=30, max_denominator=12)


@st.composite
def elements(draw, dim, positive=False):
    strat = st.fractions(min_value=0, max_value=30, max_denominator=12) if positive else rationals
    return Element(draw(st.lists(strat, min_size=dim, max_size=dim)))


@st.composite
def norm_specs(draw, dim, kind=None):
    kind = kind or draw(st.sampled_from(["weighted_sup", "weighted_l1"]))
    return NormSpec(kind, draw(st.lists(positive_rationals, min_size=dim, max_size=dim)))


@pytest.fixture
def rng():
    return random.Random(20240601)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
_START = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    elapsed = time.perf_counter() - _START
    tr.write_line(f"suite wall time: {elapsed:.1f}s ({'PASS' if elapsed < 60 else 'FAIL'}: limit 60s)")
