import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hypothesis import strategies as st

from torusfill.surd import SurdScalar

SMALL_RADICANDS = [1, 2, 3, 5, 6]


@st.composite
def surds(draw, radicands=None, max_terms=3):
    rads = draw(st.lists(
        st.sampled_from(radicands or SMALL_RADICANDS),
        min_size=0, max_size=max_terms, unique=True))
    terms = []
    for r in rads:
        num = draw(st.integers(min_value=-9, max_value=9))
        den = draw(st.integers(min_value=1, max_value=9))
        terms.append((r, Fraction(num, den)))
    return SurdScalar.from_terms(terms)


@st.composite
def nonzero_surds(draw, **kw):
    value = draw(surds(**kw))
    if value.is_zero():
        value = value + 1
    return value


@st.composite
def rationals(draw, bound=9):
    num = draw(st.integers(min_value=-bound, max_value=bound))
    den = draw(st.integers(min_value=1, max_value=bound))
    return Fraction(num, den)
