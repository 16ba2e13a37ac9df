import random

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from stripecover.pl import PLFunction, scalar

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(lo=-4, hi=4, max_den=64):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den).map(scalar)


@st.composite
def pl_functions(draw, max_breakpoints=6, lip=None, domain=None):
    """Random PL functions; with ``lip`` every slope lies in ``[-lip, lip]``."""
    n = draw(st.integers(1, max_breakpoints))
    xs = sorted(set(draw(st.lists(rationals(-2, 2, 16), min_size=n, max_size=n))))
    if lip is None:
        ys = draw(st.lists(rationals(-2, 2, 16), min_size=len(xs), max_size=len(xs)))
        left, right = draw(rationals(-3, 3, 8)), draw(rationals(-3, 3, 8))
    else:
        slope = rationals(-lip, lip, 8)
        ys = [draw(rationals(-1, 1, 16))]
        for a, b in zip(xs, xs[1:]):
            ys.append(ys[-1] + draw(slope) * (b - a))
        left, right = draw(slope), draw(slope)
    return PLFunction(xs, ys, left, right, domain)


@pytest.fixture
def rng():
    return random.Random(20261017)


def F(x):
    return Fraction(int(x.numerator), int(x.denominator))
