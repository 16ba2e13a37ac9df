import json

import pytest
from fractions import Fraction
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from stripecover import oracles, schema
from stripecover.errors import DomainError, InvariantError
from stripecover.pl import (PLFunction, compose, eval_pl, le, level_set, lipschitz_constant,
                            pointwise_max, pointwise_min, scalar, shift)

from conftest import F, pl_functions, rationals

TENT = PLFunction.from_points([(-1, 0), (0, 1), (1, 0)], 1, -1)


def test_scalar_inputs():
    assert scalar("3/6") == mpq(1, 2)
    assert scalar((2, -4)) == mpq(-1, 2)
    assert scalar(Fraction(5, 10)) == mpq(1, 2)
    assert scalar(0.25) == mpq(1, 4)
    with pytest.raises(ZeroDivisionError):
        scalar("1/0")


def test_eval_examples():
    assert PLFunction.identity()(2) == 2
    assert TENT(0) == 1
    assert TENT(3) == -2
    assert TENT(-3) == -2


def test_domain_error():
    f = PLFunction.identity(domain=(0, 1))
    assert f(1) == 1
    with pytest.raises(DomainError):
        f(mpq(3, 2))


def test_invalid_breakpoints():
    with pytest.raises(InvariantError):
        PLFunction([0, 0], [1, 2])
    with pytest.raises(InvariantError):
        PLFunction([], [])
    with pytest.raises(InvariantError):
        PLFunction([0, 1], [1])


def test_lipschitz_examples():
    assert lipschitz_constant(PLFunction.constant(7)) == 0
    assert lipschitz_constant(TENT) == 1
    f = PLFunction.from_points([(0, 0), (1, mpq(1, 2)), (2, -mpq(5, 2)), (3, -mpq(1, 2))], 0, 0)
    assert sorted(f.interior_slopes()) == [-3, mpq(1, 2), 2]
    assert lipschitz_constant(f) == 3


def test_lipschitz_counts_extension_slopes():
    assert PLFunction([0], [0], -5, 1).lipschitz_constant() == 5
    # a bounded domain hides the tails
    assert PLFunction([0, 1], [0, 1], -5, 7, (0, 1)).lipschitz_constant() == 1


def test_max_examples():
    assert pointwise_max(TENT, TENT).equals(TENT)
    one = pointwise_max(PLFunction.constant(0), PLFunction.constant(1))
    assert one.equals(PLFunction.constant(1))
    ab = pointwise_max(PLFunction.identity(), PLFunction.affine(-1))
    assert 0 in ab.breakpoints
    assert ab(-3) == 3 and ab(2) == 2 and ab.left_slope == -1 and ab.right_slope == 1


def test_crossing_on_tail():
    # two lines that only cross far to the right of every breakpoint
    f = PLFunction([0], [0], 0, 0)
    g = PLFunction([0], [-10], 1, 1)
    m = pointwise_max(f, g)
    assert m(10) == 0 and m(20) == 10 and 10 in m.breakpoints


def test_shift_examples():
    assert shift(PLFunction.constant(0), 1).equals(PLFunction.constant(1))
    assert shift(TENT, 0).equals(TENT)
    assert shift(TENT, mpq(1, 2))(0) == mpq(3, 2)


@given(pl_functions(), pl_functions(), st.lists(rationals(-6, 6, 97), min_size=1, max_size=30))
def test_envelopes_match_pointwise(f, g, xs):
    hi, lo = pointwise_max(f, g), pointwise_min(f, g)
    for x in xs:
        fx, gx = oracles.f_at(f, x), oracles.f_at(g, x)
        assert F(hi(x)) == max(fx, gx)
        assert F(lo(x)) == min(fx, gx)


@given(pl_functions(), pl_functions())
def test_envelope_lipschitz(f, g):
    bound = max(f.lipschitz_constant(), g.lipschitz_constant())
    assert pointwise_max(f, g).lipschitz_constant() <= bound
    assert pointwise_min(f, g).lipschitz_constant() <= bound


@given(pl_functions(), rationals(), rationals())
def test_lipschitz_bound_on_pairs(f, x, y):
    assert abs(f(x) - f(y)) <= f.lipschitz_constant() * abs(x - y)


@given(pl_functions(), rationals(-6, 6, 50))
def test_eval_matches_oracle(f, x):
    assert F(eval_pl(f, x)) == oracles.f_at(f, x)


@given(pl_functions())
def test_json_round_trip(f):
    g = schema.pl_from_json(json.loads(json.dumps(schema.pl_to_json(f))))
    assert all(g(x) == f(x) for x in f.breakpoints)
    assert g.left_slope == f.left_slope and g.right_slope == f.right_slope


@given(pl_functions(), pl_functions(), rationals())
def test_sum_and_compose(f, g, x):
    assert (f + g)(x) == f(x) + g(x)
    assert (f - g)(x) == f(x) - g(x)
    assert compose(f, g)(x) == f(g(x))


@given(pl_functions())
def test_simplify_keeps_values(f):
    s = f.simplify()
    assert s.equals(f)
    assert len(s.breakpoints) <= len(f.breakpoints)


@given(pl_functions(lip=1), pl_functions(lip=1))
def test_le_matches_min(f, g):
    assert le(f, g) == pointwise_min(f, g).equals(f)


def test_level_set_tent():
    ivs = level_set(TENT, mpq(1, 2), 2)
    assert ivs == [(mpq(-1, 2), mpq(1, 2))]
    assert level_set(TENT, -100, 0) == [(-101, -1), (1, 101)]
    assert level_set(PLFunction.constant(0), -1, 1) == [(None, None)]
    assert level_set(TENT, 2, 3) == []


def test_min_max_on_domain():
    f = TENT.with_domain((-2, mpq(1, 2)))
    assert f.maximum() == 1 and f.minimum() == -1
    assert TENT.minimum() is None
