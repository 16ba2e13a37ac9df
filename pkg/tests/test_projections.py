import math
import random

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from stripecover import oracles
from stripecover.errors import BudgetError, InvariantError
from stripecover.projections import (CONTROL_SEGMENT, DEFAULT_DIRECTIONS, Direction, SquareSet,
                                     four_corner, monotone_columns, project_length,
                                     projected_intervals, projection_report, report_csv,
                                     union_length_int)

from conftest import F

directions = st.tuples(st.integers(-7, 7), st.integers(-7, 7)).filter(
    lambda d: d != (0, 0) and math.gcd(*d) == 1).map(lambda d: Direction(*d))


def test_four_corner_small():
    assert four_corner(0).squares() == [(0, 0, 1)]
    one = four_corner(1)
    q = mpq(1, 4)
    assert sorted(one.squares()) == [(0, 0, q), (0, 3 * q, q), (3 * q, 0, q), (3 * q, 3 * q, q)]
    two = four_corner(2)
    assert len(two) == 16 and {s for _, _, s in two.squares()} == {mpq(1, 16)}


def test_depth_cap():
    with pytest.raises(BudgetError):
        four_corner(11)


def test_unit_square_length():
    assert project_length(four_corner(0), Direction(1, 0)).exact_unnormalized == 1


def test_four_corner_horizontal():
    for n in range(7):
        s = four_corner(n)
        got = project_length(s, Direction(1, 0)).exact_unnormalized
        assert got == mpq(1, 2 ** n)
        assert F(got) == oracles.square_projection_union(s.squares(), 1, 0)


@given(directions, st.integers(0, 4))
def test_lengths_match_oracle(d, n):
    s = four_corner(n)
    r = project_length(s, d)
    assert F(r.exact_unnormalized) == oracles.square_projection_union(s.squares(), d.p, d.q)
    assert math.isclose(r.normalized, float(r.exact_unnormalized) / math.hypot(d.p, d.q))


@given(directions)
def test_single_square_closed_form(d):
    s = SquareSet.from_squares([(mpq(1, 3), mpq(2, 7), mpq(1, 5))])
    assert project_length(s, d).exact_unnormalized == mpq(1, 5) * (abs(d.p) + abs(d.q))


@given(directions, st.randoms(use_true_random=False))
def test_reorder_and_split_invariance(d, r):
    sq = four_corner(2).squares()
    base = project_length(SquareSet.from_squares(sq), d).exact_unnormalized
    r.shuffle(sq)
    split = []
    for x, y, s in sq:
        h = s / 2
        split += [(x, y, h), (x + h, y, h), (x, y + h, h), (x + h, y + h, h)]
    assert project_length(SquareSet.from_squares(sq), d).exact_unnormalized == base
    assert project_length(SquareSet.from_squares(split), d).exact_unnormalized == base


def test_control_segment():
    r = CONTROL_SEGMENT.project_length(Direction(1, -1))
    assert r.exact_unnormalized == 0
    r = CONTROL_SEGMENT.project_length(Direction(1, 1))
    assert r.exact_unnormalized == 2 and math.isclose(r.normalized, math.sqrt(2))
    for p in range(-6, 7):
        for q in range(-6, 7):
            if (p, q) != (0, 0) and math.gcd(p, q) == 1:
                vanishes = CONTROL_SEGMENT.project_length(Direction(p, q)).exact_unnormalized == 0
                assert vanishes == (p == -q)


def test_report_monotone_columns():
    rows = projection_report(range(1, 7), DEFAULT_DIRECTIONS)
    cols = monotone_columns(rows)
    assert len(cols) == 6 and all(cols.values())
    for r in rows:
        if r.set_name == "four-corner":
            sq = four_corner(r.depth).squares()
            assert F(r.length.exact_unnormalized) == oracles.square_projection_union(
                sq, r.direction.p, r.direction.q)
    assert sum(r.set_name == "control" for r in rows) == 6


def test_direction_one_two_is_flat():
    # a known degenerate direction for this set: the projection never shrinks
    rows = projection_report(range(1, 7), [(1, 2)])
    assert {r.length.exact_unnormalized for r in rows if r.set_name == "four-corner"} == {3}


def test_report_csv_is_deterministic():
    rows = projection_report([1, 2], [(1, 0)])
    text = report_csv(rows, "seed=0")
    assert text.startswith("# seed=0\nset,depth,direction,exact_length,normalized_length\n")
    assert "four-corner,2,\"1,0\",1/4,0.25" in text
    assert text == report_csv(projection_report([1, 2], [(1, 0)]), "seed=0")


def test_union_length_int():
    import numpy as np
    lo = np.array([5, 0, 2, 10], dtype=np.int64)
    hi = np.array([6, 3, 4, 10], dtype=np.int64)
    assert union_length_int(lo, hi) == 5


def test_direction_validation():
    with pytest.raises(InvariantError):
        Direction(2, 4)
    with pytest.raises(InvariantError):
        Direction(0, 0)
    assert Direction.parse("1,-3") == Direction(1, -3)


def test_depth_ten_is_exact():
    s = four_corner(10)
    assert len(s) == 4 ** 10
    assert project_length(s, Direction(1, 0)).exact_unnormalized == mpq(1, 1024)
    lo, hi = projected_intervals(s, Direction(1, 1))
    assert len(lo) == 4 ** 10
