import math
import random

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from stripecover import oracles
from stripecover.errors import InvariantError, PreconditionError
from stripecover.generate import (FIGURE2_DELTA, cantor_product_cover, cantor_product_points,
                                  figure1_curves, figure2_arrangement, figure2_curves,
                                  random_curves, random_ordered)
from stripecover.pl import PLFunction, pointwise_max, pointwise_min
from stripecover.stripes import (Arrangement, Curve, Stripe, cone_constant, covers, disjointify,
                                 disjointify_arrangement, total_thickness,
                                 transversal_intersection, uncross)

from conftest import F, pl_functions, rationals

curves_st = st.lists(pl_functions(max_breakpoints=5, lip=1), min_size=1, max_size=5)


def test_curve_rejects_steep_function():
    with pytest.raises(InvariantError):
        Curve(1, PLFunction.affine(2))
    with pytest.raises(InvariantError):
        Curve(3, PLFunction.identity())


def test_stripe_is_closed():
    s = Stripe(Curve(1, PLFunction.constant(0)), mpq(1, 2))
    assert s.contains((5, mpq(1, 4))) and s.contains((5, -mpq(1, 4)))
    assert not s.contains((5, mpq(1, 4) + mpq(1, 10 ** 9)))
    v = Stripe(Curve(2, PLFunction.constant(0)), mpq(1, 2))
    assert v.contains((mpq(1, 4), 7)) and not v.contains((mpq(1, 2), 7))


def test_uncross_figure1():
    g1, g2 = figure1_curves()
    f1, f2 = uncross([g1, g2])
    assert f1.f.equals(pointwise_min(g1.f, g2.f))
    assert f2.f.equals(pointwise_max(g1.f, g2.f))
    # the tent crosses the level 3/2 at 2 and 5
    assert {2, 5} <= set(f1.f.breakpoints)


def test_uncross_ordered_is_identity(rng):
    curves = random_ordered(rng, 5)
    again = uncross(curves)
    assert all(a.f.equals(b.f) for a, b in zip(curves, again))


def test_uncross_five_random_curves(rng):
    curves = random_curves(rng, 5)
    out = uncross(curves)
    for _ in range(100):
        t = mpq(rng.randrange(-2048, 4096), 1024)
        assert [F(c.f(t)) for c in out] == oracles.sorted_values([c.f for c in curves], t)


@given(curves_st, st.lists(rationals(-5, 5, 101), min_size=1, max_size=20))
def test_uncross_sorts_pointwise(fs, ts):
    curves = [Curve(1, f) for f in fs]
    out = uncross(curves)
    assert Arrangement(1, tuple(c.f for c in out)).is_ordered()
    assert all(c.f.lipschitz_constant() <= 1 for c in out)
    for t in ts:
        assert [F(c.f(t)) for c in out] == oracles.sorted_values(fs, t)


@given(curves_st, st.lists(rationals(-5, 5, 101), min_size=1, max_size=10))
def test_uncross_idempotent(fs, ts):
    once = uncross([Curve(1, f) for f in fs])
    twice = uncross(once)
    assert all(a.f(t) == b.f(t) for a, b in zip(once, twice) for t in ts)


def test_uncross_rejects_mixed_axes():
    with pytest.raises(PreconditionError):
        uncross([Curve(1, PLFunction.constant(0)), Curve(2, PLFunction.constant(0))])


def test_disjointify_single_curve():
    c = [Curve(1, PLFunction.identity())]
    assert disjointify(c, mpq(1, 3))[0].f.equals(c[0].f)


def test_disjointify_equal_curves():
    f = PLFunction.from_points([(0, 0), (1, mpq(1, 2))])
    out = disjointify([Curve(1, f), Curve(1, f)], mpq(1, 4))
    assert out[0].f.equals(f)
    assert out[1].f.equals(f.shift(mpq(1, 4)))


def test_disjointify_figure2(rng):
    before = figure2_arrangement(disjoint=False)
    after = figure2_arrangement(disjoint=True)
    assert after.has_disjoint_interiors()
    top = PLFunction.from_points([(0, mpq(1, 2)), (mpq(1, 2), mpq(3, 4)),
                                  (mpq(3, 4), mpq(5, 8)), (1, mpq(3, 4))], 0, 0)
    assert after.curves[1].equals(top)
    for _ in range(10_000):
        f = rng.choice(before.curves)
        t = mpq(rng.randrange(-512, 1537), 1024)
        y = f(t) + FIGURE2_DELTA * (mpq(rng.randrange(0, 1025), 1024) - mpq(1, 2))
        assert after.contains((t, y))


def test_disjointify_errors():
    unordered = figure1_curves()
    with pytest.raises(PreconditionError):
        disjointify(unordered, mpq(1, 4))
    with pytest.raises(PreconditionError):
        disjointify(uncross(unordered), 0)
    a = Arrangement(1, tuple(c.f for c in unordered), mpq(1, 4))
    assert disjointify_arrangement(a, uncross_first=True).has_disjoint_interiors()


@given(curves_st, st.sampled_from([mpq(1, 2), mpq(1, 8), mpq(3, 64)]), st.data())
def test_disjointify_properties(fs, delta, data):
    ordered = uncross([Curve(1, f) for f in fs])
    out = disjointify(ordered, delta)
    a = Arrangement(1, tuple(c.f for c in out), delta)
    assert a.has_disjoint_interiors()
    assert all(c.f.lipschitz_constant() <= 1 for c in out)
    assert total_thickness(a) == len(fs) * delta
    for _ in range(20):
        f = data.draw(st.sampled_from(ordered)).f
        t = data.draw(rationals(-4, 4, 64))
        u = data.draw(rationals(-1, 1, 32)) / 2
        assert a.contains((t, f(t) + u * delta))


def test_covers_examples():
    a = figure2_arrangement()
    assert covers(a, []).covered
    f = a.curves[0]
    assert covers(a, [(mpq(1, 3), f(mpq(1, 3)) + FIGURE2_DELTA / 2)]).covered
    rep = covers(a, [(0, 5), (0, mpq(1, 4))])
    assert not rep.covered and rep.uncovered == [(0, 5)] and rep.checked == 2


def test_covers_cantor_product():
    cover = cantor_product_cover(3)
    pts = cantor_product_points(3, 5, 300, seed=2)
    assert covers(cover, pts).covered
    # the oracle: y must sit in one of the level-3 intervals
    ivs = [(f(0) - cover.delta / 2, f(0) + cover.delta / 2) for f in cover.curves]
    assert all(any(lo <= y <= hi for lo, hi in ivs) for _, y in pts)
    assert not covers(cover, [(0, mpq(1, 2))]).covered


def test_total_thickness_examples():
    three = Arrangement(1, tuple(PLFunction.constant(k) for k in range(3)), mpq(1, 8))
    assert total_thickness(three) == mpq(3, 8)
    assert total_thickness(Arrangement(1, (), mpq(1, 8))) == 0
    sixteen = Arrangement(1, tuple(PLFunction.constant(k) for k in range(16)), mpq(1, 256))
    assert total_thickness(sixteen) == mpq(1, 16)
    mixed = Arrangement(1, (PLFunction.constant(0), PLFunction.constant(1)), (mpq(1, 2), mpq(1, 4)))
    assert total_thickness(mixed) == mpq(3, 4)


def test_transversal_vertical_line():
    a = Arrangement(1, (PLFunction.identity(),), mpq(1, 8))
    rep = transversal_intersection(a, Curve(2, PLFunction.constant(mpq(1, 3))))
    assert rep.intervals == [(mpq(1, 3) - mpq(1, 16), mpq(1, 3) + mpq(1, 16))]
    assert rep.parameter_length == mpq(1, 8)
    assert rep.within_bound()


def test_transversal_without_stripes():
    # graphs over the whole line always meet, so only an empty arrangement misses
    a = Arrangement(1, (), mpq(1, 8))
    rep = transversal_intersection(a, Curve(2, PLFunction.constant(5)))
    assert rep.intervals == [] and rep.parameter_length == 0 and rep.arclength == 0


def test_transversal_errors():
    a = Arrangement(1, (PLFunction.constant(0),), mpq(1, 8))
    with pytest.raises(PreconditionError):
        transversal_intersection(a, Curve(2, PLFunction.identity()))
    with pytest.raises(PreconditionError):
        transversal_intersection(a, Curve(1, PLFunction.constant(0)))


def _slanted():
    # slope 1/2 in absolute value, as a graph over x2
    return Curve(2, PLFunction.from_points([(0, mpq(1, 5)), (mpq(1, 2), mpq(9, 20)),
                                            (1, mpq(1, 5))], mpq(1, 2), -mpq(1, 2)))


def test_transversal_figure2_against_sampling():
    a = figure2_arrangement()
    c = _slanted()
    rep = transversal_intersection(a, c)
    step = mpq(1, 512)

    def inside(s):
        return a.contains((c.f(s), s))

    est, _ = oracles.dense_sample_length(inside, -2, 3, step)
    runs = len(rep.intervals)
    assert abs(F(rep.parameter_length) - est) <= 2 * runs * step
    assert rep.parameter_length > 0 and rep.within_bound()
    assert rep.arclength <= cone_constant(mpq(1, 2)) * float(total_thickness(a)) + 1e-12


def test_transversal_length_shrinks_with_delta():
    shape = [c.f for c in figure2_curves()]
    c = _slanted()
    lengths = []
    for k in range(1, 9):
        delta = mpq(1, 2 ** k)
        a = Arrangement(1, tuple(c.f for c in disjointify(uncross([Curve(1, f) for f in shape]), delta)), delta)
        rep = transversal_intersection(a, c)
        lengths.append(rep.parameter_length)
        assert rep.parameter_length <= rep.parameter_bound
    assert all(b <= a for a, b in zip(lengths, lengths[1:]))
    # linear decay: the per-delta ratio stays bounded
    assert max(l * 2 ** k for k, l in enumerate(lengths, start=1)) <= 2 * 2 / (1 - mpq(1, 2))


def test_cone_constant():
    assert cone_constant(0) == 1.0
    assert math.isclose(cone_constant(mpq(1, 2)), math.sqrt(1.25) / 0.5)
    with pytest.raises(PreconditionError):
        cone_constant(1)
