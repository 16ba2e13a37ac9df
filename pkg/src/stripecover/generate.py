"""Seeded instance generators and the fixed example configurations."""

from __future__ import annotations

import random

from gmpy2 import mpq

from .pl import ONE, ZERO, PLFunction, scalar
from .stripes import Arrangement, Curve, disjointify, uncross


def _rat(rng: random.Random, lo, hi, bits=10):
    return scalar(lo) + (scalar(hi) - scalar(lo)) * mpq(rng.randrange(0, (1 << bits) + 1), 1 << bits)


def _slope(rng: random.Random, lip):
    # denominators of 16 keep crossings' denominators small
    return scalar(lip) * mpq(rng.randint(-16, 16), 16)


def random_lipschitz_pl(rng: random.Random, n_breakpoints: int, lip=1,
                        window=(0, 1), y_range=(0, 1)) -> PLFunction:
    """Random PL function with every slope in ``[-lip, lip]``."""
    n = max(1, n_breakpoints)
    xs = set()
    while len(xs) < n:
        xs.add(_rat(rng, *window))
    xs = sorted(xs)
    ys = [_rat(rng, *y_range)]
    for a, b in zip(xs, xs[1:]):
        ys.append(ys[-1] + _slope(rng, lip) * (b - a))
    return PLFunction(xs, ys, _slope(rng, lip), _slope(rng, lip))


def random_curves(rng: random.Random, n_curves: int, max_breakpoints: int = 12,
                  axis: int = 1) -> list:
    return [Curve(axis, random_lipschitz_pl(rng, rng.randint(1, max_breakpoints)))
            for _ in range(n_curves)]


def random_ordered(rng: random.Random, n_curves: int, max_breakpoints: int = 12,
                   axis: int = 1) -> list:
    return uncross(random_curves(rng, n_curves, max_breakpoints, axis))


def random_disjoint_arrangement(rng: random.Random, n_curves: int, delta,
                                max_breakpoints: int = 6, axis: int = 1,
                                window=(0, 1)) -> Arrangement:
    """Uncrossed, disjointified random stripes, lifted so the lowest edge sits at 0 on the window."""
    delta = scalar(delta)
    curves = disjointify(random_ordered(rng, n_curves, max_breakpoints, axis), delta)
    lowest = curves[0].f.with_domain(window).minimum() - delta / 2
    fs = tuple(c.f.shift(-lowest) for c in curves)
    return Arrangement(axis, fs, delta)


def figure1_curves() -> list:
    """A horizontal curve crossed twice by a tent."""
    g1 = PLFunction.constant(mpq(3, 2))
    g2 = PLFunction.from_points([(1, mpq(1, 2)), (3, mpq(5, 2)), (5, mpq(3, 2))])
    return [Curve(1, g1), Curve(1, g2)]


def figure2_curves() -> list:
    """Two ordered tent-shaped curves whose stripes of thickness 1/4 overlap."""
    f1 = PLFunction.from_points([(0, mpq(1, 4)), (mpq(1, 2), mpq(1, 2)), (1, mpq(1, 4))], 0, 0)
    f2 = PLFunction.from_points([(0, mpq(1, 2)), (mpq(1, 2), mpq(1, 2)), (1, mpq(3, 4))], 0, 0)
    return [Curve(1, f1), Curve(1, f2)]


FIGURE2_DELTA = mpq(1, 4)


def figure2_arrangement(disjoint: bool = True) -> Arrangement:
    curves = figure2_curves()
    if disjoint:
        curves = disjointify(curves, FIGURE2_DELTA)
    return Arrangement(1, tuple(c.f for c in curves), FIGURE2_DELTA)


def cantor_intervals(level: int, keep=(0, 2), base: int = 3) -> list:
    """Closed intervals of the ``level``-th stage of a Cantor construction on [0, 1].

    ``keep`` lists which of the ``base`` equal subintervals survive each step.
    """
    ivs = [(ZERO, ONE)]
    for _ in range(level):
        nxt = []
        for a, b in ivs:
            w = (b - a) / base
            nxt.extend((a + k * w, a + (k + 1) * w) for k in keep)
        ivs = nxt
    return ivs


def stripe_cover_of_intervals(ivs, axis: int = 1) -> Arrangement:
    """Flat stripes, one per interval of the transverse coordinate."""
    widths = {b - a for a, b in ivs}
    if len(widths) != 1:
        raise ValueError("intervals must share one width")
    delta = widths.pop()
    fs = tuple(PLFunction.constant((a + b) / 2) for a, b in sorted(ivs))
    return Arrangement(axis, fs, delta)


def four_corner_cover(j: int) -> Arrangement:
    """``2**j`` flat stripes of thickness ``4**-j`` covering the ``j``-th four-corner iterate.

    Total thickness is exactly ``2**-j``.
    """
    return stripe_cover_of_intervals(cantor_intervals(j, keep=(0, 3), base=4))


def cantor_product_cover(level: int) -> Arrangement:
    """Flat stripes covering ``C_level x C_level`` for the middle-thirds Cantor set."""
    return stripe_cover_of_intervals(cantor_intervals(level))


def cantor_product_points(level: int, depth: int, count: int, seed: int = 0) -> list:
    """Points of ``C_depth x C_depth`` (``depth >= level``): endpoints and centres of stage intervals."""
    rng = random.Random(seed)
    ivs = cantor_intervals(depth)

    def pick():
        a, b = rng.choice(ivs)
        return (a, b, (a + b) / 2)[rng.randrange(3)]

    return [(pick(), pick()) for _ in range(count)]


def approximation_sequence(n: int = 10) -> list:
    """Disjoint arrangements with ``N_j * delta_j = 2**-j`` for ``j = 1..n``."""
    return [four_corner_cover(j) for j in range(1, n + 1)]
