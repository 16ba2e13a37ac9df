"""Independent reference computations.

Each function recomputes a quantity by the most direct route available
(brute force over all stripes, plain sorting, dense sampling, finite
differences) and shares no code path with the implementation it checks.
"""

from __future__ import annotations

from fractions import Fraction


def _F(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator)) if hasattr(x, "numerator") else Fraction(x)


def pl_value(breakpoints, values, left, right, x) -> Fraction:
    """Direct linear interpolation, scanning every piece."""
    xs = [_F(b) for b in breakpoints]
    ys = [_F(v) for v in values]
    x = _F(x)
    if x <= xs[0]:
        return ys[0] + _F(left) * (x - xs[0])
    if x >= xs[-1]:
        return ys[-1] + _F(right) * (x - xs[-1])
    for i in range(len(xs) - 1):
        if xs[i] <= x <= xs[i + 1]:
            return ys[i] + (ys[i + 1] - ys[i]) * (x - xs[i]) / (xs[i + 1] - xs[i])
    raise AssertionError("unreachable")


def f_at(f, x) -> Fraction:
    return pl_value(f.breakpoints, f.values, f.left_slope, f.right_slope, x)


def sorted_values(functions, t) -> list:
    return sorted(f_at(f, t) for f in functions)


def covered_length(sections, lo, hi) -> Fraction:
    """Measure of ``[lo, hi]`` meeting a union of closed intervals, by sweeping sorted cuts."""
    lo, hi = _F(lo), _F(hi)
    cuts = sorted({lo, hi} | {_F(c) for s in sections for c in s if lo < _F(c) < hi})
    total = Fraction(0)
    for a, b in zip(cuts, cuts[1:]):
        mid = (a + b) / 2
        if any(_F(s0) <= mid <= _F(s1) for s0, s1 in sections):
            total += b - a
    return total


def phi_value(curves, delta, baseline, t, y) -> Fraction:
    """Signed vertical length outside all stripes between the baseline and ``y``."""
    d = _F(delta)
    secs = [(f_at(f, t) - d / 2, f_at(f, t) + d / 2) for f in curves]
    y, y0 = _F(y), _F(baseline)
    if y >= y0:
        return (y - y0) - covered_length(secs, y0, y)
    return -((y0 - y) - covered_length(secs, y, y0))


def phi1d_value(intervals, a, x) -> Fraction:
    """``x - a`` minus the cover length inside ``[a, x]``."""
    a, x = _F(a), _F(x)
    return (x - a) - covered_length([(lo, hi) for lo, hi in intervals], a, x)


def interval_union(intervals) -> Fraction:
    """Union length of closed intervals by sort-and-merge in plain fractions."""
    ivs = sorted((_F(a), _F(b)) for a, b in intervals)
    total, cur_a, cur_b = Fraction(0), None, None
    for a, b in ivs:
        if cur_b is None or a > cur_b:
            if cur_b is not None:
                total += cur_b - cur_a
            cur_a, cur_b = a, b
        else:
            cur_b = max(cur_b, b)
    if cur_b is not None:
        total += cur_b - cur_a
    return total


def square_projection_union(squares, p, q) -> Fraction:
    ivs = []
    for x, y, s in squares:
        corners = [p * _F(x) + q * _F(y) + p * dx * _F(s) + q * dy * _F(s)
                   for dx in (0, 1) for dy in (0, 1)]
        ivs.append((min(corners), max(corners)))
    return interval_union(ivs)


def dense_sample_length(inside, lo, hi, step) -> tuple:
    """Grid estimate of the measure of ``{s in [lo, hi] : inside(s)}``.

    Returns ``(estimate, step)``; each maximal run of hits counts as
    ``run_length * step``.
    """
    lo, hi, step = _F(lo), _F(hi), _F(step)
    n = int((hi - lo) / step)
    hits = 0
    for k in range(n + 1):
        if inside(lo + k * step):
            hits += 1
    return hits * step, step


def central_difference(f, x: float, h: float) -> float:
    return (f(x + h) - f(x - h)) / (2 * h)
