"""Coordinate approximators built from a disjoint stripe arrangement.

For an axis-1 arrangement the approximator is

    phi(p) = integral over {p1} x [y0, p2] of the indicator of the complement
             of the stripes,

a signed vertical length.  It is constant across every stripe section, grows
with slope 1 between stripes, and differs from ``p2 - y0`` by at most the
total thickness of the arrangement.  Axis-2 arrangements use the same
construction with the coordinates swapped.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import PreconditionError
from .intervals import overlap
from .pl import ONE, ZERO, PLFunction, Scalar, pointwise_max, pointwise_min, scalar
from .stripes import Arrangement, join_point, split_point


@dataclass(frozen=True)
class CoordApproximator:
    arrangement: Arrangement
    baseline: Scalar = ZERO
    window: tuple = (ZERO, ONE)

    def __post_init__(self):
        a = self.arrangement
        object.__setattr__(self, "baseline", scalar(self.baseline))
        object.__setattr__(self, "window", (scalar(self.window[0]), scalar(self.window[1])))
        if not a.has_disjoint_interiors():
            raise PreconditionError(
                "coordinate approximator needs stripes with pairwise-disjoint interiors")
        if a.curves:
            lowest = a.curves[0].with_domain(self.window).minimum() - a.delta / 2
            if lowest < self.baseline:
                raise PreconditionError(
                    f"baseline {self.baseline} lies above the lowest stripe "
                    f"(edge at {lowest}) on the window")

    @property
    def axis(self) -> int:
        return self.arrangement.axis

    @property
    def delta(self) -> Scalar:
        return self.arrangement.delta if self.arrangement.curves else ZERO

    def _covered(self, t, lo, hi) -> Scalar:
        """Length of ``[lo, hi]`` covered by stripe sections over ``t``."""
        curves = self.arrangement.curves
        n = len(curves)
        if n == 0 or hi <= lo:
            return ZERO
        h = self.delta / 2
        cache = {}

        def center(i):
            c = cache.get(i)
            if c is None:
                c = cache[i] = curves[i]._eval(t)
            return c

        # first stripe whose upper edge is above lo
        a, b = 0, n
        while a < b:
            m = (a + b) // 2
            if center(m) + h > lo:
                b = m
            else:
                a = m + 1
        first = a
        # last stripe whose lower edge is below hi
        a, b = first, n
        while a < b:
            m = (a + b) // 2
            if center(m) - h < hi:
                a = m + 1
            else:
                b = m
        last = a - 1
        if last < first:
            return ZERO
        c0 = center(first)
        if last == first:
            return overlap(c0 - h, c0 + h, lo, hi)
        c1 = center(last)
        return (overlap(c0 - h, c0 + h, lo, hi) + overlap(c1 - h, c1 + h, lo, hi)
                + (last - first - 1) * self.delta)

    def __call__(self, p) -> Scalar:
        t, y = split_point(self.axis, p)
        y0 = self.baseline
        if y >= y0:
            return (y - y0) - self._covered(t, y0, y)
        return -((y0 - y) - self._covered(t, y, y0))

    def deficit(self, p) -> Scalar:
        """``(y - y0) - phi(p)`` with ``y`` the approximated coordinate."""
        _, y = split_point(self.axis, p)
        return (y - self.baseline) - self(p)

    def transverse_range(self) -> tuple:
        """Exact range of the approximated coordinate spanned by the stripes on the window."""
        a = self.arrangement
        if not a.curves:
            return (self.baseline, self.baseline + 1)
        h = a.delta / 2
        lo = a.curves[0].with_domain(self.window).minimum() - h
        hi = a.curves[-1].with_domain(self.window).maximum() + h
        return (min(lo, self.baseline), hi)


def phi_eval(A: CoordApproximator, p) -> Scalar:
    return A(p)


def restrict_vertical(A: CoordApproximator, t) -> PLFunction:
    """``phi`` along the line through parameter ``t``, as a function of the transverse coordinate.

    Built by integrating the slope (0 inside a stripe section, 1 outside)
    from the baseline, not by calling ``phi``.
    """
    t = scalar(t)
    y0 = A.baseline
    secs = []
    if A.arrangement.curves:
        h = A.delta / 2
        secs = [(c._eval(t) - h, c._eval(t) + h) for c in A.arrangement.curves]
    edges = sorted({y0} | {e for s in secs for e in s})
    i0 = edges.index(y0)

    def slope(a, b):
        mid = (a + b) / 2
        return ZERO if any(lo <= mid <= hi for lo, hi in secs) else ONE

    vals = [ZERO] * len(edges)
    for i in range(i0 + 1, len(edges)):
        vals[i] = vals[i - 1] + (edges[i] - edges[i - 1]) * slope(edges[i - 1], edges[i])
    for i in range(i0 - 1, -1, -1):
        vals[i] = vals[i + 1] - (edges[i + 1] - edges[i]) * slope(edges[i], edges[i + 1])
    return PLFunction(edges, vals, ONE, ONE)


def restrict_horizontal(A: CoordApproximator, y) -> PLFunction:
    """``phi`` along the line of transverse coordinate ``y``, as a PL function of the parameter."""
    y = scalar(y)
    y0 = A.baseline
    lo, hi, sign = (y0, y, 1) if y >= y0 else (y, y0, -1)
    total = PLFunction.constant(hi - lo)
    if A.arrangement.curves:
        h = A.delta / 2
        top = PLFunction.constant(hi)
        bottom = PLFunction.constant(lo)
        zero = PLFunction.constant(0)
        for c in A.arrangement.curves:
            length = pointwise_min(top, c.shift(h)) - pointwise_max(bottom, c.shift(-h))
            total = (total - pointwise_max(length, zero)).simplify()
    return total.scale(sign)


# verification campaigns


def random_rational(rng: random.Random, lo, hi, bits: int = 16) -> Scalar:
    from gmpy2 import mpq
    k = rng.randrange(0, (1 << bits) + 1)
    return lo + (hi - lo) * mpq(k, 1 << bits)


class PairSampler:
    """Stratified point pairs that exercise every case of the Lipschitz argument.

    Strata: same vertical line, same stripe, same gap between neighbouring
    stripes, arbitrary, exact stripe-boundary points, and near-coincident
    pairs.
    """

    STRATA = ("vertical", "stripe", "gap", "arbitrary", "boundary", "close")

    def __init__(self, A: CoordApproximator, rng: random.Random):
        self.A = A
        self.rng = rng
        self.t_lo, self.t_hi = A.window
        lo, hi = A.transverse_range()
        pad = (hi - lo) / 8
        self.y_lo, self.y_hi = lo - pad, hi + pad

    def _t(self):
        return random_rational(self.rng, self.t_lo, self.t_hi)

    def _y(self):
        return random_rational(self.rng, self.y_lo, self.y_hi)

    def _in_stripe(self, l, t):
        c = self.A.arrangement.curves[l]._eval(t)
        d = self.A.delta
        return c - d / 2 + d * random_rational(self.rng, 0, 1, 6)

    def _in_gap(self, g, t):
        curves = self.A.arrangement.curves
        d = self.A.delta
        lo = curves[g - 1]._eval(t) + d / 2 if g > 0 else self.y_lo
        hi = curves[g]._eval(t) - d / 2 if g < len(curves) else self.y_hi
        return random_rational(self.rng, lo, hi, 10)

    def point(self, t, y):
        return join_point(self.A.axis, t, y)

    def pair(self, stratum: str):
        rng = self.rng
        n = len(self.A.arrangement.curves)
        if stratum == "vertical":
            t = self._t()
            return self.point(t, self._y()), self.point(t, self._y())
        if stratum == "stripe" and n:
            l = rng.randrange(n)
            t, s = self._t(), self._t()
            return self.point(t, self._in_stripe(l, t)), self.point(s, self._in_stripe(l, s))
        if stratum == "gap" and n:
            g = rng.randrange(n + 1)
            t, s = self._t(), self._t()
            return self.point(t, self._in_gap(g, t)), self.point(s, self._in_gap(g, s))
        if stratum == "boundary" and n:
            d = self.A.delta
            out = []
            for _ in range(2):
                t = self._t()
                c = self.A.arrangement.curves[rng.randrange(n)]._eval(t)
                out.append(self.point(t, c + d / 2 if rng.random() < 0.5 else c - d / 2))
            return tuple(out)
        if stratum == "close":
            from gmpy2 import mpq
            t, y = self._t(), self._y()
            eps = mpq(1, 1 << 20)
            dt = eps * rng.randint(-8, 8)
            dy = eps * rng.randint(-8, 8)
            return self.point(t, y), self.point(t + dt, y + dy)
        return self.point(self._t(), self._y()), self.point(self._t(), self._y())

    def pairs(self, count: int):
        for i in range(count):
            yield self.pair(self.STRATA[i % len(self.STRATA)])


@dataclass
class LipschitzReport:
    pairs: int
    max_ratio_sq: Scalar          # max of (dphi)^2 / |p - q|^2, Euclidean
    max_ratio_taxicab: Scalar     # max of |dphi| / |p - q|_1
    witness: Optional[tuple]      # pair attaining the Euclidean maximum
    violations: list = field(default_factory=list)

    @property
    def max_ratio(self) -> float:
        return float(self.max_ratio_sq) ** 0.5

    @property
    def ok(self) -> bool:
        return not self.violations and self.max_ratio_sq <= 9


def check_pair(A: CoordApproximator, p, q) -> tuple:
    """Exact ``(|dphi|^2 / |p-q|^2, |dphi| / |p-q|_1, case_bound_holds)``.

    The case bound is ``|dphi| <= |dy| + 2|dt|`` (transverse plus twice the
    parameter difference), which implies the Euclidean constant 3.
    """
    dphi = abs(A(p) - A(q))
    tp, yp = split_point(A.axis, p)
    tq, yq = split_point(A.axis, q)
    dt, dy = abs(tp - tq), abs(yp - yq)
    d2 = dt * dt + dy * dy
    if d2 == 0:
        return ZERO, ZERO, dphi == 0
    return dphi * dphi / d2, dphi / (dt + dy), dphi <= dy + 2 * dt


def verify_three_lipschitz(A: CoordApproximator, pair_budget: int = 1000,
                           seed: int = 0, pairs: Optional[Iterable] = None) -> LipschitzReport:
    if pair_budget < 1:
        raise PreconditionError("pair budget must be at least 1")
    if pairs is None:
        pairs = PairSampler(A, random.Random(seed)).pairs(pair_budget)
    best_sq, best_tx, witness, bad = ZERO, ZERO, None, []
    n = 0
    for p, q in pairs:
        n += 1
        sq, tx, case_ok = check_pair(A, p, q)
        if sq > best_sq:
            best_sq, witness = sq, (p, q)
        if tx > best_tx:
            best_tx = tx
        if not case_ok or sq > 9:
            bad.append((p, q))
    return LipschitzReport(n, best_sq, best_tx, witness, bad)


@dataclass
class ApproxReport:
    points: int
    max_deficit: Scalar
    min_deficit: Scalar
    bound: Scalar
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def sample_points(A: CoordApproximator, count: int, seed: int = 0) -> list:
    """Random points over the window, spanning the stripes and some margin above."""
    rng = random.Random(seed)
    lo, hi = A.transverse_range()
    lo = max(lo, A.baseline)
    hi = hi + (hi - lo) / 4
    out = []
    for _ in range(count):
        t = random_rational(rng, *A.window)
        out.append(join_point(A.axis, t, random_rational(rng, lo, hi)))
    return out


def verify_approximation(A: CoordApproximator, pts: Iterable) -> ApproxReport:
    """Check ``0 <= (y - y0) - phi(p) <= N * delta`` exactly at each point above the baseline."""
    bound = len(A.arrangement) * A.delta
    hi, lo, bad, n = None, None, [], 0
    for p in pts:
        n += 1
        d = A.deficit(p)
        hi = d if hi is None or d > hi else hi
        lo = d if lo is None or d < lo else lo
        if not ZERO <= d <= bound:
            bad.append((p, d))
    return ApproxReport(n, hi if hi is not None else ZERO, lo if lo is not None else ZERO,
                        bound, bad)


@dataclass
class UnivariateReport:
    constants: list        # observed phi - f_l(t) per stripe (None if inconsistent)
    expected: list         # -y0 - delta/2 - (l-1) * delta
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def expected_stripe_constant(A: CoordApproximator, l: int) -> Scalar:
    """Offset ``phi - f_l`` on stripe ``l`` (0-based) for a baseline below every stripe."""
    return -A.baseline - A.delta / 2 - l * A.delta


def verify_stripe_univariate(A: CoordApproximator, per_stripe: int = 100,
                             seed: int = 0) -> UnivariateReport:
    """Inside each stripe, ``phi`` depends only on the parameter coordinate.

    Vertically stacked pairs must give equal values, and ``phi - f_l`` must
    be one constant across all sampled points of stripe ``l``.
    """
    rng = random.Random(seed)
    sampler = PairSampler(A, rng)
    consts, expected, bad = [], [], []
    for l, f in enumerate(A.arrangement.curves):
        seen = set()
        for _ in range(per_stripe):
            t = sampler._t()
            p = sampler.point(t, sampler._in_stripe(l, t))
            q = sampler.point(t, sampler._in_stripe(l, t))
            vp = A(p)
            if vp != A(q):
                bad.append(("vertical", l, p, q))
            seen.add(vp - f._eval(t))
        exp = expected_stripe_constant(A, l)
        expected.append(exp)
        if len(seen) == 1:
            c = seen.pop()
            consts.append(c)
            if c != exp:
                bad.append(("offset", l, c, exp))
        else:
            consts.append(None)
            bad.append(("constant", l, sorted(seen)))
    return UnivariateReport(consts, expected, bad)


def interval_inequality(p2, p2p, q2, q2p) -> bool:
    """``|p2 - p2'| + |q2' - q2| <= |p2 - q2| + |p2' - q2'|`` given ``p2 <= p2'``, ``q2' <= q2``."""
    if not (p2 <= p2p and q2p <= q2):
        raise PreconditionError("interval inequality needs p2 <= p2' and q2' <= q2")
    return abs(p2 - p2p) + abs(q2p - q2) <= abs(p2 - q2) + abs(p2p - q2p)
