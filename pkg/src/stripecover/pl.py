"""Exact piecewise-linear functions of one real variable.

Every coordinate in the package is a :data:`Scalar` (a ``gmpy2.mpq``), so
envelopes, compositions and level sets of piecewise-linear functions are
computed without rounding.  A :class:`PLFunction` is stored as its
breakpoints, the values there, and the two slopes used to extend it affinely
past the first and last breakpoint.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

from .errors import DomainError, InvariantError

Scalar = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


def scalar(x) -> Scalar:
    """Coerce ``x`` to an exact rational.

    Accepts ints, ``Fraction``, ``mpq``, strings such as ``"3/4"`` or
    ``"0.125"``, and ``(num, den)`` pairs.  Floats are converted exactly.
    """
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return mpq(f.numerator, f.denominator)
    if isinstance(x, (tuple, list)) and len(x) == 2:
        num, den = int(x[0]), int(x[1])
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return mpq(num, den)
    if isinstance(x, float):
        return mpq(x)
    return mpq(x)


def to_fraction(x) -> Fraction:
    x = scalar(x)
    return Fraction(int(x.numerator), int(x.denominator))


Interval = tuple  # (lo, hi) of Scalars


@dataclass(frozen=True, slots=True)
class PLFunction:
    """Continuous piecewise-linear function on the line or on a closed interval."""

    breakpoints: tuple
    values: tuple
    left_slope: Scalar = ZERO
    right_slope: Scalar = ZERO
    domain: Optional[Interval] = None

    def __post_init__(self):
        bps = tuple(scalar(b) for b in self.breakpoints)
        vals = tuple(scalar(v) for v in self.values)
        if not bps:
            raise InvariantError("a PL function needs at least one breakpoint")
        if len(bps) != len(vals):
            raise InvariantError(
                f"{len(bps)} breakpoints but {len(vals)} values")
        for a, b in zip(bps, bps[1:]):
            if not a < b:
                raise InvariantError(
                    f"breakpoints must be strictly increasing ({a} !< {b})")
        dom = self.domain
        if dom is not None:
            dom = (scalar(dom[0]), scalar(dom[1]))
            if dom[0] > dom[1]:
                raise InvariantError(f"empty domain [{dom[0]}, {dom[1]}]")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "left_slope", scalar(self.left_slope))
        object.__setattr__(self, "right_slope", scalar(self.right_slope))
        object.__setattr__(self, "domain", dom)

    # construction helpers

    @classmethod
    def constant(cls, c, domain=None) -> "PLFunction":
        return cls((ZERO,), (scalar(c),), ZERO, ZERO, domain)

    @classmethod
    def identity(cls, domain=None) -> "PLFunction":
        return cls((ZERO,), (ZERO,), ONE, ONE, domain)

    @classmethod
    def affine(cls, slope, intercept=0, domain=None) -> "PLFunction":
        return cls((ZERO,), (scalar(intercept),), slope, slope, domain)

    @classmethod
    def from_points(cls, points: Iterable, left_slope=None, right_slope=None,
                    domain=None) -> "PLFunction":
        """Interpolate ``(x, y)`` pairs.

        Missing extension slopes continue the first/last segment (or are 0
        for a single point).
        """
        pts = [(scalar(x), scalar(y)) for x, y in points]
        xs = tuple(p[0] for p in pts)
        ys = tuple(p[1] for p in pts)
        if left_slope is None:
            left_slope = (ys[1] - ys[0]) / (xs[1] - xs[0]) if len(xs) > 1 else ZERO
        if right_slope is None:
            right_slope = (ys[-1] - ys[-2]) / (xs[-1] - xs[-2]) if len(xs) > 1 else ZERO
        return cls(xs, ys, left_slope, right_slope, domain)

    @classmethod
    def tent(cls, center=0, height=1, slope=1, domain=None) -> "PLFunction":
        """``t -> height - slope*|t - center|`` with breakpoints one unit either side."""
        c, h, m = scalar(center), scalar(height), scalar(slope)
        return cls((c - 1, c, c + 1), (h - m, h, h - m), m, -m, domain)

    # evaluation

    def _eval(self, x: Scalar) -> Scalar:
        bps = self.breakpoints
        if x <= bps[0]:
            return self.values[0] + self.left_slope * (x - bps[0])
        if x >= bps[-1]:
            return self.values[-1] + self.right_slope * (x - bps[-1])
        i = bisect_right(bps, x)
        x0, x1 = bps[i - 1], bps[i]
        y0, y1 = self.values[i - 1], self.values[i]
        if x == x0:
            return y0
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def eval(self, x) -> Scalar:
        x = scalar(x)
        dom = self.domain
        if dom is not None and not dom[0] <= x <= dom[1]:
            raise DomainError(f"{x} outside domain [{dom[0]}, {dom[1]}]")
        return self._eval(x)

    __call__ = eval

    # slopes

    def interior_slopes(self) -> list:
        b, v = self.breakpoints, self.values
        return [(v[i + 1] - v[i]) / (b[i + 1] - b[i]) for i in range(len(b) - 1)]

    def pieces(self) -> list:
        """``(lo, hi, slope)`` for every piece; ``None`` marks an infinite end."""
        b = self.breakpoints
        out = [(None, b[0], self.left_slope)]
        out.extend((b[i], b[i + 1], s) for i, s in enumerate(self.interior_slopes()))
        out.append((b[-1], None, self.right_slope))
        return out

    def _relevant_pieces(self) -> list:
        dom = self.domain
        if dom is None:
            return self.pieces()
        lo, hi = dom
        keep = []
        for a, b, s in self.pieces():
            a_ok = a is None or a < hi
            b_ok = b is None or b > lo
            if a_ok and b_ok:
                keep.append((a, b, s))
        if not keep:  # degenerate domain [c, c]
            keep = [p for p in self.pieces()
                    if (p[0] is None or p[0] <= lo) and (p[1] is None or p[1] >= lo)][:1]
        return keep

    def slopes(self) -> list:
        """Slopes of every piece that meets the domain (all pieces if unbounded)."""
        return [s for _, _, s in self._relevant_pieces()]

    def slope_at(self, x) -> Scalar:
        """Derivative at a non-breakpoint ``x``."""
        x = scalar(x)
        bps = self.breakpoints
        i = bisect_left(bps, x)
        if i < len(bps) and bps[i] == x:
            raise DomainError(f"{x} is a breakpoint; derivative undefined")
        if i == 0:
            return self.left_slope
        if i == len(bps):
            return self.right_slope
        return (self.values[i] - self.values[i - 1]) / (bps[i] - bps[i - 1])

    def lipschitz_constant(self) -> Scalar:
        return max(abs(s) for s in self.slopes())

    # arithmetic

    def shift(self, c) -> "PLFunction":
        c = scalar(c)
        return PLFunction(self.breakpoints, tuple(v + c for v in self.values),
                          self.left_slope, self.right_slope, self.domain)

    def scale(self, c) -> "PLFunction":
        c = scalar(c)
        return PLFunction(self.breakpoints, tuple(v * c for v in self.values),
                          self.left_slope * c, self.right_slope * c, self.domain)

    def __neg__(self) -> "PLFunction":
        return self.scale(-1)

    def __add__(self, other) -> "PLFunction":
        if not isinstance(other, PLFunction):
            return self.shift(other)
        xs = _merged(self.breakpoints, other.breakpoints)
        return PLFunction(xs, tuple(self._eval(x) + other._eval(x) for x in xs),
                          self.left_slope + other.left_slope,
                          self.right_slope + other.right_slope,
                          _meet(self.domain, other.domain))

    def __sub__(self, other) -> "PLFunction":
        if not isinstance(other, PLFunction):
            return self.shift(-scalar(other))
        return self + (-other)

    def with_domain(self, domain) -> "PLFunction":
        return PLFunction(self.breakpoints, self.values, self.left_slope,
                          self.right_slope, domain)

    def simplify(self) -> "PLFunction":
        """Drop breakpoints where the slope does not change."""
        slopes = [self.left_slope] + self.interior_slopes() + [self.right_slope]
        keep = [i for i in range(len(self.breakpoints)) if slopes[i] != slopes[i + 1]]
        if not keep:
            keep = [0]
        return PLFunction(tuple(self.breakpoints[i] for i in keep),
                          tuple(self.values[i] for i in keep),
                          self.left_slope, self.right_slope, self.domain)

    # exact extremes and comparison

    def minimum(self) -> Optional[Scalar]:
        """Exact infimum over the domain, or ``None`` when it is -infinity."""
        return _infimum(self)

    def maximum(self) -> Optional[Scalar]:
        """Exact supremum over the domain, or ``None`` when it is +infinity."""
        m = _infimum(-self)
        return None if m is None else -m

    def equals(self, other: "PLFunction") -> bool:
        """Semantic equality: same domain and same values everywhere."""
        if self.domain != other.domain:
            return False
        d = self - other
        return d.minimum() == 0 and d.maximum() == 0

    def __repr__(self):
        pts = ", ".join(f"({x}, {y})" for x, y in zip(self.breakpoints, self.values))
        dom = "" if self.domain is None else f", domain=[{self.domain[0]}, {self.domain[1]}]"
        return (f"PLFunction([{pts}], left_slope={self.left_slope}, "
                f"right_slope={self.right_slope}{dom})")


def _merged(a: Sequence, b: Sequence) -> tuple:
    if a == b:
        return tuple(a)
    return tuple(sorted(set(a) | set(b)))


def _meet(d1, d2):
    if d1 is None:
        return d2
    if d2 is None:
        return d1
    lo, hi = max(d1[0], d2[0]), min(d1[1], d2[1])
    if lo > hi:
        raise DomainError(f"disjoint domains {d1} and {d2}")
    return (lo, hi)


def _infimum(f: PLFunction):
    dom = f.domain
    if dom is None:
        if f.left_slope > 0 or f.right_slope < 0:
            return None
        return min(f.values)
    lo, hi = dom
    cands = [f._eval(lo), f._eval(hi)]
    cands.extend(v for x, v in zip(f.breakpoints, f.values) if lo < x < hi)
    return min(cands)


def _crossings(f: PLFunction, g: PLFunction, xs: tuple) -> list:
    """Points where ``f - g`` changes sign strictly, including on the tails."""
    d = [f._eval(x) - g._eval(x) for x in xs]
    out = []
    for i in range(len(xs) - 1):
        if d[i] * d[i + 1] < 0:
            out.append(xs[i] + (xs[i + 1] - xs[i]) * d[i] / (d[i] - d[i + 1]))
    sl = f.left_slope - g.left_slope
    if sl != 0 and d[0] / sl > 0:
        out.append(xs[0] - d[0] / sl)
    sr = f.right_slope - g.right_slope
    if sr != 0 and d[-1] / sr < 0:
        out.append(xs[-1] - d[-1] / sr)
    return out


def _envelope(f: PLFunction, g: PLFunction, pick) -> PLFunction:
    xs = _merged(f.breakpoints, g.breakpoints)
    cross = _crossings(f, g, xs)
    if cross:
        xs = tuple(sorted(set(xs) | set(cross)))
    vals = tuple(pick(f._eval(x), g._eval(x)) for x in xs)
    left = vals[0] - pick(f._eval(xs[0] - 1), g._eval(xs[0] - 1))
    right = pick(f._eval(xs[-1] + 1), g._eval(xs[-1] + 1)) - vals[-1]
    return PLFunction(xs, vals, left, right, _meet(f.domain, g.domain))


def pointwise_max(f: PLFunction, g: PLFunction) -> PLFunction:
    """Upper envelope ``f v g``.

    The result's breakpoints are the union of both inputs' breakpoints plus
    every point where the two functions cross.
    """
    return _envelope(f, g, max)


def pointwise_min(f: PLFunction, g: PLFunction) -> PLFunction:
    return _envelope(f, g, min)


def shift(f: PLFunction, c) -> PLFunction:
    return f.shift(c)


def eval_pl(f: PLFunction, x) -> Scalar:
    return f.eval(x)


def lipschitz_constant(f: PLFunction) -> Scalar:
    return f.lipschitz_constant()


def le(f: PLFunction, g: PLFunction, margin=0) -> bool:
    """Exact test of ``f + margin <= g`` on the common domain."""
    m = (g - f).minimum()
    return m is not None and m >= scalar(margin)


def compose(outer: PLFunction, inner: PLFunction) -> PLFunction:
    """``outer o inner``, exact.  The domain of ``inner`` is kept."""
    xs = set(inner.breakpoints)
    targets = outer.breakpoints
    for a, b, s in inner.pieces():
        if s == 0:
            continue
        x0 = a if a is not None else b
        y0 = inner._eval(x0)
        for t in targets:
            x = x0 + (t - y0) / s
            if (a is None or x >= a) and (b is None or x <= b):
                xs.add(x)
    xs = tuple(sorted(xs))
    h = lambda x: outer._eval(inner._eval(x))  # noqa: E731
    vals = tuple(h(x) for x in xs)
    return PLFunction(xs, vals, vals[0] - h(xs[0] - 1), h(xs[-1] + 1) - vals[-1],
                      inner.domain)


def level_set(f: PLFunction, lo, hi) -> list:
    """Maximal closed intervals where ``lo <= f <= hi``.

    Endpoints are exact; ``None`` stands for an infinite end.  Intervals that
    touch are merged.
    """
    lo, hi = scalar(lo), scalar(hi)
    out = []
    for a, b, s in f.pieces():
        # affine piece: value at anchor plus slope offset
        anchor = a if a is not None else b
        va = f._eval(anchor)
        if s == 0:
            if lo <= va <= hi:
                seg = (a, b)
            else:
                continue
        else:
            t1 = anchor + (lo - va) / s
            t2 = anchor + (hi - va) / s
            if t1 > t2:
                t1, t2 = t2, t1
            left = t1 if a is None else max(a, t1)
            right = t2 if b is None else min(b, t2)
            if left > right:
                continue
            seg = (left, right)
        if out and out[-1][1] is not None and seg[0] is not None and out[-1][1] >= seg[0]:
            out[-1] = (out[-1][0], seg[1])
        else:
            out.append(seg)
    if f.domain is not None:
        dlo, dhi = f.domain
        clipped = []
        for a, b in out:
            a = dlo if a is None else max(a, dlo)
            b = dhi if b is None else min(b, dhi)
            if a <= b:
                clipped.append((a, b))
        out = clipped
    return out
