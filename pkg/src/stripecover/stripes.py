"""Curves, stripes and arrangements of stripes in the plane.

An axis-1 curve is the graph ``{(t, f(t))}`` of a 1-Lipschitz function; an
axis-2 curve is ``{(f(t), t)}``.  A stripe of thickness ``delta`` is the closed
set of points within ``delta/2`` of its curve, measured along the axis
transverse to the parametrization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import InvariantError, PreconditionError
from .intervals import merge
from .pl import (ONE, ZERO, PLFunction, Scalar, compose, level_set,
                 pointwise_max, pointwise_min, scalar)


def _axis(axis) -> int:
    if axis not in (1, 2):
        raise InvariantError(f"axis must be 1 or 2, got {axis!r}")
    return int(axis)


@dataclass(frozen=True)
class Curve:
    axis: int
    f: PLFunction

    def __post_init__(self):
        _axis(self.axis)
        if self.f.domain is not None:
            raise InvariantError("curve parametrizations are defined on the whole line")
        if self.f.lipschitz_constant() > 1:
            raise InvariantError(
                f"curve parametrization has Lipschitz constant "
                f"{self.f.lipschitz_constant()} > 1")

    def point(self, t) -> tuple:
        t = scalar(t)
        y = self.f(t)
        return (t, y) if self.axis == 1 else (y, t)


@dataclass(frozen=True)
class Stripe:
    curve: Curve
    thickness: Scalar

    def __post_init__(self):
        object.__setattr__(self, "thickness", scalar(self.thickness))
        if self.thickness <= 0:
            raise InvariantError(f"stripe thickness must be positive, got {self.thickness}")

    def section(self, t) -> tuple:
        """The closed transverse section ``[f(t) - delta/2, f(t) + delta/2]``."""
        c = self.curve.f._eval(scalar(t))
        h = self.thickness / 2
        return (c - h, c + h)

    def contains(self, p) -> bool:
        t, y = split_point(self.curve.axis, p)
        return abs(y - self.curve.f._eval(t)) <= self.thickness / 2


def split_point(axis: int, p) -> tuple:
    """``(t, y)``: the parameter coordinate and the transverse coordinate of ``p``."""
    x1, x2 = scalar(p[0]), scalar(p[1])
    return (x1, x2) if axis == 1 else (x2, x1)


def join_point(axis: int, t, y) -> tuple:
    return (t, y) if axis == 1 else (y, t)


@dataclass(frozen=True)
class Arrangement:
    """Ordered family of same-axis stripes.

    ``thickness`` is either one scalar shared by every stripe or one scalar
    per stripe.  Ordering and disjointness are properties checked exactly,
    not stored flags.
    """

    axis: int
    curves: tuple
    thickness: object = field(default=ONE)

    def __post_init__(self):
        _axis(self.axis)
        curves = tuple(c.f if isinstance(c, Curve) else c for c in self.curves)
        for c in curves:
            Curve(self.axis, c)
        th = self.thickness
        if isinstance(th, (list, tuple)):
            th = tuple(scalar(x) for x in th)
            if len(th) != len(curves):
                raise InvariantError(
                    f"{len(th)} thicknesses for {len(curves)} stripes")
            if any(x <= 0 for x in th):
                raise InvariantError("stripe thicknesses must be positive")
        else:
            th = scalar(th)
            if th <= 0:
                raise InvariantError(f"stripe thickness must be positive, got {th}")
        object.__setattr__(self, "curves", curves)
        object.__setattr__(self, "thickness", th)

    def __len__(self):
        return len(self.curves)

    @property
    def uniform(self) -> bool:
        return not isinstance(self.thickness, tuple) or len(set(self.thickness)) <= 1

    @property
    def delta(self) -> Scalar:
        if not isinstance(self.thickness, tuple):
            return self.thickness
        if len(set(self.thickness)) == 1:
            return self.thickness[0]
        raise PreconditionError("arrangement has heterogeneous stripe thicknesses")

    @property
    def thicknesses(self) -> tuple:
        if isinstance(self.thickness, tuple):
            return self.thickness
        return (self.thickness,) * len(self.curves)

    def stripes(self) -> list:
        return [Stripe(Curve(self.axis, f), d) for f, d in zip(self.curves, self.thicknesses)]

    def curve_objects(self) -> list:
        return [Curve(self.axis, f) for f in self.curves]

    def is_ordered(self) -> bool:
        return all(_le(f, g) for f, g in zip(self.curves, self.curves[1:]))

    def has_disjoint_interiors(self) -> bool:
        """Exact check of ``f_j + delta <= f_{j+1}`` for consecutive stripes."""
        if not self.uniform:
            return False
        d = self.delta if self.curves else ZERO
        return all(_le(f, g, d) for f, g in zip(self.curves, self.curves[1:]))

    def contains(self, p) -> bool:
        t, y = split_point(self.axis, p)
        for f, d in zip(self.curves, self.thicknesses):
            if abs(y - f._eval(t)) <= d / 2:
                return True
        return False


def _le(f: PLFunction, g: PLFunction, margin=ZERO) -> bool:
    m = (g - f).minimum()
    return m is not None and m >= margin


def _check_curves(curves: Sequence[Curve]) -> int:
    if not curves:
        return 1
    axes = {c.axis for c in curves}
    if len(axes) != 1:
        raise PreconditionError(f"curves mix axes {sorted(axes)}")
    for c in curves:
        if c.f.lipschitz_constant() > 1:
            raise PreconditionError("curve is not 1-Lipschitz")
    return axes.pop()


def uncross(curves: Sequence[Curve]) -> list:
    """Replace crossing curves by the pointwise-sorted family.

    Curves are inserted one at a time: with ``g_1 <= ... <= g_n`` already
    sorted and a new ``g``, ``h_1 = g_1 v g``, ``f_1 = g_1 ^ g`` and then
    ``h_j = g_j v h_{j-1}``, ``f_j = g_j ^ h_{j-1}``, ``f_{n+1} = h_n``.
    """
    axis = _check_curves(curves)
    sorted_fs: list = []
    for c in curves:
        g_new = c.f
        if not sorted_fs:
            sorted_fs = [g_new]
            continue
        out = []
        h = g_new
        for g in sorted_fs:
            out.append(pointwise_min(g, h).simplify())
            h = pointwise_max(g, h).simplify()
        out.append(h)
        sorted_fs = out
    return [Curve(axis, f) for f in sorted_fs]


def disjointify(curves: Sequence[Curve], delta) -> list:
    """Push ordered stripes upward until their interiors are pairwise disjoint.

    For ``k = 1..N`` every later curve is replaced by
    ``h_{k,j} = h_{k-1,j} v (h_{k,k} + delta)``; the output is ``h_{j,j}``.
    """
    delta = scalar(delta)
    if delta <= 0:
        raise PreconditionError(f"delta must be positive, got {delta}")
    axis = _check_curves(curves)
    h = [c.f for c in curves]
    for f, g in zip(h, h[1:]):
        if not _le(f, g):
            raise PreconditionError(
                "curves are not ordered (f_(j-1) <= f_j fails); uncross them first")
    n = len(h)
    for k in range(n):
        raised = h[k].shift(delta)
        for j in range(k + 1, n):
            h[j] = pointwise_max(h[j], raised).simplify()
    return [Curve(axis, f) for f in h]


def uncross_arrangement(a: Arrangement) -> Arrangement:
    return Arrangement(a.axis, tuple(c.f for c in uncross(a.curve_objects())), a.delta)


def disjointify_arrangement(a: Arrangement, uncross_first: bool = False) -> Arrangement:
    curves = a.curve_objects()
    if uncross_first:
        curves = uncross(curves)
    out = disjointify(curves, a.delta)
    return Arrangement(a.axis, tuple(c.f for c in out), a.delta)


@dataclass
class CoverReport:
    covered: bool
    checked: int
    uncovered: list

    def as_dict(self) -> dict:
        return {"covered": self.covered, "checked": self.checked,
                "uncovered": [[str(x), str(y)] for x, y in self.uncovered]}


def covers(a: Arrangement, points: Iterable) -> CoverReport:
    """Exact closed-stripe membership of every point."""
    missed = []
    n = 0
    for p in points:
        n += 1
        p = (scalar(p[0]), scalar(p[1]))
        if not a.contains(p):
            missed.append(p)
    return CoverReport(not missed, n, missed)


def total_thickness(a: Arrangement) -> Scalar:
    return sum(a.thicknesses, ZERO)


def cone_constant(L) -> float:
    """Arclength of a slope-``L`` transversal inside one stripe, per unit thickness.

    Inside a stripe the transverse offset ``s - f(g(s))`` grows at rate at
    least ``1 - L``, so the parameter interval has length at most
    ``delta/(1 - L)`` and its arclength at most ``sqrt(1 + L^2)`` times that.
    """
    if not 0 <= L < 1:
        raise PreconditionError(f"cone constant needs 0 <= L < 1, got {L}")
    L = float(L)
    return math.sqrt(1 + L * L) / (1 - L)


@dataclass
class TransversalReport:
    per_stripe: list          # (stripe index, lo, hi) in the transversal's parameter
    intervals: list           # merged parameter intervals
    parameter_length: Scalar
    arclength: float
    parameter_bound: Scalar   # sum(delta) / (1 - L)
    arclength_bound: float    # cone_constant(L) * sum(delta)
    lipschitz: Scalar

    @property
    def total_length_bound(self) -> Scalar:
        return self.parameter_bound

    def within_bound(self) -> bool:
        return (self.parameter_length <= self.parameter_bound
                and self.arclength <= self.arclength_bound * (1 + 1e-12))


def transversal_intersection(a: Arrangement, c: Curve) -> TransversalReport:
    """Exact parameter intervals where a transversal curve meets each stripe.

    ``c`` must have the other axis and slope strictly below 1; then the
    transverse offset ``s - f_l(g(s))`` is strictly increasing and each
    intersection is a single interval.
    """
    if c.axis == a.axis:
        raise PreconditionError("transversal curve must use the other axis")
    L = c.f.lipschitz_constant()
    if L >= 1:
        raise PreconditionError(
            f"transversal Lipschitz constant {L} must be < 1 (cone argument degenerates)")
    g = c.f
    ident = PLFunction.identity()
    per = []
    for idx, (f, d) in enumerate(zip(a.curves, a.thicknesses)):
        offset = ident - compose(f, g)
        for lo, hi in level_set(offset, -d / 2, d / 2):
            per.append((idx, lo, hi))
    merged = merge((lo, hi) for _, lo, hi in per)
    plen = sum((hi - lo for lo, hi in merged), ZERO)
    arc = sum(_arclength(g, lo, hi) for lo, hi in merged)
    total = sum(a.thicknesses, ZERO)
    return TransversalReport(per, merged, plen, arc, total / (ONE - L),
                             cone_constant(L) * float(total), L)


def _arclength(g: PLFunction, lo, hi) -> float:
    cuts = [lo] + [b for b in g.breakpoints if lo < b < hi] + [hi]
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        s = float(g._eval(b) - g._eval(a)) / float(b - a) if b > a else 0.0
        total += float(b - a) * math.sqrt(1 + s * s)
    return total
