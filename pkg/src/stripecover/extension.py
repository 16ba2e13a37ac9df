"""McShane extensions of Lipschitz data on finite sample sets, and pointwise
Lipschitz constants.

On the line every quantity is exact.  In dimensions 2 and 3 Euclidean
distances are irrational, so extensions are evaluated in floating point while
Lipschitz constants are still available exactly as squares.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .errors import ConsistencyError, InvariantError, PreconditionError
from .pl import ZERO, Scalar, scalar


@dataclass(frozen=True)
class SampleSet:
    points: tuple
    values: tuple

    def __post_init__(self):
        pts = tuple(tuple(scalar(c) for c in (p if isinstance(p, (list, tuple)) else (p,)))
                    for p in self.points)
        vals = tuple(scalar(v) for v in self.values)
        if not pts:
            raise InvariantError("sample set is empty")
        if len(pts) != len(vals):
            raise InvariantError(f"{len(pts)} points but {len(vals)} values")
        dims = {len(p) for p in pts}
        if len(dims) != 1 or dims.pop() not in (1, 2, 3):
            raise InvariantError("points must all have dimension 1, 2 or 3")
        if len(set(pts)) != len(pts):
            raise InvariantError("sample points must be pairwise distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    @property
    def sup_norm(self) -> Scalar:
        return max(abs(v) for v in self.values)

    @cached_property
    def lipschitz_squared(self) -> Scalar:
        return sample_lipschitz_squared(self)

    @cached_property
    def lipschitz(self):
        return _line_lipschitz(self) if self.dim == 1 else math.sqrt(self.lipschitz_squared)

    @cached_property
    def float_data(self) -> tuple:
        return tuple((tuple(float(c) for c in p), float(v)) for p, v in zip(self.points, self.values))


def _sq_dist(a, b) -> Scalar:
    return sum(((x - y) * (x - y) for x, y in zip(a, b)), ZERO)


def _coords(query, dim):
    if not isinstance(query, (list, tuple)):
        query = (query,)
    if len(query) != dim:
        raise PreconditionError(f"query has dimension {len(query)}, samples have {dim}")
    return query


def sample_lipschitz_squared(s: SampleSet) -> Scalar:
    """Exact ``max |f(a) - f(b)|^2 / |a - b|^2`` over sample pairs."""
    best = ZERO
    pts, vals = s.points, s.values
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dv = vals[i] - vals[j]
            r = dv * dv / _sq_dist(pts[i], pts[j])
            if r > best:
                best = r
    return best


def sample_lipschitz(s: SampleSet):
    """Lipschitz constant of the sampled data: exact on the line, a float otherwise."""
    return s.lipschitz


def _line_lipschitz(s: SampleSet) -> Scalar:
    best = ZERO
    pts, vals = s.points, s.values
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            r = abs(vals[i] - vals[j]) / abs(pts[i][0] - pts[j][0])
            if r > best:
                best = r
    return best


def _check_constant(s: SampleSet, L):
    if isinstance(L, float):
        if L < 0 or L * L < float(s.lipschitz_squared) * (1 - 1e-12):
            raise ConsistencyError(f"L={L} is below the sample Lipschitz constant")
        return L
    L = scalar(L)
    if L < 0 or L * L < s.lipschitz_squared:
        raise ConsistencyError(
            f"L={L} is below the sample Lipschitz constant {sample_lipschitz(s)}")
    return L


def mcshane_extend(s: SampleSet, L, query):
    """``min over samples a of f(a) + L * |query - a|``.

    Exact when the samples live on the line and ``L`` is rational; a float
    otherwise.
    """
    L = _check_constant(s, L)
    q = _coords(query, s.dim)
    if s.dim == 1 and not isinstance(L, float):
        x = scalar(q[0])
        return min(v + L * abs(x - a[0]) for a, v in zip(s.points, s.values))
    exact = not any(isinstance(c, float) for c in q)
    if exact:
        q = [scalar(c) for c in q]
    Lf = float(L)
    if exact:
        return min(float(v) + Lf * math.sqrt(_sq_dist(q, a)) for a, v in zip(s.points, s.values))
    qf = [float(c) for c in q]
    return min(v + Lf * math.dist(qf, a) for a, v in s.float_data)


def bounded_mcshane_extend(s: SampleSet, query, L=None):
    """McShane extension with constant ``L(f)``, clamped into ``[-M, M]``, ``M = max |f|``."""
    if L is None:
        L = sample_lipschitz(s)
    F = mcshane_extend(s, L, query)
    M = s.sup_norm
    if isinstance(F, float):
        M = float(M)
    return max(-M, min(M, F))


@dataclass
class PointwiseLip:
    upper: float                # estimate of Lip[f](x)
    lower: float                # estimate of lip[f](x)
    radii: tuple
    samples_per_radius: int


def pointwise_lip(f: Callable, x, radii: Sequence[float], samples: int = 64,
                  seed: int = 0) -> PointwiseLip:
    """Estimate the upper and lower pointwise Lipschitz constants of ``f`` at ``x``.

    At each radius ``r`` the ball is probed at ``samples`` points (always
    including points at distance exactly ``r``).  The upper estimate is the
    largest difference quotient seen at any radius; the lower estimate is the
    smallest over radii of ``max |f(y) - f(x)| / r``.
    """
    radii = [float(r) for r in radii]
    if not radii:
        raise PreconditionError("radius schedule is empty")
    for a, b in zip(radii, radii[1:]):
        if not a > b:
            raise PreconditionError("radii must be strictly decreasing")
    if radii[-1] <= 0:
        raise PreconditionError("radii must stay positive")
    rng = random.Random(seed)
    xs = [float(c) for c in (x if isinstance(x, (list, tuple)) else (x,))]
    n = len(xs)
    fx = f(xs[0] if n == 1 else xs)
    upper, lower = 0.0, math.inf
    for r in radii:
        sup_diff, sup_q = 0.0, 0.0
        for k in range(samples):
            direction = [rng.gauss(0.0, 1.0) for _ in range(n)] if n > 1 else [1.0 if k % 2 else -1.0]
            norm = math.sqrt(sum(c * c for c in direction)) or 1.0
            # first two probes sit on the sphere, the rest fill the ball
            rho = r if k < 2 else r * rng.uniform(0.05, 1.0)
            y = [c + rho * d / norm for c, d in zip(xs, direction)]
            diff = abs(f(y[0] if n == 1 else y) - fx)
            sup_diff = max(sup_diff, diff)
            sup_q = max(sup_q, diff / rho)
        upper = max(upper, sup_q)
        lower = min(lower, sup_diff / r)
    return PointwiseLip(upper, lower, tuple(radii), samples)
