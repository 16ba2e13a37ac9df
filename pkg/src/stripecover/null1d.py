"""One-dimensional approximate identities, measures and derivations.

A finite open cover ``O`` of a null set in ``[a, b]`` yields the function
``phi(x) = integral from a to x of (1 - 1_O)``: 1-Lipschitz, flat on every
component of ``O``, and within ``m(O)`` of the identity.  Measures are kept
already decomposed into atoms (the singular part) and a step density (the
absolutely continuous part).  The derivation ``f -> w * f'`` on the density's
support, zero on atoms, is the concrete model of a derivation on the line.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from itertools import zip_longest
from typing import Optional, Sequence

from gmpy2 import mpq

from .errors import DomainError, InvariantError, PreconditionError
from .pl import ONE, ZERO, PLFunction, Scalar, scalar


@dataclass(frozen=True)
class OpenCover1D:
    domain: tuple
    intervals: tuple

    def __post_init__(self):
        a, b = scalar(self.domain[0]), scalar(self.domain[1])
        if not a < b:
            raise InvariantError(f"working interval [{a}, {b}] is empty")
        ivs = tuple(sorted((scalar(lo), scalar(hi)) for lo, hi in self.intervals))
        for lo, hi in ivs:
            if not lo < hi:
                raise InvariantError(f"cover interval ({lo}, {hi}) is empty")
            if lo < a or hi > b:
                raise InvariantError(f"cover interval ({lo}, {hi}) leaves [{a}, {b}]")
        for (_, h0), (l1, _) in zip(ivs, ivs[1:]):
            if l1 < h0:
                raise InvariantError(f"cover intervals overlap near {l1}")
        object.__setattr__(self, "domain", (a, b))
        object.__setattr__(self, "intervals", ivs)

    @property
    def total_length(self) -> Scalar:
        return sum((hi - lo for lo, hi in self.intervals), ZERO)

    def contains(self, x) -> bool:
        x = scalar(x)
        return any(lo < x < hi for lo, hi in self.intervals)


def build_phi_1d(cover: OpenCover1D) -> PLFunction:
    """``x -> integral from a to x of (1 - 1_O)`` as an exact PL function on ``[a, b]``."""
    a, b = cover.domain
    xs, vs = [a], [ZERO]
    acc = ZERO
    last = a
    for lo, hi in cover.intervals:
        if lo > last:
            acc += lo - last
            xs.append(lo)
            vs.append(acc)
        elif lo == last and xs[-1] != lo:
            xs.append(lo)
            vs.append(acc)
        xs.append(hi)
        vs.append(acc)
        last = hi
    if b > last:
        xs.append(b)
        vs.append(acc + (b - last))
    return PLFunction(xs, vs, ONE, ONE, (a, b))


@dataclass
class DeficitReport:
    max_deficit: Scalar
    argmax: Scalar
    bound: Scalar

    @property
    def ok(self) -> bool:
        return ZERO <= self.max_deficit <= self.bound


def identity_deficit(phi: PLFunction, cover: OpenCover1D) -> DeficitReport:
    """Exact ``max (x - phi(x))`` over the breakpoints of ``phi``."""
    a = cover.domain[0]
    best, arg = None, None
    for x, v in zip(phi.breakpoints, phi.values):
        d = (x - a) - v
        if best is None or d > best:
            best, arg = d, x
    rep = DeficitReport(best, arg, cover.total_length)
    if not rep.ok:
        raise InvariantError(
            f"deficit {best} at {arg} outside [0, {cover.total_length}]")
    return rep


def dyadic_cover(j: int, pieces: int = 4, domain=(0, 1), seed: int = 0) -> OpenCover1D:
    """Cover of total length exactly ``2**-j`` made of ``pieces`` equal intervals
    placed at seeded random positions in disjoint slots of ``domain``."""
    rng = random.Random(seed)
    a, b = scalar(domain[0]), scalar(domain[1])
    total = mpq(1, 2 ** j) * (b - a)
    piece = total / pieces
    slot = (b - a) / pieces
    ivs = []
    for k in range(pieces):
        lo = a + k * slot + (slot - piece) * mpq(rng.randrange(0, 1025), 1024)
        ivs.append((lo, lo + piece))
    return OpenCover1D((a, b), ivs)


class StepFunction:
    """Right-continuous step function on ``[edges[0], edges[-1]]``."""

    __slots__ = ("edges", "values")

    def __init__(self, edges: Sequence, values: Sequence):
        edges = tuple(scalar(e) for e in edges)
        values = tuple(scalar(v) for v in values)
        if len(edges) < 2 or len(values) != len(edges) - 1:
            raise InvariantError("step function needs n+1 edges for n values")
        for x, y in zip(edges, edges[1:]):
            if not x < y:
                raise InvariantError("step edges must be strictly increasing")
        self.edges = edges
        self.values = values

    @classmethod
    def constant(cls, c, domain=(0, 1)) -> "StepFunction":
        return cls(domain, (c,))

    @property
    def domain(self) -> tuple:
        return (self.edges[0], self.edges[-1])

    def __call__(self, x) -> Scalar:
        x = scalar(x)
        if not self.edges[0] <= x <= self.edges[-1]:
            raise DomainError(f"{x} outside [{self.edges[0]}, {self.edges[-1]}]")
        i = min(bisect_right(self.edges, x) - 1, len(self.values) - 1)
        return self.values[i]

    def integral(self, lo, hi) -> Scalar:
        lo, hi = scalar(lo), scalar(hi)
        total = ZERO
        for (x0, x1), v in zip(zip(self.edges, self.edges[1:]), self.values):
            a, b = max(x0, lo), min(x1, hi)
            if b > a:
                total += v * (b - a)
        return total

    def __eq__(self, other):
        return (isinstance(other, StepFunction) and self.edges == other.edges
                and self.values == other.values)

    def __repr__(self):
        return f"StepFunction(edges={list(map(str, self.edges))}, values={list(map(str, self.values))})"


def _poly_eval(c: tuple, x) -> Scalar:
    acc = ZERO
    for k in reversed(c):
        acc = acc * x + k
    return acc


def _poly_mul(a: tuple, b: tuple) -> tuple:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _poly_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip_longest(a, b, fillvalue=ZERO))


def _poly_deriv(c: tuple) -> tuple:
    return tuple(k * c[k] for k in range(1, len(c))) or (ZERO,)


class PiecewisePoly:
    """Piecewise polynomial on ``[edges[0], edges[-1]]`` with exact coefficients.

    ``coeffs[i]`` holds the coefficients (constant term first, in the global
    variable) on ``[edges[i], edges[i+1])``.  Products of PL functions live
    here so the product rule can be checked against an independent
    derivative.
    """

    __slots__ = ("edges", "coeffs")

    def __init__(self, edges: Sequence, coeffs: Sequence):
        self.edges = tuple(scalar(e) for e in edges)
        self.coeffs = tuple(tuple(scalar(c) for c in cs) for cs in coeffs)
        if len(self.coeffs) != len(self.edges) - 1:
            raise InvariantError("piecewise polynomial needs n+1 edges for n pieces")

    @classmethod
    def from_pl(cls, f: PLFunction, domain) -> "PiecewisePoly":
        a, b = scalar(domain[0]), scalar(domain[1])
        edges = [a] + [x for x in f.breakpoints if a < x < b] + [b]
        coeffs = []
        for x0, x1 in zip(edges, edges[1:]):
            m = (f._eval(x1) - f._eval(x0)) / (x1 - x0)
            coeffs.append((f._eval(x0) - m * x0, m))
        return cls(edges, coeffs)

    @classmethod
    def from_step(cls, s: StepFunction) -> "PiecewisePoly":
        return cls(s.edges, [(v,) for v in s.values])

    @property
    def domain(self) -> tuple:
        return (self.edges[0], self.edges[-1])

    def _refine(self, edges) -> list:
        out = []
        for x0, x1 in zip(edges, edges[1:]):
            mid = (x0 + x1) / 2
            i = min(bisect_right(self.edges, mid) - 1, len(self.coeffs) - 1)
            out.append(self.coeffs[i])
        return out

    def _common(self, other) -> tuple:
        if self.domain != other.domain:
            raise DomainError("piecewise polynomials live on different intervals")
        return tuple(sorted(set(self.edges) | set(other.edges)))

    def __mul__(self, other):
        if not isinstance(other, PiecewisePoly):
            c = scalar(other)
            return PiecewisePoly(self.edges, [tuple(k * c for k in cs) for cs in self.coeffs])
        edges = self._common(other)
        return PiecewisePoly(edges, [_poly_mul(a, b) for a, b in
                                     zip(self._refine(edges), other._refine(edges))])

    __rmul__ = __mul__

    def __add__(self, other):
        edges = self._common(other)
        return PiecewisePoly(edges, [_poly_add(a, b) for a, b in
                                     zip(self._refine(edges), other._refine(edges))])

    def derivative(self) -> "PiecewisePoly":
        return PiecewisePoly(self.edges, [_poly_deriv(c) for c in self.coeffs])

    def __call__(self, x) -> Scalar:
        x = scalar(x)
        if not self.edges[0] <= x <= self.edges[-1]:
            raise DomainError(f"{x} outside [{self.edges[0]}, {self.edges[-1]}]")
        i = min(bisect_right(self.edges, x) - 1, len(self.coeffs) - 1)
        return _poly_eval(self.coeffs[i], x)

    def kinks(self) -> tuple:
        """Interior edges (where a derivative may fail to exist)."""
        return self.edges[1:-1]

    def to_step(self) -> StepFunction:
        if any(len([c for c in cs[1:] if c != 0]) for cs in self.coeffs):
            raise PreconditionError("not piecewise constant")
        return StepFunction(self.edges, [cs[0] for cs in self.coeffs])


@dataclass(frozen=True)
class Measure1D:
    """Atoms (singular part) plus a nonnegative step density (absolutely continuous part)."""

    atoms: tuple
    density: StepFunction

    def __post_init__(self):
        atoms = tuple(sorted((scalar(x), scalar(m)) for x, m in self.atoms))
        locs = [x for x, _ in atoms]
        if len(set(locs)) != len(locs):
            raise InvariantError("atom locations must be distinct")
        if any(m <= 0 for _, m in atoms):
            raise InvariantError("atom masses must be positive")
        if any(v < 0 for v in self.density.values):
            raise InvariantError("density must be nonnegative")
        lo, hi = self.density.domain
        if any(not lo <= x <= hi for x in locs):
            raise InvariantError("atoms must lie in the working interval")
        object.__setattr__(self, "atoms", atoms)

    @property
    def domain(self) -> tuple:
        return self.density.domain

    @classmethod
    def zero(cls, domain=(0, 1)) -> "Measure1D":
        return cls((), StepFunction.constant(0, domain))

    def mass(self, lo=None, hi=None) -> Scalar:
        """Exact mass of the closed interval ``[lo, hi]``."""
        a, b = self.domain
        lo = a if lo is None else scalar(lo)
        hi = b if hi is None else scalar(hi)
        atoms = sum((m for x, m in self.atoms if lo <= x <= hi), ZERO)
        return atoms + self.density.integral(lo, hi)

    def support_indicator(self) -> StepFunction:
        return StepFunction(self.density.edges,
                            [ONE if v > 0 else ZERO for v in self.density.values])


def decompose(m: Measure1D) -> tuple:
    """``(absolutely continuous part, singular part)``."""
    ac = Measure1D((), m.density)
    sing = Measure1D(m.atoms, StepFunction.constant(0, m.domain))
    return ac, sing


def cantor_atoms(level: int, domain=(0, 1)) -> Measure1D:
    """Uniform atoms at the centres of the ``2**level`` middle-thirds intervals.

    Approximates the Cantor measure, which is singular and has no atoms.
    """
    ivs = [(ZERO, ONE)]
    for _ in range(level):
        nxt = []
        for a, b in ivs:
            third = (b - a) / 3
            nxt.extend([(a, a + third), (b - third, b)])
        ivs = nxt
    mass = mpq(1, 2 ** level)
    return Measure1D(tuple(((a + b) / 2, mass) for a, b in ivs),
                     StepFunction.constant(0, domain))


@dataclass
class DerivationResult:
    """``w * f'`` on the density support; zero at atoms; undefined at kinks of ``f``."""

    ac: PiecewisePoly
    atoms: tuple
    excluded: tuple = field(default=())

    def at(self, x) -> Scalar:
        x = scalar(x)
        if any(x == a for a in self.atoms):
            return ZERO
        if x in self.excluded:
            raise DomainError(f"{x} is a breakpoint of f; the derivative is undefined there")
        return self.ac(x)

    def as_step(self) -> StepFunction:
        return self.ac.to_step()

    def is_zero(self) -> bool:
        return all(all(c == 0 for c in cs) for cs in self.ac.coeffs)


def apply_derivation_1d(m: Measure1D, weight: StepFunction, f) -> DerivationResult:
    """Apply the derivation ``g -> weight * g'`` (restricted to the density's support) to ``f``.

    ``f`` may be a :class:`PLFunction` or a :class:`PiecewisePoly`; atoms of
    ``m`` receive the value 0.
    """
    dom = m.domain
    if weight.domain != dom:
        raise DomainError("weight and measure live on different intervals")
    if isinstance(f, PLFunction):
        f = PiecewisePoly.from_pl(f, dom)
    if f.domain != dom:
        raise DomainError("function and measure live on different intervals")
    mask = PiecewisePoly.from_step(m.support_indicator())
    w = PiecewisePoly.from_step(weight)
    ac = w * mask * f.derivative()
    return DerivationResult(ac, tuple(x for x, _ in m.atoms), f.kinks())
