"""Projection lengths of planar square sets along rational directions.

Squares share a common denominator and are stored as integer numerators, so
projecting onto the functional ``(x, y) -> p*x + q*y`` and measuring the
union of the image intervals is exact integer arithmetic (vectorised with
numpy when it fits in 64 bits).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

from .errors import BudgetError, InvariantError
from .pl import Scalar, scalar

MAX_DEPTH = 10

DEFAULT_DIRECTIONS = ((1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, 3))


@dataclass(frozen=True)
class Direction:
    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p == 0 and q == 0:
            raise InvariantError("direction must be nonzero")
        if math.gcd(abs(p), abs(q)) != 1:
            raise InvariantError(f"direction ({p}, {q}) is not primitive")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> "Direction":
        p, q = (int(t) for t in text.replace(" ", "").split(","))
        return cls(p, q)

    @property
    def norm(self) -> float:
        return math.hypot(self.p, self.q)

    def __str__(self):
        return f"{self.p},{self.q}"


class SquareSet:
    """Axis-aligned squares ``[x, x+s] x [y, y+s]`` with ``x = xs[i]/denom`` etc."""

    __slots__ = ("xs", "ys", "sides", "denom", "depth")

    def __init__(self, xs, ys, sides, denom: int, depth=None):
        self.xs = np.asarray(xs, dtype=object if _big(xs, ys, sides) else np.int64)
        self.ys = np.asarray(ys, dtype=self.xs.dtype)
        self.sides = np.asarray(sides, dtype=self.xs.dtype)
        self.denom = int(denom)
        self.depth = depth
        if not (len(self.xs) == len(self.ys) == len(self.sides)):
            raise InvariantError("square coordinate arrays differ in length")
        if self.denom <= 0 or (len(self.sides) and (self.sides <= 0).any()):
            raise InvariantError("square sides must be positive")

    @classmethod
    def from_squares(cls, squares: Iterable, depth=None) -> "SquareSet":
        sq = [(scalar(x), scalar(y), scalar(s)) for x, y, s in squares]
        den = 1
        for t in sq:
            for c in t:
                den = math.lcm(den, int(c.denominator))
        conv = lambda c: int(c * den)  # noqa: E731
        return cls([conv(x) for x, _, _ in sq], [conv(y) for _, y, _ in sq],
                   [conv(s) for _, _, s in sq], den, depth)

    def __len__(self):
        return len(self.xs)

    def squares(self) -> list:
        d = self.denom
        return [(mpq(int(x), d), mpq(int(y), d), mpq(int(s), d))
                for x, y, s in zip(self.xs, self.ys, self.sides)]


def _big(*arrays) -> bool:
    lim = 1 << 40
    return any(abs(int(v)) >= lim for a in arrays for v in a)


def four_corner(depth: int) -> SquareSet:
    """``4**depth`` squares of side ``4**-depth``: iterate keeping the four corner quarters."""
    if depth < 0:
        raise InvariantError("depth must be nonnegative")
    if depth > MAX_DEPTH:
        raise BudgetError(f"depth {depth} exceeds the cap {MAX_DEPTH} (4**depth squares)")
    # corner offsets in units of 4**-depth: each level contributes 0 or 3 * 4**(depth-k)
    coords = np.zeros(1, dtype=np.int64)
    for k in range(1, depth + 1):
        step = 3 * 4 ** (depth - k)
        coords = np.concatenate([coords, coords + step])
    xs = np.repeat(coords, len(coords))
    ys = np.tile(coords, len(coords))
    return SquareSet(xs, ys, np.ones(len(xs), dtype=np.int64), 4 ** depth, depth)


def union_length_int(lo: np.ndarray, hi: np.ndarray) -> int:
    """Length of a union of closed integer intervals, by one sort and a running max."""
    if len(lo) == 0:
        return 0
    order = np.argsort(lo, kind="stable")
    lo, hi = lo[order], hi[order]
    reach = np.maximum.accumulate(hi)
    prev = np.concatenate([[lo[0]], reach[:-1]])
    start = np.maximum(lo, prev)
    return int(np.clip(hi - start, 0, None).sum())


@dataclass
class ProjectionLength:
    exact_unnormalized: Scalar
    normalized: float


def projected_intervals(s: SquareSet, d: Direction) -> tuple:
    """Integer numerators (over ``s.denom``) of the image intervals."""
    p, q = d.p, d.q
    base = p * s.xs + q * s.ys
    lo = base + (min(p, 0) + min(q, 0)) * s.sides
    hi = base + (max(p, 0) + max(q, 0)) * s.sides
    return lo, hi


def project_length(s: SquareSet, d: Direction) -> ProjectionLength:
    lo, hi = projected_intervals(s, d)
    exact = mpq(union_length_int(lo, hi), s.denom)
    return ProjectionLength(exact, float(exact) / d.norm)


@dataclass(frozen=True)
class Segment:
    start: tuple
    end: tuple

    def project_length(self, d: Direction) -> ProjectionLength:
        a = d.p * scalar(self.start[0]) + d.q * scalar(self.start[1])
        b = d.p * scalar(self.end[0]) + d.q * scalar(self.end[1])
        exact = abs(b - a)
        return ProjectionLength(exact, float(exact) / d.norm)


CONTROL_SEGMENT = Segment((0, 0), (1, 1))


@dataclass
class ReportRow:
    set_name: str
    depth: object
    direction: Direction
    length: ProjectionLength


def projection_report(depths: Sequence[int], directions: Sequence) -> list:
    """Projection lengths of the four-corner iterates plus control-segment rows.

    Rows are ordered by set, direction and depth.
    """
    dirs = [d if isinstance(d, Direction) else Direction(*d) for d in directions]
    rows = []
    sets = {n: four_corner(n) for n in sorted(set(depths))}
    for d in dirs:
        for n, s in sets.items():
            rows.append(ReportRow("four-corner", n, d, project_length(s, d)))
    for d in dirs:
        rows.append(ReportRow("control", "segment", d, CONTROL_SEGMENT.project_length(d)))
    return rows


def monotone_columns(rows: Sequence[ReportRow]) -> dict:
    """Per direction, whether four-corner lengths are nonincreasing in depth."""
    cols: dict = {}
    for r in rows:
        if r.set_name == "four-corner":
            cols.setdefault(str(r.direction), []).append((r.depth, r.length.exact_unnormalized))
    out = {}
    for k, vals in cols.items():
        vals.sort()
        out[k] = all(b[1] <= a[1] for a, b in zip(vals, vals[1:]))
    return out


def report_csv(rows: Sequence[ReportRow], header_comment: str = "") -> str:
    buf = io.StringIO()
    if header_comment:
        buf.write(f"# {header_comment}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["set", "depth", "direction", "exact_length", "normalized_length"])
    for r in rows:
        w.writerow([r.set_name, r.depth, str(r.direction), str(r.length.exact_unnormalized),
                    repr(r.length.normalized)])
    return buf.getvalue()
