"""JSON encodings of every exchanged type.

Rationals are written as ``["num", "den"]`` pairs of decimal strings.  On
input a rational may also be an integer or a string such as ``"3/8"``.
Decoding problems raise :class:`SchemaError` naming the offending field.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InvariantError, SchemaError
from .extension import SampleSet
from .null1d import Measure1D, OpenCover1D, StepFunction
from .pl import PLFunction, scalar
from .projections import SquareSet
from .stripes import Arrangement


def enc(x) -> list:
    x = scalar(x)
    return [str(x.numerator), str(x.denominator)]


def dec(obj, field: str):
    try:
        if isinstance(obj, bool) or obj is None:
            raise TypeError
        if isinstance(obj, list):
            if len(obj) != 2:
                raise TypeError
            num, den = int(obj[0]), int(obj[1])
            if den <= 0:
                raise SchemaError(field, "denominator must be a positive integer")
            return scalar((num, den))
        if isinstance(obj, float):
            raise SchemaError(field, "floats are not accepted; use [\"num\", \"den\"]")
        return scalar(obj)
    except SchemaError:
        raise
    except (TypeError, ValueError, ZeroDivisionError):
        raise SchemaError(field, f"expected a rational [\"num\", \"den\"], got {obj!r}") from None


def _get(doc, key, field):
    if not isinstance(doc, dict):
        raise SchemaError(field or "$", "expected a JSON object")
    if key not in doc:
        raise SchemaError(f"{field}.{key}" if field else key, "missing")
    return doc[key]


def _list(obj, field):
    if not isinstance(obj, list):
        raise SchemaError(field, "expected a list")
    return obj


def _sub(field, key):
    return f"{field}.{key}" if field else key


# PL functions

def pl_to_json(f: PLFunction) -> dict:
    return {
        "breakpoints": [enc(x) for x in f.breakpoints],
        "values": [enc(v) for v in f.values],
        "left_slope": enc(f.left_slope),
        "right_slope": enc(f.right_slope),
        "domain": None if f.domain is None else [enc(f.domain[0]), enc(f.domain[1])],
    }


def pl_from_json(doc, field: str = "") -> PLFunction:
    bf, vf = _sub(field, "breakpoints"), _sub(field, "values")
    bps = [dec(x, f"{bf}[{i}]") for i, x in enumerate(_list(_get(doc, "breakpoints", field), bf))]
    vals = [dec(x, f"{vf}[{i}]") for i, x in enumerate(_list(_get(doc, "values", field), vf))]
    if not bps:
        raise SchemaError(bf, "at least one breakpoint is required")
    if len(bps) != len(vals):
        raise SchemaError(vf, f"{len(vals)} values for {len(bps)} breakpoints")
    for i in range(1, len(bps)):
        if not bps[i - 1] < bps[i]:
            raise SchemaError(f"{bf}[{i}]", "breakpoints are not strictly increasing")
    left = dec(doc.get("left_slope", 0), _sub(field, "left_slope"))
    right = dec(doc.get("right_slope", 0), _sub(field, "right_slope"))
    dom = doc.get("domain")
    if dom is not None:
        df = _sub(field, "domain")
        dom = _list(dom, df)
        if len(dom) != 2:
            raise SchemaError(df, "expected [lo, hi]")
        dom = (dec(dom[0], df + "[0]"), dec(dom[1], df + "[1]"))
        if dom[0] > dom[1]:
            raise SchemaError(df, "empty domain")
    return PLFunction(bps, vals, left, right, dom)


# arrangements

def arrangement_to_json(a: Arrangement) -> dict:
    doc = {"axis": a.axis}
    if isinstance(a.thickness, tuple) and not (a.curves and a.uniform):
        doc["deltas"] = [enc(d) for d in a.thicknesses]
    else:
        doc["delta"] = enc(a.delta)
    doc["curves"] = [pl_to_json(f) for f in a.curves]
    return doc


def arrangement_from_json(doc) -> Arrangement:
    axis = _get(doc, "axis", "")
    if axis not in (1, 2):
        raise SchemaError("axis", f"must be 1 or 2, got {axis!r}")
    curves = [pl_from_json(c, f"curves[{i}]")
              for i, c in enumerate(_list(_get(doc, "curves", ""), "curves"))]
    for i, f in enumerate(curves):
        if f.domain is not None:
            raise SchemaError(f"curves[{i}].domain", "curves must be defined on the whole line")
        if f.lipschitz_constant() > 1:
            raise SchemaError(f"curves[{i}]",
                              f"Lipschitz constant {f.lipschitz_constant()} exceeds 1")
    if "deltas" in doc:
        th = [dec(d, f"deltas[{i}]") for i, d in enumerate(_list(doc["deltas"], "deltas"))]
        if len(th) != len(curves):
            raise SchemaError("deltas", f"{len(th)} thicknesses for {len(curves)} curves")
    else:
        th = dec(_get(doc, "delta", ""), "delta")
    try:
        return Arrangement(axis, tuple(curves), tuple(th) if isinstance(th, list) else th)
    except InvariantError as e:
        raise SchemaError("delta" if "thickness" in str(e) else "curves", str(e)) from None


def points_to_json(points) -> dict:
    return {"points": [[enc(c) for c in p] for p in points]}


def points_from_json(doc) -> list:
    pts = _list(_get(doc, "points", ""), "points")
    out = []
    for i, p in enumerate(pts):
        p = _list(p, f"points[{i}]")
        if len(p) != 2:
            raise SchemaError(f"points[{i}]", "expected [x, y]")
        out.append((dec(p[0], f"points[{i}][0]"), dec(p[1], f"points[{i}][1]")))
    return out


# samples

def samples_to_json(s: SampleSet) -> dict:
    return {"dim": s.dim, "points": [[enc(c) for c in p] for p in s.points],
            "values": [enc(v) for v in s.values]}


def samples_from_json(doc) -> SampleSet:
    dim = _get(doc, "dim", "")
    if dim not in (1, 2, 3):
        raise SchemaError("dim", f"must be 1, 2 or 3, got {dim!r}")
    pts = []
    for i, p in enumerate(_list(_get(doc, "points", ""), "points")):
        p = _list(p, f"points[{i}]")
        if len(p) != dim:
            raise SchemaError(f"points[{i}]", f"expected {dim} coordinates")
        pts.append(tuple(dec(c, f"points[{i}][{k}]") for k, c in enumerate(p)))
    vals = [dec(v, f"values[{i}]") for i, v in enumerate(_list(_get(doc, "values", ""), "values"))]
    if not pts:
        raise SchemaError("points", "sample set is empty")
    if len(vals) != len(pts):
        raise SchemaError("values", f"{len(vals)} values for {len(pts)} points")
    if len(set(pts)) != len(pts):
        raise SchemaError("points", "sample points must be pairwise distinct")
    return SampleSet(tuple(pts), tuple(vals))


# 1-D covers and measures

def cover_to_json(c: OpenCover1D) -> dict:
    return {"domain": [enc(c.domain[0]), enc(c.domain[1])],
            "intervals": [[enc(lo), enc(hi)] for lo, hi in c.intervals]}


def cover_from_json(doc) -> OpenCover1D:
    dom = _list(_get(doc, "domain", ""), "domain")
    if len(dom) != 2:
        raise SchemaError("domain", "expected [a, b]")
    dom = (dec(dom[0], "domain[0]"), dec(dom[1], "domain[1]"))
    ivs = []
    for i, iv in enumerate(_list(_get(doc, "intervals", ""), "intervals")):
        iv = _list(iv, f"intervals[{i}]")
        if len(iv) != 2:
            raise SchemaError(f"intervals[{i}]", "expected [lo, hi]")
        ivs.append((dec(iv[0], f"intervals[{i}][0]"), dec(iv[1], f"intervals[{i}][1]")))
    try:
        return OpenCover1D(dom, tuple(ivs))
    except InvariantError as e:
        raise SchemaError("domain" if "working" in str(e) else "intervals", str(e)) from None


def step_to_json(s: StepFunction) -> dict:
    return {"edges": [enc(e) for e in s.edges], "values": [enc(v) for v in s.values]}


def step_from_json(doc, field: str = "") -> StepFunction:
    ef, vf = _sub(field, "edges"), _sub(field, "values")
    edges = [dec(e, f"{ef}[{i}]") for i, e in enumerate(_list(_get(doc, "edges", field), ef))]
    vals = [dec(v, f"{vf}[{i}]") for i, v in enumerate(_list(_get(doc, "values", field), vf))]
    if len(edges) < 2 or len(vals) != len(edges) - 1:
        raise SchemaError(vf, "a step function needs n+1 edges for n values")
    for i in range(1, len(edges)):
        if not edges[i - 1] < edges[i]:
            raise SchemaError(f"{ef}[{i}]", "edges are not strictly increasing")
    return StepFunction(edges, vals)


def measure_to_json(m: Measure1D) -> dict:
    return {"atoms": [[enc(x), enc(w)] for x, w in m.atoms], "density": step_to_json(m.density)}


def measure_from_json(doc) -> Measure1D:
    density = step_from_json(_get(doc, "density", ""), "density")
    atoms = []
    for i, a in enumerate(_list(doc.get("atoms", []), "atoms")):
        a = _list(a, f"atoms[{i}]")
        if len(a) != 2:
            raise SchemaError(f"atoms[{i}]", "expected [location, mass]")
        atoms.append((dec(a[0], f"atoms[{i}][0]"), dec(a[1], f"atoms[{i}][1]")))
    try:
        return Measure1D(tuple(atoms), density)
    except InvariantError as e:
        raise SchemaError("density" if "density" in str(e) else "atoms", str(e)) from None


# square sets

def squares_to_json(s: SquareSet) -> dict:
    return {"depth": s.depth, "squares": [[enc(x), enc(y), enc(d)] for x, y, d in s.squares()]}


def squares_from_json(doc) -> SquareSet:
    sq = []
    for i, t in enumerate(_list(_get(doc, "squares", ""), "squares")):
        t = _list(t, f"squares[{i}]")
        if len(t) != 3:
            raise SchemaError(f"squares[{i}]", "expected [x, y, side]")
        x, y, s = (dec(c, f"squares[{i}][{k}]") for k, c in enumerate(t))
        if s <= 0:
            raise SchemaError(f"squares[{i}][2]", "side must be positive")
        sq.append((x, y, s))
    return SquareSet.from_squares(sq, doc.get("depth"))


def load(path) -> object:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _compact(x) -> bool:
    if isinstance(x, list):
        return all(not isinstance(v, (list, dict)) or (isinstance(v, list) and _compact(v) and
                                                       all(not isinstance(w, list) for w in v))
                   for v in x)
    return not isinstance(x, dict)


def _render(x, indent: int) -> str:
    if _compact(x):
        return json.dumps(x, separators=(", ", ": "))
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(x, dict):
        items = [f"{inner}{json.dumps(k)}: {_render(v, indent + 2)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}" if items else "{}"
    items = [inner + _render(v, indent + 2) for v in x]
    return "[\n" + ",\n".join(items) + "\n" + pad + "]"


def dumps(doc) -> str:
    """Deterministic JSON text; short lists (rationals, points) stay on one line."""
    return _render(doc, 0) + "\n"
