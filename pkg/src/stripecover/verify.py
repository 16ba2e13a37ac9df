"""Seeded verification campaigns, one per acceptance criterion.

Every campaign is deterministic in its seed, returns a :class:`CriterionResult`,
and on failure carries a JSON-ready witness (instance plus offending point)
together with the command that re-checks it.
"""

from __future__ import annotations

import csv
import io
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from gmpy2 import mpq

from . import oracles, schema
from .coord_approx import (CoordApproximator, interval_inequality, sample_points,
                           verify_approximation, verify_stripe_univariate,
                           verify_three_lipschitz)
from .extension import (SampleSet, bounded_mcshane_extend, mcshane_extend,
                        sample_lipschitz)
from .generate import (approximation_sequence, figure2_arrangement, random_curves,
                       random_disjoint_arrangement, random_lipschitz_pl, random_ordered)
from .null1d import (Measure1D, PiecewisePoly, StepFunction, apply_derivation_1d,
                     build_phi_1d, cantor_atoms, dyadic_cover, identity_deficit)
from .pl import PLFunction, scalar
from .projections import (CONTROL_SEGMENT, DEFAULT_DIRECTIONS, Direction, four_corner,
                          monotone_columns, project_length, projection_report)
from .stripes import Arrangement, disjointify, uncross


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    witness: Optional[dict] = None
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


@dataclass
class Budgets:
    """Sample sizes; the defaults are the acceptance budgets."""

    uncross_instances: int = 200
    uncross_samples: int = 100
    disjoint_instances: int = 100
    inclusion_points: int = 10_000
    phi_arrangements: int = 50
    phi_pairs: int = 100_000
    phi_points: int = 10_000
    univariate_points: int = 100
    quadruples: int = 1_000_000
    mcshane_queries: int = 10_000
    derivation_points: int = 100

    @classmethod
    def quick(cls) -> "Budgets":
        return cls(20, 20, 10, 500, 5, 2000, 300, 20, 20_000, 500, 30)


def _rat(rng, lo, hi, bits=12):
    return scalar(lo) + (scalar(hi) - scalar(lo)) * mpq(rng.randrange(0, (1 << bits) + 1), 1 << bits)


def _arr_doc(axis, fs, delta=1):
    return schema.arrangement_to_json(Arrangement(axis, tuple(fs), delta))


# 1, 2: uncrossing


def _uncross_instances(seed, budgets):
    rng = random.Random(seed)
    for _ in range(budgets.uncross_instances):
        yield rng, random_curves(rng, rng.randint(1, 8), 12)


def criterion_uncross_sort(seed: int, b: Budgets) -> CriterionResult:
    checked = 0
    for rng, curves in _uncross_instances(seed, b):
        out = uncross(curves)
        outs = [c.f for c in out]
        for _ in range(b.uncross_samples):
            t = _rat(rng, -1, 2)
            got = [oracles._F(f._eval(t)) for f in outs]
            if got != oracles.sorted_values([c.f for c in curves], t):
                return CriterionResult(1, "uncross = pointwise sort", False,
                                       f"mismatch at t={t}", {
                                           **_arr_doc(1, [c.f for c in curves]),
                                           "t": schema.enc(t),
                                           "command": "stripecover uncross --input {witness}"})
            checked += 1
        if not Arrangement(1, tuple(outs)).is_ordered():
            return CriterionResult(1, "uncross = pointwise sort", False, "output not ordered",
                                   {**_arr_doc(1, [c.f for c in curves]),
                                    "command": "stripecover uncross --input {witness}"})
    return CriterionResult(1, "uncross = pointwise sort", True,
                           f"{b.uncross_instances} instances, {checked} abscissae, ordering exact")


def criterion_uncross_lipschitz(seed: int, b: Budgets) -> CriterionResult:
    worst = scalar(0)
    for rng, curves in _uncross_instances(seed, b):
        for c in uncross(curves):
            L = c.f.lipschitz_constant()
            worst = max(worst, L)
            if L > 1:
                return CriterionResult(2, "uncross keeps 1-Lipschitz", False, f"slope {L}",
                                       {**_arr_doc(1, [g.f for g in curves]),
                                        "command": "stripecover uncross --input {witness}"})
        for _ in range(b.uncross_samples):
            rng.random()  # keep the stream aligned with criterion 1
    return CriterionResult(2, "uncross keeps 1-Lipschitz", True, f"max |slope| = {worst}")


# 3, 4: disjointification


def _disjoint_instances(seed, b):
    rng = random.Random(seed + 1)
    for _ in range(b.disjoint_instances):
        curves = random_ordered(rng, rng.randint(1, 8), 12)
        delta = mpq(1, 2 ** rng.randint(2, 6))
        yield rng, curves, delta, disjointify(curves, delta)


def criterion_disjoint_separation(seed: int, b: Budgets) -> CriterionResult:
    for _, curves, delta, out in _disjoint_instances(seed, b):
        a = Arrangement(1, tuple(c.f for c in out), delta)
        ok = (a.has_disjoint_interiors() and a.is_ordered()
              and all(c.f.lipschitz_constant() <= 1 for c in out) and len(out) == len(curves))
        if not ok:
            return CriterionResult(3, "disjointify separation", False, "separation failed", {
                **_arr_doc(1, [c.f for c in curves], delta),
                "command": "stripecover disjointify --input {witness}"})
    return CriterionResult(3, "disjointify separation", True,
                           f"{b.disjoint_instances} instances, h_(j+1) - h_j >= delta exact")


def criterion_disjoint_inclusion(seed: int, b: Budgets) -> CriterionResult:
    per = max(1, b.inclusion_points // b.disjoint_instances)
    n = 0
    for rng, curves, delta, out in _disjoint_instances(seed, b):
        target = Arrangement(1, tuple(c.f for c in out), delta)
        for _ in range(per):
            f = rng.choice(curves).f
            t = _rat(rng, -1, 2)
            y = f._eval(t) + delta * (_rat(rng, 0, 1, 6) - mpq(1, 2))
            n += 1
            if not target.contains((t, y)):
                return CriterionResult(4, "disjointify inclusion", False, f"({t}, {y}) uncovered", {
                    **_arr_doc(1, [c.f for c in curves], delta),
                    "point": [schema.enc(t), schema.enc(y)],
                    "command": "stripecover disjointify --input {witness}"})
    return CriterionResult(4, "disjointify inclusion", True, f"{n} input-stripe points covered")


# 5-7: coordinate approximators


def _approximators(seed, b):
    rng = random.Random(seed + 2)
    out = [CoordApproximator(figure2_arrangement())]
    while len(out) < b.phi_arrangements:
        delta = mpq(1, 2 ** rng.randint(3, 6))
        out.append(CoordApproximator(random_disjoint_arrangement(rng, rng.randint(1, 8), delta)))
    return out


def _phi_witness(A, p, q=None):
    doc = {**schema.arrangement_to_json(A.arrangement),
           "p": [schema.enc(c) for c in p]}
    x, y = p
    doc["command"] = (f"stripecover phi --arrangement {{witness}} --baseline={A.baseline} "
                      f"--eval \"{x},{y}\"")
    if q is not None:
        doc["q"] = [schema.enc(c) for c in q]
    return doc


def criterion_phi_lipschitz(seed: int, b: Budgets) -> CriterionResult:
    approxs = _approximators(seed, b)
    per = max(1, b.phi_pairs // len(approxs))
    worst, total = scalar(0), 0
    for k, A in enumerate(approxs):
        rep = verify_three_lipschitz(A, per, seed=seed * 1000 + k)
        total += rep.pairs
        worst = max(worst, rep.max_ratio_sq)
        if not rep.ok:
            p, q = rep.violations[0]
            return CriterionResult(5, "phi 3-Lipschitz", False, "bound violated", _phi_witness(A, p, q))
    return CriterionResult(5, "phi 3-Lipschitz", True,
                           f"{len(approxs)} arrangements, {total} pairs, "
                           f"max |dphi|/|p-q| = {math.sqrt(worst):.6f} <= 3")


def criterion_phi_approximation(seed: int, b: Budgets) -> CriterionResult:
    for k, A in enumerate(_approximators(seed, b)):
        rep = verify_approximation(A, sample_points(A, b.phi_points, seed * 1000 + k))
        if not rep.ok:
            p, d = rep.violations[0]
            return CriterionResult(6, "phi approximation", False, f"deficit {d}", _phi_witness(A, p))
    sups = []
    for j, arr in enumerate(approximation_sequence(10), start=1):
        A = CoordApproximator(arr)
        pts = sample_points(A, b.phi_points, seed + j)
        pts.append((mpq(1, 2), mpq(2)))  # above every stripe: deficit exactly N * delta
        rep = verify_approximation(A, pts)
        bound = mpq(1, 2 ** j)
        sups.append(rep.max_deficit)
        if not rep.ok or rep.max_deficit > bound:
            return CriterionResult(6, "phi approximation", False,
                                   f"j={j}: sup deficit {rep.max_deficit} > {bound}",
                                   _phi_witness(A, (mpq(1, 2), mpq(2))))
    return CriterionResult(6, "phi approximation", True,
                           f"0 <= deficit <= N*delta everywhere; sequence sup deficits "
                           f"{', '.join(str(s) for s in sups)}")


def criterion_phi_univariate(seed: int, b: Budgets) -> CriterionResult:
    n = 0
    for k, A in enumerate(_approximators(seed, b)):
        rep = verify_stripe_univariate(A, b.univariate_points, seed * 1000 + k)
        n += len(A.arrangement)
        if not rep.ok:
            v = rep.violations[0]
            return CriterionResult(7, "phi stripe-univariate", False, f"{v[0]} on stripe {v[1]}",
                                   {**schema.arrangement_to_json(A.arrangement),
                                    "violation": [str(x) for x in v],
                                    "command": "stripecover phi --arrangement {witness} "
                                               "--verify univariate"})
    return CriterionResult(7, "phi stripe-univariate", True,
                           f"{n} stripes, {b.univariate_points} points each; phi - f_l constant")


# 8: interval inequality


def criterion_interval_inequality(seed: int, b: Budgets) -> CriterionResult:
    rng = random.Random(seed + 3)
    rr = rng.randrange
    for _ in range(b.quadruples):
        den = rr(1, 1025)
        vals = [mpq(rr(-4096, 4097), den) for _ in range(4)]
        if rr(8) == 0:
            vals[rr(4)] = vals[rr(4)]  # ties exercise the equality cases
        a, c = sorted(vals[:2]), sorted(vals[2:])
        # p2 <= p2', q2' <= q2
        if not interval_inequality(a[0], a[1], c[1], c[0]):
            return CriterionResult(8, "interval inequality", False, "violated",
                                   {"quadruple": [schema.enc(x) for x in (a[0], a[1], c[1], c[0])]})
    return CriterionResult(8, "interval inequality", True, f"{b.quadruples} quadruples, exact")


# 9: 1-D approximate identity


def criterion_phi_1d(seed: int, b: Budgets) -> CriterionResult:
    rng = random.Random(seed + 4)
    for j in range(1, 13):
        cover = dyadic_cover(j, pieces=rng.randint(1, 6), seed=seed + j)
        phi = build_phi_1d(cover)
        rep = identity_deficit(phi, cover)
        bound = mpq(1, 2 ** j)
        ok = 0 <= rep.max_deficit <= bound
        ok = ok and all(s in (0, 1) for s in phi.slopes())
        for lo, hi in cover.intervals:
            mid = (lo + hi) / 2
            ok = ok and phi(lo) == phi(mid) == phi(hi)
        for _ in range(50):
            x = _rat(rng, 0, 1)
            ok = ok and oracles._F(phi(x)) == oracles.phi1d_value(cover.intervals, 0, x)
        if not ok:
            return CriterionResult(9, "1-D approximate identity", False, f"j={j}",
                                   {**schema.cover_to_json(cover),
                                    "command": "stripecover null1d deficit --cover {witness}"})
    return CriterionResult(9, "1-D approximate identity", True,
                           "j=1..12: deficit in [0, 2^-j], phi flat on every component")


# 10: McShane


def criterion_mcshane(seed: int, b: Budgets) -> CriterionResult:
    rng = random.Random(seed + 5)
    # line: exact
    f = random_lipschitz_pl(rng, 8, lip=2, window=(-1, 1))
    xs = sorted({_rat(rng, -1, 1) for _ in range(25)})
    s1 = SampleSet(tuple(xs), tuple(f._eval(x) for x in xs))
    L1 = sample_lipschitz(s1)
    if any(mcshane_extend(s1, L1, x) != v for (x,), v in zip(s1.points, s1.values)):
        return CriterionResult(10, "McShane extension", False, "1-D restriction differs",
                               {**schema.samples_to_json(s1)})
    for _ in range(b.mcshane_queries):
        x, y = _rat(rng, -2, 2), _rat(rng, -2, 2)
        if abs(mcshane_extend(s1, L1, x) - mcshane_extend(s1, L1, y)) > L1 * abs(x - y):
            return CriterionResult(10, "McShane extension", False, f"1-D Lipschitz at {x},{y}",
                                   {**schema.samples_to_json(s1)})
    # plane: float with tolerance
    pts = list({(_rat(rng, 0, 1), _rat(rng, 0, 1)) for _ in range(30)})
    s2 = SampleSet(tuple(pts), tuple(_rat(rng, -1, 1) for _ in pts))
    L2 = sample_lipschitz(s2)
    for p, v in zip(s2.points, s2.values):
        if abs(mcshane_extend(s2, L2, p) - float(v)) > 1e-12:
            return CriterionResult(10, "McShane extension", False, "2-D restriction differs",
                                   {**schema.samples_to_json(s2)})
    worst_excess = 0.0
    for _ in range(b.mcshane_queries):
        p = (rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5))
        q = (rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5))
        ex = abs(mcshane_extend(s2, L2, p) - mcshane_extend(s2, L2, q)) - L2 * math.dist(p, q)
        worst_excess = max(worst_excess, ex)
    if worst_excess > 1e-12:
        return CriterionResult(10, "McShane extension", False, f"2-D excess {worst_excess}",
                               {**schema.samples_to_json(s2)})
    # bounded variant
    M = float(s2.sup_norm)
    top = 0.0
    for _ in range(b.mcshane_queries):
        p = (rng.uniform(-3, 4), rng.uniform(-3, 4))
        top = max(top, abs(bounded_mcshane_extend(s2, p)))
    k = max(range(len(s2.values)), key=lambda i: abs(s2.values[i]))
    at_extreme = abs(bounded_mcshane_extend(s2, s2.points[k]))
    if top > M + 1e-12 or abs(at_extreme - M) > 1e-12:
        return CriterionResult(10, "McShane extension", False, f"bounded sup {top} vs {M}",
                               {**schema.samples_to_json(s2)})
    return CriterionResult(10, "McShane extension", True,
                           f"exact on R^1, 2-D excess {worst_excess:.2e}, bounded sup = M = {M:.6f}")


# 11: derivation model


def _random_measure(rng):
    edges = sorted({scalar(0), scalar(1)} | {_rat(rng, 0, 1, 6) for _ in range(4)})
    dens = [mpq(rng.randint(0, 3), rng.randint(1, 3)) for _ in range(len(edges) - 1)]
    dens[0] = scalar(0)  # a null piece, so the support is proper
    atoms = {_rat(rng, 0, 1, 9): mpq(rng.randint(1, 4), 8) for _ in range(3)}
    return Measure1D(tuple(atoms.items()), StepFunction(edges, dens))


def criterion_derivation(seed: int, b: Budgets) -> CriterionResult:
    rng = random.Random(seed + 6)
    m = _random_measure(rng)
    w = StepFunction(m.density.edges, [mpq(rng.randint(-4, 4), 3) for _ in m.density.values])
    f = random_lipschitz_pl(rng, 6, lip=2)
    g = random_lipschitz_pl(rng, 6, lip=2)
    a, c = mpq(rng.randint(-5, 5), 7), mpq(rng.randint(-5, 5), 3)
    df, dg = apply_derivation_1d(m, w, f), apply_derivation_1d(m, w, g)
    lin = apply_derivation_1d(m, w, f.scale(a) + g.scale(c))
    fp, gp = PiecewisePoly.from_pl(f, m.domain), PiecewisePoly.from_pl(g, m.domain)
    prod = apply_derivation_1d(m, w, fp * gp)
    support = m.support_indicator()
    kinks = set(f.breakpoints) | set(g.breakpoints) | set(m.density.edges)
    atoms = {x for x, _ in m.atoms}
    n = 0
    while n < b.derivation_points:
        x = _rat(rng, 0, 1, 20)
        if x in kinks or x in atoms:
            continue
        n += 1
        ok = lin.at(x) == a * df.at(x) + c * dg.at(x)
        ok = ok and prod.at(x) == f(x) * dg.at(x) + g(x) * df.at(x)
        ok = ok and df.at(x) == w(x) * support(x) * f.slope_at(x)
        if not ok:
            return CriterionResult(11, "derivation model", False, f"at x={x}",
                                   {**schema.measure_to_json(m), "x": schema.enc(x)})
    if not apply_derivation_1d(m, w, PLFunction.constant(3)).is_zero():
        return CriterionResult(11, "derivation model", False, "constant not annihilated", None)
    cant = cantor_atoms(6)
    wc = StepFunction.constant(1, cant.domain)
    r = apply_derivation_1d(cant, wc, PLFunction.identity())
    if not r.is_zero() or any(r.at(x) != 0 for x, _ in cant.atoms):
        return CriterionResult(11, "derivation model", False, "atom-only measure not annihilated",
                               {**schema.measure_to_json(cant)})
    return CriterionResult(11, "derivation model", True,
                           f"linear and Leibniz at {n} points, w*f' on AC part, 0 on Cantor atoms")


# 12: projections


def criterion_projections(seed: int, b: Budgets) -> CriterionResult:
    e1 = Direction(1, 0)
    for n in range(0, 7):
        s = four_corner(n)
        got = project_length(s, e1).exact_unnormalized
        oracle = oracles.square_projection_union(s.squares(), 1, 0)
        if got != mpq(1, 2 ** n) or oracles._F(got) != oracle:
            return CriterionResult(12, "projections", False, f"depth {n}: {got} vs {oracle}",
                                   {"depth": n, "direction": "1,0",
                                    "command": f"stripecover project --set four-corner --depth {n} --dir 1,0"})
    rows = projection_report(range(1, 7), DEFAULT_DIRECTIONS)
    cols = monotone_columns(rows)
    if not all(cols.values()):
        bad = [k for k, v in cols.items() if not v]
        return CriterionResult(12, "projections", False, f"non-monotone column {bad[0]}",
                               {"direction": bad[0]})
    sweep = [Direction(p, q) for p in range(-6, 7) for q in range(-6, 7)
             if (p, q) != (0, 0) and math.gcd(p, q) == 1]
    zeros = [d for d in sweep if CONTROL_SEGMENT.project_length(d).exact_unnormalized == 0]
    if any(d.p != -d.q for d in zeros) or not zeros:
        return CriterionResult(12, "projections", False, f"control segment vanishes at {zeros}", None)
    return CriterionResult(12, "projections", True,
                           f"(1/2)^n for n=0..6, {len(cols)} monotone columns, control vanishes "
                           f"only at {', '.join(str(d) for d in zeros)}")


# 13: the bundled corpus


def criterion_corpus(seed: int, b: Budgets) -> CriterionResult:
    from .corpus import BUILDERS, bundled
    from .stripes import covers, disjointify_arrangement, uncross_arrangement
    decoders = {"Arrangement": schema.arrangement_from_json, "Points": schema.points_from_json,
                "PLFunction": schema.pl_from_json, "SampleSet": schema.samples_from_json,
                "Cover": schema.cover_from_json, "StepFunction": schema.step_from_json,
                "Measure": schema.measure_from_json, "SquareSet": schema.squares_from_json}
    docs = {}
    for name, (kind, build) in BUILDERS.items():
        raw = bundled(name)
        if raw != build():
            return CriterionResult(13, "bundled corpus", False, f"{name} differs from its builder")
        docs[name] = decoders[kind](raw)
    fig1 = uncross_arrangement(docs["arrangement_figure1.json"])
    fig2 = docs["arrangement_figure2.json"]
    out2 = disjointify_arrangement(fig2)
    expected_top = PLFunction.from_points([(0, mpq(1, 2)), (mpq(1, 2), mpq(3, 4)),
                                           (mpq(3, 4), mpq(5, 8)), (1, mpq(3, 4))], 0, 0)
    checks = {
        "figure-1 uncross ordered": fig1.is_ordered(),
        "figure-2 disjoint": out2.has_disjoint_interiors() and out2.curves[1].equals(expected_top),
        "figure-2 points covered": covers(out2, docs["points.json"]).covered,
        "1-D samples extend exactly": all(
            mcshane_extend(s, sample_lipschitz(s), p) == v
            for s in [docs["samples_1d.json"]] for p, v in zip(s.points, s.values)),
        "2-D samples extend": all(
            abs(mcshane_extend(s, sample_lipschitz(s), p) - float(v)) <= 1e-12
            for s in [docs["samples_2d.json"]] for p, v in zip(s.points, s.values)),
        "cover deficit": identity_deficit(build_phi_1d(docs["cover.json"]), docs["cover.json"]).ok,
        "derivation of PL sample": apply_derivation_1d(
            docs["measure.json"], docs["weight.json"], docs["pl_function.json"]).at(mpq(3, 8))
        == docs["weight.json"](mpq(3, 8)) * docs["pl_function.json"].slope_at(mpq(3, 8)),
        "square projection": project_length(docs["squares.json"], Direction(1, 0))
        .exact_unnormalized == mpq(1, 2),
    }
    bad = [k for k, v in checks.items() if not v]
    if bad:
        return CriterionResult(13, "bundled corpus", False, "; ".join(bad))
    return CriterionResult(13, "bundled corpus", True,
                           f"{len(BUILDERS)} files parse and match builders; {len(checks)} checks")


CRITERIA: dict = {
    1: criterion_uncross_sort,
    2: criterion_uncross_lipschitz,
    3: criterion_disjoint_separation,
    4: criterion_disjoint_inclusion,
    5: criterion_phi_lipschitz,
    6: criterion_phi_approximation,
    7: criterion_phi_univariate,
    8: criterion_interval_inequality,
    9: criterion_phi_1d,
    10: criterion_mcshane,
    11: criterion_derivation,
    12: criterion_projections,
    13: criterion_corpus,
}


def run_criterion(number: int, seed: int = 7, budgets: Optional[Budgets] = None) -> CriterionResult:
    budgets = budgets or Budgets()
    t0 = time.perf_counter()
    try:
        res = CRITERIA[number](seed, budgets)
    except Exception as e:  # a crash is a failed criterion, reported with the error
        res = CriterionResult(number, CRITERIA[number].__name__.removeprefix("criterion_"),
                              False, f"error: {e!r}")
    res.seconds = time.perf_counter() - t0
    return res


def _cell(args):
    return run_criterion(*args)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("STRIPECOVER_THREADS", "1")))
    except ValueError:
        return 1


def run_all(seed: int = 7, budgets: Optional[Budgets] = None, only=None,
            workers: Optional[int] = None) -> list:
    numbers = sorted(only) if only else sorted(CRITERIA)
    workers = worker_count() if workers is None else workers
    cells = [(n, seed, budgets) for n in numbers]
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_cell, cells))
    else:
        results = [_cell(c) for c in cells]
    return sorted(results, key=lambda r: r.number)


def results_csv(results, seed: int) -> str:
    """Deterministic CSV (timings are left out so reruns are byte-identical)."""
    buf = io.StringIO()
    buf.write(f"# stripecover verify seed={seed}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["criterion", "name", "status", "detail"])
    for r in results:
        w.writerow([r.number, r.name, "pass" if r.passed else "fail", r.detail])
    return buf.getvalue()
