"""Command-line entry point.

Exit codes: 0 when everything requested passed, 2 when a verification
failed (a witness file is written), 1 for input or usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import schema
from .errors import StripeCoverError
from .pl import scalar

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _rational(text: str):
    try:
        return scalar(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _tuple(text: str, n=None) -> tuple:
    parts = tuple(_rational(p) for p in text.split(","))
    if n is not None and len(parts) != n:
        raise UsageError(f"expected {n} comma-separated numbers, got {text!r}")
    return parts


def _emit(text: str, path=None):
    if path:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _witness(doc: dict, path) -> None:
    """Write a failure witness; ``{witness}`` in its command becomes the file's own path."""
    if "command" in doc:
        doc["command"] = doc["command"].replace("{witness}", str(path))
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(schema.dumps(doc))
    print(f"witness written to {path}", file=sys.stderr)


def _load_arrangement(path):
    return schema.arrangement_from_json(schema.load(path))


# stripes


def cmd_uncross(args) -> int:
    from .stripes import uncross_arrangement
    a = _load_arrangement(args.input)
    out = uncross_arrangement(a)
    _emit(schema.dumps(schema.arrangement_to_json(out)), args.output)
    if args.svg:
        from .plotting import plot_curves
        plot_curves([(a.curve_objects(), "input"), (out.curve_objects(), "uncrossed")], args.svg,
                    window=args.window)
    return EXIT_OK


def cmd_disjointify(args) -> int:
    from .stripes import disjointify_arrangement
    a = _load_arrangement(args.input)
    out = disjointify_arrangement(a, uncross_first=args.uncross_first)
    _emit(schema.dumps(schema.arrangement_to_json(out)), args.output)
    if args.svg:
        from .plotting import plot_arrangements
        plot_arrangements([(a, "input"), (out, "disjointified")], args.svg, window=args.window)
    return EXIT_OK


def cmd_covers(args) -> int:
    from .stripes import covers
    a = _load_arrangement(args.input)
    rep = covers(a, schema.points_from_json(schema.load(args.points)))
    doc = {"covered": rep.covered, "checked": rep.checked,
           "uncovered": [[schema.enc(c) for c in p] for p in rep.uncovered]}
    _emit(schema.dumps(doc), args.output)
    if not rep.covered:
        _witness({**schema.arrangement_to_json(a), "points": doc["uncovered"],
                  "command": "stripecover covers --input {witness} --points {witness}"},
                 args.witness)
        return EXIT_FAIL
    return EXIT_OK


# coordinate approximators


def _approximator(args):
    from .coord_approx import CoordApproximator
    a = _load_arrangement(args.arrangement)
    window = args.window
    if args.baseline == "auto":
        if a.curves:
            lo = a.curves[0].with_domain(window).minimum() - a.delta / 2
            base = min(scalar(0), lo)
        else:
            base = scalar(0)
    else:
        base = _rational(args.baseline)
    return CoordApproximator(a, base, window)


def cmd_phi(args) -> int:
    from .coord_approx import (sample_points, verify_approximation, verify_stripe_univariate,
                               verify_three_lipschitz)
    A = _approximator(args)
    if args.eval is None and args.verify is None:
        raise UsageError("phi needs --eval or --verify")
    status = EXIT_OK
    if args.eval is not None:
        p = _tuple(args.eval, 2)
        print(json.dumps({"point": [schema.enc(c) for c in p], "phi": schema.enc(A(p)),
                          "deficit": schema.enc(A.deficit(p))}))
    if args.verify is not None:
        buf = io.StringIO()
        buf.write(f"# stripecover phi verify={args.verify} seed={args.seed} samples={args.samples}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["metric", "value", "witness"])
        witness = None
        if args.verify == "lipschitz":
            rep = verify_three_lipschitz(A, args.samples, args.seed)
            pair = ";".join(",".join(str(c) for c in pt) for pt in rep.witness or ())
            w.writerow(["pairs", rep.pairs, ""])
            w.writerow(["max_ratio_euclidean", f"{rep.max_ratio:.12g}", pair])
            w.writerow(["max_ratio_sq", str(rep.max_ratio_sq), pair])
            w.writerow(["max_ratio_taxicab", str(rep.max_ratio_taxicab), ""])
            w.writerow(["violations", len(rep.violations), ""])
            if not rep.ok:
                p, q = rep.violations[0]
                witness = {"p": [schema.enc(c) for c in p], "q": [schema.enc(c) for c in q]}
        elif args.verify == "approx":
            rep = verify_approximation(A, sample_points(A, args.samples, args.seed))
            w.writerow(["points", rep.points, ""])
            w.writerow(["max_deficit", str(rep.max_deficit), ""])
            w.writerow(["min_deficit", str(rep.min_deficit), ""])
            w.writerow(["bound", str(rep.bound), ""])
            w.writerow(["violations", len(rep.violations), ""])
            if not rep.ok:
                p, d = rep.violations[0]
                witness = {"p": [schema.enc(c) for c in p], "deficit": schema.enc(d)}
        else:
            rep = verify_stripe_univariate(A, args.samples, args.seed)
            for l, (c, e) in enumerate(zip(rep.constants, rep.expected)):
                w.writerow([f"stripe_{l}_constant", str(c), f"expected {e}"])
            w.writerow(["violations", len(rep.violations), ""])
            if not rep.ok:
                witness = {"violation": [str(x) for x in rep.violations[0]]}
        _emit(buf.getvalue(), args.csv)
        if witness is not None:
            witness = {**schema.arrangement_to_json(A.arrangement),
                       "baseline": schema.enc(A.baseline), **witness}
            witness["command"] = (f"stripecover phi --arrangement {{witness}} --baseline={A.baseline} "
                                  f"--verify {args.verify} --samples {args.samples} --seed {args.seed}")
            _witness(witness, args.witness)
            status = EXIT_FAIL
    if args.svg:
        from .plotting import plot_phi
        plot_phi(A, args.svg)
    return status


# 1-D


def cmd_null1d(args) -> int:
    from .null1d import apply_derivation_1d, build_phi_1d, identity_deficit
    if args.action in ("phi", "deficit"):
        if not args.cover:
            raise UsageError(f"null1d {args.action} needs --cover")
        cover = schema.cover_from_json(schema.load(args.cover))
        phi = build_phi_1d(cover)
        if args.action == "phi":
            if args.at is not None:
                print(json.dumps({"x": schema.enc(_rational(args.at)),
                                  "phi": schema.enc(phi(_rational(args.at)))}))
            else:
                _emit(schema.dumps(schema.pl_to_json(phi)), args.output)
            if args.svg:
                from .plotting import plot_phi_1d
                plot_phi_1d(cover, phi, args.svg)
            return EXIT_OK
        try:
            rep = identity_deficit(phi, cover)
        except StripeCoverError as e:
            _witness({**schema.cover_to_json(cover), "error": str(e),
                      "command": "stripecover null1d deficit --cover {witness}"}, args.witness)
            return EXIT_FAIL
        _emit(schema.dumps({"max_deficit": schema.enc(rep.max_deficit),
                            "argmax": schema.enc(rep.argmax),
                            "bound": schema.enc(rep.bound)}), args.output)
        return EXIT_OK
    for need in ("measure", "weight", "function"):
        if not getattr(args, need):
            raise UsageError(f"null1d derive needs --{need}")
    m = schema.measure_from_json(schema.load(args.measure))
    wgt = schema.step_from_json(schema.load(args.weight))
    f = schema.pl_from_json(schema.load(args.function))
    res = apply_derivation_1d(m, wgt, f)
    if args.at is not None:
        x = _rational(args.at)
        print(json.dumps({"x": schema.enc(x), "value": schema.enc(res.at(x))}))
        return EXIT_OK
    doc = {"ac": schema.step_to_json(res.as_step()),
           "atoms": [[schema.enc(x), schema.enc(0)] for x in res.atoms],
           "excluded": [schema.enc(x) for x in res.excluded]}
    _emit(schema.dumps(doc), args.output)
    return EXIT_OK


# extension


def cmd_extend(args) -> int:
    from .extension import bounded_mcshane_extend, mcshane_extend, sample_lipschitz
    s = schema.samples_from_json(schema.load(args.samples))
    q = _tuple(args.query, s.dim)
    L = sample_lipschitz(s) if args.lipschitz is None else (
        float(args.lipschitz) if s.dim > 1 else _rational(args.lipschitz))
    v = bounded_mcshane_extend(s, q, L) if args.bounded else mcshane_extend(s, L, q)
    out = {"query": [schema.enc(c) for c in q],
           "lipschitz": schema.enc(L) if not isinstance(L, float) else repr(L)}
    out["value"] = repr(v) if isinstance(v, float) else schema.enc(v)
    print(json.dumps(out))
    return EXIT_OK


# projections


def _depths(text: str) -> list:
    if "-" in text or ".." in text:
        a, b = text.replace("..", "-").split("-")
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.split(",")]


def cmd_project(args) -> int:
    from .projections import (DEFAULT_DIRECTIONS, Direction, four_corner, monotone_columns,
                              project_length, projection_report, report_csv)
    if args.report:
        dirs = [Direction.parse(d) for d in args.dirs] if args.dirs else list(DEFAULT_DIRECTIONS)
        rows = projection_report(_depths(args.depths), dirs)
        _emit(report_csv(rows, f"stripecover project report depths={args.depths}"), args.csv)
        if args.figure:
            from .plotting import plot_projection_report
            plot_projection_report(rows, args.figure)
        bad = [k for k, ok in monotone_columns(rows).items() if not ok]
        if bad:
            _witness({"directions": [str(b) for b in bad],
                      "command": f"stripecover project --report --depths {args.depths}"},
                     args.witness)
            return EXIT_FAIL
        return EXIT_OK
    if args.dir is None:
        raise UsageError("project needs --dir p,q (or --report)")
    d = Direction.parse(args.dir)
    if args.set == "four-corner":
        if args.depth is None:
            raise UsageError("--set four-corner needs --depth")
        s = four_corner(args.depth)
    else:
        s = schema.squares_from_json(schema.load(args.set))
    r = project_length(s, d)
    print(json.dumps({"direction": str(d), "squares": len(s),
                      "exact_length": schema.enc(r.exact_unnormalized),
                      "normalized_length": r.normalized}))
    return EXIT_OK


# verification campaigns


def cmd_verify(args) -> int:
    from . import verify
    if not args.all and not args.criteria:
        raise UsageError("verify needs --all or --criteria")
    budgets = verify.Budgets.quick() if args.quick else verify.Budgets()
    results = verify.run_all(args.seed, budgets, None if args.all else args.criteria)
    for r in results:
        print(r.line())
    if args.csv:
        _emit(verify.results_csv(results, args.seed), args.csv)
    failed = [r for r in results if not r.passed]
    wdir = Path(args.witness_dir)
    for r in failed:
        doc = dict(r.witness or {})
        doc.setdefault("command", f"stripecover verify --criteria {r.number} --seed {args.seed}")
        doc["criterion"] = r.number
        doc["seed"] = args.seed
        _witness(doc, wdir / f"witness_{r.number}.json")
    if args.figures:
        _verify_figures(Path(args.figures))
    return EXIT_FAIL if failed else EXIT_OK


def _verify_figures(d: Path) -> None:
    from .coord_approx import CoordApproximator
    from .generate import figure1_curves, figure2_arrangement
    from .null1d import build_phi_1d, dyadic_cover
    from .plotting import plot_arrangements, plot_curves, plot_phi, plot_phi_1d, plot_projection_report
    from .projections import DEFAULT_DIRECTIONS, projection_report
    from .stripes import uncross
    fig1 = figure1_curves()
    plot_curves([(fig1, "input"), (uncross(fig1), "uncrossed")], d / "uncross_figure1.svg",
                window=(0, 6))
    before, after = figure2_arrangement(False), figure2_arrangement(True)
    plot_arrangements([(before, "input"), (after, "disjointified")], d / "disjointify_figure2.svg")
    plot_phi(CoordApproximator(after), d / "phi_figure2.svg")
    cover = dyadic_cover(3, pieces=3, seed=1)
    plot_phi_1d(cover, build_phi_1d(cover), d / "phi_1d.svg")
    plot_projection_report(projection_report(range(1, 7), DEFAULT_DIRECTIONS),
                           d / "projections.svg")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stripecover", description="Exact stripe covers, coordinate approximators "
                                                "and their verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def window(sp):
        sp.add_argument("--window", type=lambda t: _tuple(t, 2), default=(scalar(0), scalar(1)),
                        help="parameter window a,b (default 0,1)")

    def witness(sp, default="witness.json"):
        sp.add_argument("--witness", default=default, help="where to write a failure witness")

    for name in ("uncross", "disjointify"):
        sp = sub.add_parser(name, help=f"{name} an arrangement file")
        sp.add_argument("--input", required=True)
        sp.add_argument("--output")
        sp.add_argument("--svg")
        window(sp)
        if name == "disjointify":
            sp.add_argument("--uncross-first", action="store_true")
        sp.set_defaults(func=cmd_uncross if name == "uncross" else cmd_disjointify)

    sp = sub.add_parser("covers", help="check that points lie in the stripe union")
    sp.add_argument("--input", required=True)
    sp.add_argument("--points", required=True)
    sp.add_argument("--output")
    witness(sp)
    sp.set_defaults(func=cmd_covers)

    sp = sub.add_parser("phi", help="evaluate or verify the coordinate approximator")
    sp.add_argument("--arrangement", required=True)
    sp.add_argument("--eval", metavar="X,Y")
    sp.add_argument("--verify", choices=("lipschitz", "approx", "univariate"))
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--baseline", default="auto")
    sp.add_argument("--csv")
    sp.add_argument("--svg")
    window(sp)
    witness(sp)
    sp.set_defaults(func=cmd_phi)

    sp = sub.add_parser("null1d", help="1-D approximate identities and derivations")
    sp.add_argument("action", choices=("phi", "deficit", "derive"))
    sp.add_argument("--cover")
    sp.add_argument("--measure")
    sp.add_argument("--weight")
    sp.add_argument("--function")
    sp.add_argument("--at", metavar="X")
    sp.add_argument("--output")
    sp.add_argument("--svg")
    witness(sp)
    sp.set_defaults(func=cmd_null1d)

    sp = sub.add_parser("extend", help="McShane extension of sampled data")
    sp.add_argument("--samples", required=True)
    sp.add_argument("--query", required=True)
    sp.add_argument("--bounded", action="store_true")
    sp.add_argument("--lipschitz")
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("project", help="projection lengths of square sets")
    sp.add_argument("--set", default="four-corner", help="'four-corner' or a SquareSet file")
    sp.add_argument("--depth", type=int)
    sp.add_argument("--dir", metavar="P,Q")
    sp.add_argument("--report", action="store_true")
    sp.add_argument("--depths", default="1-6")
    sp.add_argument("--dirs", nargs="+", metavar="P,Q")
    sp.add_argument("--csv")
    sp.add_argument("--figure")
    witness(sp)
    sp.set_defaults(func=cmd_project)

    sp = sub.add_parser("verify", help="run the acceptance campaigns")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--criteria", type=int, nargs="+", choices=range(1, 14), metavar="N")
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--quick", action="store_true", help="small budgets for a smoke run")
    sp.add_argument("--csv")
    sp.add_argument("--figures", metavar="DIR")
    sp.add_argument("--witness-dir", default=".")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"stripecover: error: {e}", file=sys.stderr)
    except StripeCoverError as e:
        print(f"stripecover: {type(e).__name__}: {e}", file=sys.stderr)
    except OSError as e:
        print(f"stripecover: {e}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
