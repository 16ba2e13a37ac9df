"""The bundled example corpus: one JSON document per schema.

The files under ``stripecover/data`` are generated by :func:`write_corpus`
and a test checks that they still match their builders.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from gmpy2 import mpq

from . import schema
from .extension import SampleSet
from .generate import FIGURE2_DELTA, figure1_curves, figure2_curves
from .null1d import Measure1D, OpenCover1D, StepFunction
from .pl import PLFunction
from .projections import four_corner
from .stripes import Arrangement


def _figure1():
    return schema.arrangement_to_json(Arrangement(1, tuple(c.f for c in figure1_curves()), 1))


def _figure2():
    return schema.arrangement_to_json(
        Arrangement(1, tuple(c.f for c in figure2_curves()), FIGURE2_DELTA))


def _points():
    # centres and edges of the two input stripes of the figure-2 arrangement
    pts = [(0, mpq(1, 4)), (mpq(1, 2), mpq(5, 8)), (mpq(3, 4), mpq(1, 2)), (1, mpq(7, 8)),
           (mpq(1, 4), mpq(1, 2)), (mpq(1, 2), mpq(3, 8))]
    return schema.points_to_json(pts)


def _pl():
    return schema.pl_to_json(PLFunction.from_points(
        [(0, 0), (mpq(1, 4), mpq(1, 4)), (mpq(1, 2), mpq(1, 8)), (1, mpq(5, 8))], 1, -1))


def _samples_1d():
    return schema.samples_to_json(SampleSet(((0,), (mpq(1, 3),), (1,)), (0, mpq(1, 2), 1)))


def _samples_2d():
    return schema.samples_to_json(SampleSet(((0, 0), (1, 0), (0, 1), (1, 1)),
                                            (0, 1, 1, mpq(3, 2))))


def _cover():
    return schema.cover_to_json(OpenCover1D((0, 1), ((mpq(1, 8), mpq(1, 4)),
                                                     (mpq(1, 2), mpq(5, 8)))))


def _weight():
    return schema.step_to_json(StepFunction([0, mpq(1, 2), 1], [2, -1]))


def _measure():
    return schema.measure_to_json(Measure1D(((mpq(1, 3), mpq(1, 4)), (mpq(3, 4), mpq(1, 8))),
                                            StepFunction([0, mpq(1, 4), 1], [0, 1])))


def _squares():
    return schema.squares_to_json(four_corner(1))


BUILDERS = {
    "arrangement_figure1.json": ("Arrangement", _figure1),
    "arrangement_figure2.json": ("Arrangement", _figure2),
    "points.json": ("Points", _points),
    "pl_function.json": ("PLFunction", _pl),
    "samples_1d.json": ("SampleSet", _samples_1d),
    "samples_2d.json": ("SampleSet", _samples_2d),
    "cover.json": ("Cover", _cover),
    "weight.json": ("StepFunction", _weight),
    "measure.json": ("Measure", _measure),
    "squares.json": ("SquareSet", _squares),
}


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("stripecover") / "data" / name))


def bundled(name: str):
    return schema.load(bundled_path(name))


def write_corpus(directory) -> list:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for name, (_, build) in BUILDERS.items():
        (d / name).write_text(schema.dumps(build()))
        out.append(d / name)
    return out


if __name__ == "__main__":
    for p in write_corpus(Path(__file__).parent / "data"):
        print(p)
