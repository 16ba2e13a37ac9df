import json

import pytest
from gmpy2 import mpq

from stripecover import schema
from stripecover.corpus import BUILDERS, bundled, bundled_path, write_corpus
from stripecover.errors import SchemaError
from stripecover.generate import figure2_arrangement
from stripecover.null1d import StepFunction
from stripecover.pl import PLFunction
from stripecover.projections import four_corner
from stripecover.stripes import Arrangement


def _pl(**over):
    doc = {"breakpoints": [["0", "1"], ["1", "2"]], "values": [0, "1/4"],
           "left_slope": 0, "right_slope": ["1", "2"], "domain": None}
    doc.update(over)
    return doc


def test_rational_forms():
    assert schema.dec(["3", "6"], "x") == mpq(1, 2)
    assert schema.dec(3, "x") == 3
    assert schema.dec("-2/8", "x") == mpq(-1, 4)
    assert schema.enc(mpq(-3, 9)) == ["-1", "3"]


@pytest.mark.parametrize("bad", [0.5, None, True, ["1"], ["1", "0"], ["1", "-2"], "x", {}])
def test_rational_rejects(bad):
    with pytest.raises(SchemaError) as e:
        schema.dec(bad, "values[3]")
    assert e.value.field == "values[3]"


def test_pl_errors_name_fields():
    with pytest.raises(SchemaError) as e:
        schema.pl_from_json(_pl(breakpoints=[0, 1, 1], values=[0, 0, 0]), "curves[2]")
    assert e.value.field == "curves[2].breakpoints[2]"
    with pytest.raises(SchemaError) as e:
        schema.pl_from_json(_pl(values=[0]))
    assert e.value.field == "values"
    with pytest.raises(SchemaError) as e:
        schema.pl_from_json({"values": []})
    assert e.value.field == "breakpoints"


def test_arrangement_errors():
    doc = schema.arrangement_to_json(figure2_arrangement())
    doc["curves"][1]["right_slope"] = 2
    with pytest.raises(SchemaError) as e:
        schema.arrangement_from_json(doc)
    assert e.value.field == "curves[1]"
    with pytest.raises(SchemaError) as e:
        schema.arrangement_from_json({"axis": 3, "delta": 1, "curves": []})
    assert e.value.field == "axis"
    with pytest.raises(SchemaError) as e:
        schema.arrangement_from_json({"axis": 1, "delta": 0, "curves": []})
    assert e.value.field == "delta"


def test_round_trips():
    a = figure2_arrangement()
    b = schema.arrangement_from_json(json.loads(schema.dumps(schema.arrangement_to_json(a))))
    assert all(f.equals(g) for f, g in zip(a.curves, b.curves)) and b.delta == a.delta
    mixed = Arrangement(1, (PLFunction.constant(0), PLFunction.constant(1)), (mpq(1, 2), mpq(1, 4)))
    back = schema.arrangement_from_json(schema.arrangement_to_json(mixed))
    assert back.thicknesses == mixed.thicknesses
    s = StepFunction([0, 1, 2], [3, 4])
    assert schema.step_from_json(schema.step_to_json(s)) == s
    sq = schema.squares_from_json(schema.squares_to_json(four_corner(2)))
    assert sorted(sq.squares()) == sorted(four_corner(2).squares())


def test_other_schema_errors():
    with pytest.raises(SchemaError) as e:
        schema.samples_from_json({"dim": 2, "points": [[0, 0], [0, 0]], "values": [1, 2]})
    assert e.value.field == "points"
    with pytest.raises(SchemaError) as e:
        schema.samples_from_json({"dim": 2, "points": [[0, 0, 1]], "values": [1]})
    assert e.value.field == "points[0]"
    with pytest.raises(SchemaError) as e:
        schema.cover_from_json({"domain": [0, 1], "intervals": [[0, "1/2"], ["1/3", 1]]})
    assert e.value.field == "intervals"
    with pytest.raises(SchemaError) as e:
        schema.measure_from_json({"atoms": [[0, -1]], "density": {"edges": [0, 1], "values": [0]}})
    assert e.value.field == "atoms"
    with pytest.raises(SchemaError) as e:
        schema.squares_from_json({"squares": [[0, 0, 0]]})
    assert e.value.field == "squares[0][2]"


def test_load_reports_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "axis": 1,\n}')
    with pytest.raises(SchemaError) as e:
        schema.load(p)
    assert e.value.field == "$" and "line 3" in str(e.value)


def test_bundled_corpus_matches_builders(tmp_path):
    kinds = {kind for kind, _ in BUILDERS.values()}
    assert kinds == {"Arrangement", "Points", "PLFunction", "SampleSet", "Cover",
                     "StepFunction", "Measure", "SquareSet"}
    for name, (_, build) in BUILDERS.items():
        assert bundled(name) == build()
    for p in write_corpus(tmp_path):
        assert p.read_text() == bundled_path(p.name).read_text()


def test_docs_embed_every_bundled_example():
    from pathlib import Path
    docs = (Path(__file__).parents[1] / "docs" / "schemas.md").read_text()
    for name in BUILDERS:
        assert f"data/{name}" in docs
        assert bundled_path(name).read_text() in docs
