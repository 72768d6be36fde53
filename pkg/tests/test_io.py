import json
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from closurelab.closure import CutBounds
from closurelab.errors import ValidationError
from closurelab.io import (
    dumps,
    family_to_json,
    parse_family,
    parse_polyhedron,
    parse_split,
    parse_unimodular,
    polyhedron_to_json,
    validate,
)
from closurelab.lattice import Split, make_split
from closurelab.polyhedra import Polyhedron

SQUARE_DOC = {
    "dim": 2,
    "hrep": [
        {"a": [1, 0], "alpha": 1},
        {"a": [-1, 0], "alpha": "0"},
        {"a": [0, 1], "alpha": "1"},
        {"a": [0, -1], "alpha": 0},
    ],
    "vrep": {"vertices": [[0, 0], [1, 0], [0, 1], ["1", "1"]]},
}

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


class TestValidate:
    def test_square_ok(self):
        report = validate(SQUARE_DOC)
        assert report.ok and not report.warnings

    def test_vertex_violation_path(self):
        doc = json.loads(json.dumps(SQUARE_DOC))
        doc["vrep"]["vertices"][2] = ["0", "2"]
        report = validate(doc)
        assert not report.ok
        assert report.errors[0][0] == "vrep.vertices[2]"

    def test_non_primitive_normal_warns(self):
        doc = {"dim": 2, "hrep": [{"a": [2, 0], "alpha": 1}, {"a": [-1, 0], "alpha": 0}]}
        report = validate(doc)
        assert report.ok
        assert report.warnings[0][0] == "hrep[0].a"
        assert parse_polyhedron(doc) == make_split((1, 0), 0).intersect(
            Polyhedron.from_h(2, [((1, 0), F(1, 2))])
        )

    def test_generators_too_small(self):
        doc = json.loads(json.dumps(SQUARE_DOC))
        doc["vrep"]["vertices"] = doc["vrep"]["vertices"][:3]
        report = validate(doc)
        assert not report.ok and report.errors[0][0] == "vrep"

    def test_structural_errors(self):
        assert validate({"dim": 0, "hrep": []}).errors[0][0] == "dim"
        assert validate({"dim": 2}).errors
        report = validate({"dim": 2, "hrep": [{"a": [1], "alpha": 0}, {"a": [0, 0], "alpha": 1}]})
        assert [p for p, _ in report.errors] == ["hrep[0].a", "hrep[1].a"]
        assert validate({"dim": 2, "hrep": [{"a": [1, 0], "alpha": 0.5}]}).errors[0][0] == "hrep[0].alpha"
        assert not validate([1, 2]).ok

    def test_ray_and_line_checks(self):
        doc = {"dim": 2, "hrep": [{"a": [-1, 0], "alpha": 0}], "vrep": {"vertices": [[0, 0]], "rays": [[-1, 0]], "lines": [[1, 0]]}}
        paths = [p for p, _ in validate(doc).errors]
        assert paths == ["vrep.rays[0]", "vrep.lines[0]"]

    def test_constraint_limit(self, monkeypatch):
        monkeypatch.setenv("CLOSURELAB_MAX_CONSTRAINTS", "3")
        assert not validate(SQUARE_DOC).ok

    def test_dimension_limit(self, monkeypatch):
        monkeypatch.setenv("CLOSURELAB_MAX_DIM", "1")
        assert validate(SQUARE_DOC).errors[0][0] == "dim"

    def test_other_documents(self):
        assert validate({"u": [1, 1], "i": 0}).ok
        assert not validate({"u": [2, 2], "i": 0}).ok
        assert validate({"U": [[1, 1], [0, 1]], "shift": [0, 0]}).ok
        assert not validate({"U": [[2, 0], [0, 1]], "shift": [0, 0]}).ok
        assert validate({"members": [SQUARE_DOC, {"u": [1, 0], "i": 0}]}).ok
        assert not validate({"members": [{"dim": 2, "vrep": {"vertices": [[0, 0]]}}], "bounds": {"k": 1, "l": 1, "m": 1}}).ok


class TestParse:
    def test_parse_square(self):
        P = parse_polyhedron(SQUARE_DOC)
        assert len(P.vertices) == 4

    def test_parse_split_document(self):
        assert parse_polyhedron({"u": [1, 1], "i": 1}) == make_split((1, 1), 1)
        assert parse_split({"u": [1, 1], "i": 1}) == Split((1, 1), 1)

    def test_parse_errors(self):
        with pytest.raises(ValidationError, match="vrep.vertices"):
            parse_polyhedron({"dim": 2, "hrep": [{"a": [1, 0], "alpha": 0}], "vrep": {"vertices": [[1, 0]]}})
        with pytest.raises(ValidationError):
            parse_family({"dim": 2})
        with pytest.raises(ValidationError):
            parse_unimodular({"U": [[1, 2], [2, 1]]})

    def test_family_roundtrip(self):
        fam = parse_family({"members": [{"u": [1, 0], "i": 0}], "bounds": {"k": 1, "l": 1, "m": 2}})
        assert fam.bounds == CutBounds(1, 1, 2)
        again = parse_family(json.loads(dumps(family_to_json(fam))))
        assert again == fam

    @given(st.lists(st.tuples(rationals, rationals), min_size=1, max_size=6), st.lists(st.sampled_from([(1, 0), (0, 1), (1, 1)]), max_size=2))
    def test_polyhedron_roundtrip(self, pts, rays):
        P = Polyhedron.from_v(2, pts, rays)
        doc = json.loads(dumps(polyhedron_to_json(P)))
        assert validate(doc).ok
        assert parse_polyhedron(doc) == P
        assert dumps(polyhedron_to_json(parse_polyhedron(doc))) == dumps(polyhedron_to_json(P))

    def test_empty_roundtrip(self):
        E = Polyhedron.empty(3)
        assert parse_polyhedron(json.loads(dumps(polyhedron_to_json(E)))) == E
