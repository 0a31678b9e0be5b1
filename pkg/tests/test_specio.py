from __future__ import annotations

import json

import pytest

from gradecert.corpus import CORPUS_SPECS, corpus
from gradecert.errors import GradingViolation, SpecParseError
from gradecert.forcegr import IntegralOrder
from gradecert.specio import (
    algebra_from_spec,
    algebra_to_spec,
    dumps,
    loads,
    order_from_spec,
    order_to_spec,
)

DUAL = {"name": "dual", "field": "Q", "dim": 2, "labels": ["1", "x"], "grades": [0, 1],
        "mult": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]], "unit": ["1", "0"]}


@pytest.mark.parametrize("e", corpus(), ids=lambda e: e.name)
def test_round_trip_is_identity_on_canonical_form(e):
    doc = algebra_to_spec(e.algebra())
    text = dumps(doc)
    again = algebra_to_spec(algebra_from_spec(loads(text)))
    assert again == doc
    assert dumps(again) == text


def test_dumps_one_field_per_line():
    text = dumps({"a": 1, "b": [1, 2]})
    assert text == '{\n  "a": 1,\n  "b": [1, 2]\n}\n'
    assert json.loads(text) == {"a": 1, "b": [1, 2]}


def test_mult_form_parses():
    a = algebra_from_spec(DUAL)
    assert a.dim == 2 and a.grades == (0, 1)


def test_fractions_and_sparse_vectors():
    doc = dict(DUAL, unit={"0": "2/2"})
    assert algebra_from_spec(doc).unit == algebra_from_spec(DUAL).unit


def test_quiver_string_relations():
    doc = {"field": "Q", "quiver": {"vertices": ["1"], "arrows": [["1", "1", "x"]], "relations": ["x.x.x"]}}
    assert algebra_from_spec(doc).dim == 3


def test_trivial_grading_flag():
    doc = [s for s in CORPUS_SPECS if s["name"] == "path-A2-trivial"][0]
    assert set(algebra_from_spec(doc).grades) == {0}
    with pytest.raises(SpecParseError):
        algebra_from_spec(dict(doc, grading="weird"))


@pytest.mark.parametrize("change, where", [
    ({"field": "R"}, "field"),
    ({"grades": [0]}, "grades"),
    ({"mult": [[0, 0, 5, "1"]]}, "mult[0]"),
    ({"mult": [[0, 0, 0]]}, "mult[0]"),
    ({"unit": ["1"]}, "unit"),
    ({"mult": [[0, 0, 0, "1/0"]]}, "mult[0]"),
    ({"poset": [["1", "zz"]], "simple_names": ["1"]}, "poset[0]"),
])
def test_field_diagnostics(change, where):
    with pytest.raises(SpecParseError) as err:
        algebra_from_spec(dict(DUAL, **change))
    assert err.value.where == where


def test_missing_field():
    doc = dict(DUAL)
    del doc["mult"]
    with pytest.raises(SpecParseError) as err:
        algebra_from_spec(doc)
    assert err.value.where == "mult"


def test_invalid_json_location():
    with pytest.raises(SpecParseError) as err:
        loads('{\n  "field": "Q",\n  oops\n}', "a.json")
    assert err.value.where == "a.json, line 3"
    with pytest.raises(SpecParseError):
        loads("[1, 2]")


def test_validation_errors_propagate():
    bad = dict(DUAL, mult=DUAL["mult"] + [[1, 1, 1, "1"]])
    with pytest.raises(GradingViolation):
        algebra_from_spec(bad)


def test_order_round_trip():
    doc = {"name": "Z[x]/(x^2-5)", "field": "Z", "prime": 5, "dim": 2, "labels": ["1", "x"],
           "mult": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 5]], "unit": [1, 0]}
    o = order_from_spec(doc)
    assert isinstance(o, IntegralOrder) and o.prime == 5
    assert order_to_spec(o) == doc
    with pytest.raises(SpecParseError):
        order_from_spec(dict(doc, mult=[[0, 0, 0, "1/2"]]))
    with pytest.raises(SpecParseError):
        algebra_from_spec(doc)
