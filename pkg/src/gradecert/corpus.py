"""The built-in test corpus: small graded algebras over Q and F_p given as spec documents."""

from __future__ import annotations

import copy
from dataclasses import dataclass

from .algcore import GradedAlgebra
from .specio import algebra_from_spec


def _quiver(name, vertices, arrows, relations=(), poset=(), field="Q", grading="path"):
    doc = {"name": name, "field": field,
           "quiver": {"vertices": list(vertices), "arrows": [list(a) for a in arrows],
                      "relations": [list(map(list, r)) for r in relations]},
           "poset": [list(p) for p in poset]}
    if grading != "path":
        doc["grading"] = grading
    return doc


def _variant(doc, suffix, **changes):
    out = copy.deepcopy(doc)
    out["name"] = f"{doc['name']}{suffix}"
    out.update(changes)
    return out


_A2 = _quiver("path-A2", "12", [("1", "2", "a", 1)], poset=[("1", "2")])
_A3 = _quiver("path-A3", "123", [("1", "2", "a", 1), ("2", "3", "b", 1)], poset=[("1", "2"), ("2", "3")])
_A3_REL = _quiver("path-A3-rad2", "123", [("1", "2", "a", 1), ("2", "3", "b", 1)],
                  relations=[[(1, "b.a")]], poset=[("1", "2"), ("2", "3")])
_A4 = _quiver("path-A4", "1234", [("1", "2", "a", 1), ("2", "3", "b", 1), ("3", "4", "c", 1)],
              poset=[("1", "2"), ("2", "3"), ("3", "4")])
_KRON = _quiver("kronecker", "12", [("1", "2", "a", 1), ("1", "2", "b", 1)], poset=[("1", "2")])
_SL2 = _quiver("sl2-block", "12", [("1", "2", "a", 1), ("2", "1", "b", 1)],
               relations=[[(1, "a.b")]], poset=[("1", "2")])
_AUS3 = _quiver("auslander-x3", "123",
                [("1", "2", "a1", 1), ("2", "1", "b1", 1), ("2", "3", "a2", 1), ("3", "2", "b2", 1)],
                relations=[[(1, "b1.a1")], [(1, "a1.b1"), (-1, "b2.a2")]],
                poset=[("3", "2"), ("2", "1")])
_DUAL = _quiver("dual-numbers", "1", [("1", "1", "x", 1)], relations=[[(1, "x.x")]])
_X3 = _quiver("truncated-x3", "1", [("1", "1", "x", 1)], relations=[[(1, "x.x.x")]])
_EXT2 = _quiver("exterior-2", "1", [("1", "1", "x", 1), ("1", "1", "y", 1)],
                relations=[[(1, "x.x")], [(1, "y.y")], [(1, "x.y"), (1, "y.x")]])
_RAD2 = _quiver("two-loops-rad2", "1", [("1", "1", "x", 1), ("1", "1", "y", 1)],
                relations=[[(1, "x.x")], [(1, "x.y")], [(1, "y.x")], [(1, "y.y")]])
_SS2 = _quiver("semisimple-2", "12", [], poset=[("1", "2")])
_A2_G2 = _quiver("path-A2-arrow-grade2", "12", [("1", "2", "a", 2)], poset=[("1", "2")])
_M2 = {"name": "matrix-M2", "field": "Q", "dim": 4, "labels": ["E11", "E12", "E21", "E22"],
       "grades": [0, 0, 0, 0],
       "mult": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 2, 0, "1"], [1, 3, 1, "1"],
                [2, 0, 2, "1"], [2, 1, 3, "1"], [3, 2, 2, "1"], [3, 3, 3, "1"]],
       "unit": ["1", "0", "0", "1"], "idempotents": [["1", "0", "0", "0"], ["0", "0", "0", "1"]],
       "poset": []}

CORPUS_SPECS: list[dict] = [
    _A2,
    _variant(_A2, "-trivial", grading="trivial"),
    _A2_G2,
    _A3,
    _variant(_A3, "-trivial", grading="trivial"),
    _A3_REL,
    _variant(_A4, "-trivial", grading="trivial"),
    _KRON,
    _variant(_KRON, "-trivial", grading="trivial"),
    _SL2,
    _variant(_SL2, "-trivial", grading="trivial"),
    _AUS3,
    _DUAL,
    _X3,
    _EXT2,
    _RAD2,
    _SS2,
    _M2,
    _variant(_A2, "-F2", field="Fp:2"),
    _variant(_A3_REL, "-F5", field="Fp:5"),
    _variant(_SL2, "-F3", field="Fp:3"),
    _variant(_KRON, "-F2-trivial", field="Fp:2", grading="trivial"),
    _variant(_DUAL, "-F2", field="Fp:2"),
    _variant(_EXT2, "-F3", field="Fp:3"),
    _variant(_AUS3, "-F3", field="Fp:3"),
]

# quasi-hereditary algebras carrying the trivial grading
TRIVIAL_QH = ["path-A2-trivial", "path-A3-trivial", "path-A4-trivial", "kronecker-trivial",
              "sl2-block-trivial", "kronecker-F2-trivial", "matrix-M2"]


@dataclass
class CorpusEntry:
    name: str
    spec: dict

    @property
    def field(self) -> str:
        return self.spec["field"]

    def algebra(self) -> GradedAlgebra:
        return algebra_from_spec(self.spec)


def corpus() -> list[CorpusEntry]:
    return [CorpusEntry(s["name"], copy.deepcopy(s)) for s in CORPUS_SPECS]


def entry(name: str) -> CorpusEntry:
    for e in corpus():
        if e.name == name:
            return e
    raise KeyError(name)
