"""JSON algebra and order spec files.

An algebra spec looks like::

    {"name": "path 1->2", "field": "Q", "dim": 3,
     "labels": ["e1", "e2", "a"], "grades": [0, 0, 1],
     "mult": [[0, 0, 0, "1"], [1, 1, 1, "1"], [2, 0, 2, "1"], [1, 2, 2, "1"]],
     "unit": ["1", "1", "0"],
     "idempotents": [...], "radical": [...],
     "simple_names": ["1", "2"], "poset": [["1", "2"]]}

``mult`` triplets ``[i, j, k, c]`` mean that ``b_i b_j`` has coefficient
``c`` on ``b_k``.  A ``quiver`` block may replace ``dim``/``labels``/
``grades``/``mult``/``unit``; ``"grading": "trivial"`` then forgets the
path-length grading.  An order spec has ``"field": "Z"``, a ``prime`` and
integer coefficients.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .algcore import Arrow, GradedAlgebra, QuiverPresentation, build_algebra, forget_grading, from_quiver
from .errors import GradecertError, SpecParseError
from .exactla import Field
from .forcegr import IntegralOrder

SCHEMA_VERSION = 1


def loads(text: str, source: str = "<spec>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise SpecParseError(f"invalid JSON at column {err.colno}: {err.msg}",
                             f"{source}, line {err.lineno}") from err
    if not isinstance(doc, dict):
        raise SpecParseError(f"{source}: top level must be an object", "top level")
    return doc


def load(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise SpecParseError(f"cannot read {path}: {err.strerror}", str(path)) from err
    return loads(text, str(path))


def _need(doc: Mapping, key: str, kind: type | tuple[type, ...]) -> Any:
    if key not in doc:
        raise SpecParseError(f"missing field {key!r}", key)
    v = doc[key]
    if not isinstance(v, kind) or isinstance(v, bool) and kind is not bool:
        raise SpecParseError(f"field {key!r} has the wrong type ({type(v).__name__})", key)
    return v


def _coef(field: Field, c, where: str):
    try:
        return field(c)
    except (ValueError, TypeError, ZeroDivisionError) as err:
        raise SpecParseError(f"bad coefficient {c!r}: {err}", where) from err


def _vector(field: Field, v, dim: int, where: str) -> dict:
    if isinstance(v, Mapping):
        out = {}
        for k, c in v.items():
            i = int(k)
            if not 0 <= i < dim:
                raise SpecParseError(f"index {k} out of range", where)
            out[i] = _coef(field, c, where)
        return out
    if not isinstance(v, list) or len(v) != dim:
        raise SpecParseError(f"expected a list of {dim} coefficients", where)
    return {i: _coef(field, c, f"{where}[{i}]") for i, c in enumerate(v)}


def _poset_pairs(raw, names: list[str] | None, where: str = "poset") -> list[tuple[int, int]]:
    out = []
    for n, pr in enumerate(raw):
        if not isinstance(pr, list) or len(pr) != 2:
            raise SpecParseError("poset relations are [smaller, larger] pairs", f"{where}[{n}]")
        idx = []
        for x in pr:
            if isinstance(x, int) and not isinstance(x, bool):
                idx.append(x)
            elif names is not None and str(x) in names:
                idx.append(names.index(str(x)))
            else:
                raise SpecParseError(f"unknown poset element {x!r}", f"{where}[{n}]")
        out.append(tuple(idx))
    return out


def algebra_from_spec(doc: Mapping) -> GradedAlgebra:
    """Build (and validate) the algebra described by a parsed spec."""
    field_name = _need(doc, "field", str)
    if field_name == "Z":
        raise SpecParseError("this is an order spec (field Z); use it with tildegr", "field")
    try:
        field = Field.from_spec_name(field_name)
    except ValueError as err:
        raise SpecParseError(str(err), "field") from err
    name = doc.get("name")
    simple_names = doc.get("simple_names")
    if "quiver" in doc:
        q = doc["quiver"]
        if not isinstance(q, Mapping):
            raise SpecParseError("quiver block must be an object", "quiver")
        verts = [str(v) for v in _need(q, "vertices", list)]
        arrows = []
        for n, ar in enumerate(_need(q, "arrows", list)):
            if isinstance(ar, Mapping):
                ar = [ar.get("source"), ar.get("target"), ar.get("label"), ar.get("grade", 1)]
            if not isinstance(ar, list) or len(ar) not in (3, 4):
                raise SpecParseError("arrow must be [source, target, label(, grade)]", f"quiver.arrows[{n}]")
            arrows.append(Arrow(str(ar[0]), str(ar[1]), str(ar[2]), int(ar[3]) if len(ar) == 4 else 1))
        rels = []
        for n, rel in enumerate(q.get("relations", [])):
            if isinstance(rel, str):
                rel = [[1, rel]]
            if not isinstance(rel, list) or not all(isinstance(t, list) and len(t) == 2 for t in rel):
                raise SpecParseError("relation must be a list of [coefficient, path] terms",
                                     f"quiver.relations[{n}]")
            rels.append([(_coef(field, c, f"quiver.relations[{n}]"), p) for c, p in rel])
        raw_poset = doc.get("poset")
        poset = None
        if raw_poset is not None:
            poset = [(verts[x], verts[y]) for x, y in _poset_pairs(raw_poset, verts)]
        qp = QuiverPresentation(verts, arrows, rels, truncation_degree=int(q.get("truncation_degree", 20)),
                                field=field, poset=poset, name=name)
        a = from_quiver(qp)
        if doc.get("grading", "path") == "trivial":
            a = forget_grading(a)
        elif doc.get("grading", "path") != "path":
            raise SpecParseError("grading must be 'path' or 'trivial'", "grading")
        return a
    dim = _need(doc, "dim", int)
    labels = doc.get("labels") or [f"b{i}" for i in range(dim)]
    grades = _need(doc, "grades", list)
    if len(grades) != dim or not all(isinstance(g, int) for g in grades):
        raise SpecParseError(f"grades must be {dim} integers", "grades")
    mult = []
    for n, t in enumerate(_need(doc, "mult", list)):
        if not isinstance(t, list) or len(t) != 4:
            raise SpecParseError("triplet should be [i, j, k, coeff]", f"mult[{n}]")
        i, j, k, c = t
        for idx in (i, j, k):
            if not isinstance(idx, int) or not 0 <= idx < dim:
                raise SpecParseError(f"index {idx!r} out of range", f"mult[{n}]")
        mult.append((i, j, k, _coef(field, c, f"mult[{n}]")))
    unit = _vector(field, _need(doc, "unit", (list, dict)), dim, "unit")
    idems = doc.get("idempotents")
    if idems is not None:
        idems = [_vector(field, e, dim, f"idempotents[{n}]") for n, e in enumerate(idems)]
    rad = doc.get("radical")
    if rad is not None:
        rad = [_vector(field, r, dim, f"radical[{n}]") for n, r in enumerate(rad)]
    poset = doc.get("poset")
    if poset is not None:
        poset = _poset_pairs(poset, [str(s) for s in simple_names] if simple_names else None)
    return build_algebra(field, grades, mult, unit, labels=labels, idempotents=idems, radical_basis=rad,
                         poset=poset, simple_names=simple_names, name=name)


def order_from_spec(doc: Mapping) -> IntegralOrder:
    if doc.get("field") != "Z":
        raise SpecParseError("an order spec needs field 'Z'", "field")
    prime = _need(doc, "prime", int)
    dim = _need(doc, "dim", int)
    mult = []
    for n, t in enumerate(_need(doc, "mult", list)):
        if not isinstance(t, list) or len(t) != 4 or not all(isinstance(x, int) for x in t):
            raise SpecParseError("order triplets are four integers", f"mult[{n}]")
        mult.append(tuple(t))
    unit = _need(doc, "unit", list)
    try:
        return IntegralOrder(dim, mult, [int(u) for u in unit], prime, doc.get("labels"), doc.get("name"))
    except (ValueError, TypeError) as err:
        raise SpecParseError(str(err), "order") from err


def _fmt(field: Field, c) -> str:
    return str(int(c)) if field.p is not None else (str(int(c.numerator)) if c.denominator == 1 else f"{c.numerator}/{c.denominator}")


def _dense(field: Field, v: Mapping, dim: int) -> list[str]:
    return [_fmt(field, v.get(i, field.zero)) for i in range(dim)]


def algebra_to_spec(a: GradedAlgebra) -> dict:
    """Canonical spec document (structure-constant form)."""
    f = a.field
    doc: dict = {}
    if a.name:
        doc["name"] = a.name
    doc["field"] = f.spec_name
    doc["dim"] = a.dim
    doc["labels"] = list(a.labels)
    doc["grades"] = list(a.grades)
    doc["mult"] = [[i, j, k, _fmt(f, c)] for (i, j), v in sorted(a.table.items()) for k, c in sorted(v.items())]
    doc["unit"] = _dense(f, a.unit, a.dim)
    try:
        idems = a.primitive_idempotents()
        doc["idempotents"] = [_dense(f, e, a.dim) for e in idems]
    except GradecertError:
        idems = None
    try:
        doc["radical"] = [_dense(f, r, a.dim) for r in a.radical()]
    except GradecertError:
        pass
    if idems is not None:
        names = a.simple_labels()
        doc["simple_names"] = names
        if a.poset is not None:
            doc["poset"] = [[names[x], names[y]] for x, y in sorted(a.poset)]
    return doc


def order_to_spec(o: IntegralOrder) -> dict:
    doc: dict = {}
    if o.name:
        doc["name"] = o.name
    doc.update({"field": "Z", "prime": o.prime, "dim": o.dim, "labels": list(o.labels),
                "mult": [list(t) for t in sorted(o.mult)], "unit": list(o.unit)})
    return doc


def dumps(doc: Mapping) -> str:
    """Deterministic rendering: one top-level field per line."""
    lines = [f"  {json.dumps(k)}: {json.dumps(v, separators=(', ', ': '))}" for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"
