"""Finite-dimensional graded algebras: construction, quivers, radicals.

Elements are sparse coefficient dicts over the basis.  Structure constants
are stored as ``table[(i, j)] = b_i * b_j`` with zero products omitted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    BadIdempotents,
    BadUnit,
    GradingViolation,
    MissingIdempotents,
    NonAssociative,
    NotFiniteDimensional,
    NotSplit,
    RadicalUnavailable,
    SpecParseError,
)
from .exactla import QQ, Echelon, ExactMatrix, Field, axpy, clean, kernel_vectors, scaled, span_echelon


class GradedAlgebra:
    """A finite-dimensional algebra with a homogeneous basis.

    Construct through :func:`build_algebra` (validating) or the internal
    constructors in this package, which pass ``check=False`` only for
    algebras that are correct by construction.
    """

    def __init__(
        self,
        field: Field,
        labels: Sequence[str],
        table: Mapping[tuple[int, int], Mapping[int, object]],
        unit: Mapping[int, object],
        grades: Sequence[int],
        idempotents: Sequence[Mapping[int, object]] | None = None,
        radical_basis: Sequence[Mapping[int, object]] | None = None,
        poset: Sequence[tuple[int, int]] | None = None,
        simple_names: Sequence[str] | None = None,
        name: str | None = None,
        check: bool = True,
    ):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.grades = tuple(int(g) for g in grades)
        if len(self.grades) != self.dim:
            raise SpecParseError(f"{len(self.grades)} grades for {self.dim} basis vectors", "grades")
        tab = {}
        for (i, j), v in table.items():
            v = clean(v, field)
            if v:
                tab[(i, j)] = v
        self.table = tab
        self.unit = clean(unit, field)
        self.idempotents = None if idempotents is None else [clean(e, field) for e in idempotents]
        self._given_radical = None if radical_basis is None else [clean(r, field) for r in radical_basis]
        self.poset = None if poset is None else [tuple(pr) for pr in poset]
        self.simple_names = None if simple_names is None else list(simple_names)
        self.name = name
        self._cache: dict = {}
        # row index: left[i] = {j: b_i b_j}
        left: list[dict] = [dict() for _ in range(self.dim)]
        for (i, j), v in self.table.items():
            left[i][j] = v
        self._left = left
        if check:
            self._validate()

    # -- element arithmetic -------------------------------------------------
    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        p = self.field.p
        left = self._left
        for i, a in x.items():
            row = left[i]
            if not row:
                continue
            for j, b in y.items():
                v = row.get(j)
                if v is not None:
                    axpy(out, a * b, v, p)
        return out

    def basis_vector(self, i: int) -> dict:
        return {i: self.field.one}

    def add(self, x: Mapping, y: Mapping) -> dict:
        out = dict(x)
        axpy(out, 1, y, self.field.p)
        return out

    def sub(self, x: Mapping, y: Mapping) -> dict:
        out = dict(x)
        axpy(out, -1 if self.field.p is None else self.field.p - 1, y, self.field.p)
        return out

    def scale(self, x: Mapping, c) -> dict:
        return scaled(x, c, self.field.p)

    def one(self) -> dict:
        return dict(self.unit)

    def grade_of(self, x: Mapping) -> int | None:
        """Grade of a homogeneous element; None if zero or inhomogeneous."""
        gs = {self.grades[i] for i in x}
        return gs.pop() if len(gs) == 1 else None

    def homogeneous_part(self, x: Mapping, g: int) -> dict:
        return {i: v for i, v in x.items() if self.grades[i] == g}

    @property
    def max_grade(self) -> int:
        return max(self.grades, default=0)

    def indices_of_grade(self, g: int) -> list[int]:
        return [i for i, h in enumerate(self.grades) if h == g]

    def fmt(self, x: Mapping) -> str:
        if not x:
            return "0"
        parts = []
        for i in sorted(x):
            c = self.field.fmt(x[i])
            parts.append(self.labels[i] if c == "1" else f"{c}*{self.labels[i]}")
        return " + ".join(parts)

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<GradedAlgebra{tag} dim={self.dim} over {self.field!r}>"

    # -- validation ---------------------------------------------------------
    def _validate(self) -> None:
        n = self.dim
        if any(g < 0 for g in self.grades):
            i = next(i for i, g in enumerate(self.grades) if g < 0)
            raise GradingViolation("negative grade", (i,))
        for (i, j), v in self.table.items():
            if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k in v):
                raise SpecParseError("structure constant index out of range", "mult")
            g = self.grades[i] + self.grades[j]
            for k in v:
                if self.grades[k] != g:
                    raise GradingViolation(
                        f"{self.labels[i]}*{self.labels[j]} has a component in grade {self.grades[k]}, expected {g}",
                        (i, j, k),
                    )
        for i in self.unit:
            if self.grades[i] != 0:
                raise GradingViolation("unit has a component outside grade 0", (i,))
        for i in range(n):
            b = self.basis_vector(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise BadUnit(f"unit law fails on {self.labels[i]}", (i,))
        self._check_associative()
        if self.idempotents is not None:
            self._check_idempotents()

    def _check_associative(self) -> None:
        n = self.dim
        left = self._left
        # (b_i b_j) b_k == b_i (b_j b_k); only triples with a nonzero side matter
        seen = set()
        for (i, j) in self.table:
            for k in range(n):
                seen.add((i, j, k))
        for (j, k) in self.table:
            for i in range(n):
                seen.add((i, j, k))
        for i, j, k in sorted(seen):
            lhs = self.mul(left[i].get(j, {}), {k: self.field.one})
            rhs = self.mul({i: self.field.one}, left[j].get(k, {}))
            if lhs != rhs:
                raise NonAssociative(
                    f"({self.labels[i]}*{self.labels[j]})*{self.labels[k]} != "
                    f"{self.labels[i]}*({self.labels[j]}*{self.labels[k]})",
                    (i, j, k),
                )

    def _check_idempotents(self) -> None:
        es = self.idempotents
        total: dict = {}
        for a, e in enumerate(es):
            if not e:
                raise BadIdempotents("zero idempotent", (a,))
            if any(self.grades[i] != 0 for i in e):
                raise BadIdempotents("idempotent not in grade 0", (a,))
            for b, f in enumerate(es):
                prod = self.mul(e, f)
                want = e if a == b else {}
                if prod != want:
                    what = "not idempotent" if a == b else "not orthogonal"
                    raise BadIdempotents(f"idempotents {a},{b} {what}", (a, b))
            axpy(total, 1, e, self.field.p)
        if total != self.unit:
            raise BadIdempotents("idempotents do not sum to 1", tuple(range(len(es))))

    # -- derived data (cached) ----------------------------------------------
    def radical(self) -> list[dict]:
        """Echelon basis of the Jacobson radical (homogeneous vectors)."""
        if "rad" not in self._cache:
            self._cache["rad"] = _compute_radical(self)
        return self._cache["rad"]

    def radical_echelon(self) -> Echelon:
        if "rad_ech" not in self._cache:
            self._cache["rad_ech"] = span_echelon(self.radical(), self.field)
        return self._cache["rad_ech"]

    def rad_generators(self) -> list[dict]:
        """Homogeneous elements whose classes form a basis of rad/rad^2."""
        if "rad_gens" not in self._cache:
            rad = self.radical()
            sq = span_echelon((self.mul(x, y) for x in rad for y in rad), self.field)
            gens = []
            for r in rad:
                if sq.add(r):
                    gens.append(r)
            self._cache["rad_gens"] = gens
        return self._cache["rad_gens"]

    def primitive_idempotents(self, seed: int = 0) -> list[dict]:
        if "prim" not in self._cache:
            es = self.idempotents
            if es is None:
                es = discover_idempotents(self, seed)
            self._check_split(es)
            self._cache["prim"] = es
        return self._cache["prim"]

    def _check_split(self, es: list[dict]) -> None:
        rad = self.radical_echelon()
        for a, e in enumerate(es):
            corner = span_echelon(
                (rad.reduce(self.mul(self.mul(e, {i: self.field.one}), e)) for i in range(self.dim)),
                self.field,
            )
            if len(corner) != 1:
                raise NotSplit(
                    f"e{a}(A/rad)e{a} has dimension {len(corner)}; idempotent not primitive or algebra not split"
                )

    def simple_classes(self) -> list[list[int]]:
        """Isomorphism classes of primitive idempotents, ordered by first occurrence."""
        if "classes" not in self._cache:
            es = self.primitive_idempotents()
            rad = self.radical_echelon()
            classes: list[list[int]] = []
            for a, e in enumerate(es):
                for cl in classes:
                    f = es[cl[0]]
                    if any(rad.reduce(self.mul(self.mul(e, {i: self.field.one}), f)) for i in range(self.dim)):
                        cl.append(a)
                        break
                else:
                    classes.append([a])
            self._cache["classes"] = classes
        return self._cache["classes"]

    def simple_labels(self) -> list[str]:
        n = len(self.simple_classes())
        if self.simple_names is not None and len(self.simple_names) == n:
            return list(self.simple_names)
        return [f"L{i}" for i in range(n)]

    def class_idempotents(self) -> list[dict]:
        """One primitive idempotent per simple class."""
        es = self.primitive_idempotents()
        return [es[cl[0]] for cl in self.simple_classes()]


# ---------------------------------------------------------------------------
# construction


def build_algebra(
    field: Field,
    grades: Sequence[int],
    mult: Iterable[tuple[int, int, int, object]] | Mapping[tuple[int, int], Mapping[int, object]],
    unit: Sequence | Mapping,
    labels: Sequence[str] | None = None,
    idempotents: Sequence[Sequence | Mapping] | None = None,
    radical_basis: Sequence[Sequence | Mapping] | None = None,
    poset: Sequence[tuple[int, int]] | None = None,
    simple_names: Sequence[str] | None = None,
    name: str | None = None,
) -> GradedAlgebra:
    """Validate and build an algebra from structure constants.

    ``mult`` is either sparse triplets ``(i, j, k, c)`` meaning
    ``b_i b_j`` has coefficient ``c`` on ``b_k``, or a prebuilt table.
    Vectors may be dense lists or sparse dicts.
    """
    dim = len(grades)
    if labels is None:
        labels = [f"b{i}" for i in range(dim)]
    if len(labels) != dim:
        raise SpecParseError(f"{len(labels)} labels for {dim} basis vectors", "labels")
    if isinstance(mult, Mapping):
        table = {k: dict(v) for k, v in mult.items()}
    else:
        table: dict = {}
        for t in mult:
            if len(t) != 4:
                raise SpecParseError(f"triplet {t!r} should be [i, j, k, coeff]", "mult")
            i, j, k, c = t
            for idx in (i, j, k):
                if not isinstance(idx, int) or not 0 <= idx < dim:
                    raise SpecParseError(f"index {idx!r} out of range", "mult")
            slot = table.setdefault((i, j), {})
            slot[k] = field(slot.get(k, 0)) + field(c)
    return GradedAlgebra(
        field,
        labels,
        table,
        _as_sparse(unit, dim),
        grades,
        idempotents=None if idempotents is None else [_as_sparse(e, dim) for e in idempotents],
        radical_basis=None if radical_basis is None else [_as_sparse(r, dim) for r in radical_basis],
        poset=poset,
        simple_names=simple_names,
        name=name,
    )


def _as_sparse(v, dim: int) -> dict:
    if isinstance(v, Mapping):
        return dict(v)
    v = list(v)
    if len(v) != dim:
        raise SpecParseError(f"vector of length {len(v)}, expected {dim}")
    return {i: x for i, x in enumerate(v)}


def regrade(a: GradedAlgebra, grades: Sequence[int], name: str | None = None) -> GradedAlgebra:
    """Same algebra and basis, new grading (validated)."""
    return GradedAlgebra(
        a.field, a.labels, a.table, a.unit, grades,
        idempotents=a.idempotents, radical_basis=a._given_radical, poset=a.poset,
        simple_names=a.simple_names, name=name or a.name,
    )


def forget_grading(a: GradedAlgebra) -> GradedAlgebra:
    """The same algebra concentrated in grade 0 (radical and idempotents kept)."""
    if "flat" not in a._cache:
        a._cache["flat"] = GradedAlgebra(
            a.field, a.labels, a.table, a.unit, [0] * a.dim,
            idempotents=a.primitive_idempotents(), radical_basis=a.radical(), poset=a.poset,
            simple_names=a.simple_names, name=a.name, check=False,
        )
    return a._cache["flat"]


def opposite(a: GradedAlgebra) -> GradedAlgebra:
    table = {(j, i): v for (i, j), v in a.table.items()}
    return GradedAlgebra(
        a.field, a.labels, table, a.unit, a.grades,
        idempotents=a.idempotents, radical_basis=a._given_radical or a._cache.get("rad"),
        poset=a.poset, simple_names=a.simple_names,
        name=f"{a.name}^op" if a.name else None, check=False,
    )


def grade_component(a: GradedAlgebra, i: int) -> ExactMatrix:
    """Basis of A_i as rows of an ExactMatrix (empty for negative i)."""
    rows = [{k: a.field.one} for k in a.indices_of_grade(i)] if i >= 0 else []
    return ExactMatrix.from_vectors(rows, a.dim, a.field)


def degree_zero_part(a: GradedAlgebra) -> tuple[GradedAlgebra, list[int]]:
    """The subalgebra A_0 (grade-0 basis vectors) and the index embedding."""
    idx = a.indices_of_grade(0)
    pos = {k: n for n, k in enumerate(idx)}
    table = {}
    for (i, j), v in a.table.items():
        if i in pos and j in pos:
            table[(pos[i], pos[j])] = {pos[k]: c for k, c in v.items()}
    es = None
    if a.idempotents is not None:
        es = [{pos[k]: c for k, c in e.items()} for e in a.idempotents]
    rad = None
    if a._given_radical is not None or "rad" in a._cache:
        src = a._given_radical if a._given_radical is not None else a._cache["rad"]
        r0 = [{pos[k]: c for k, c in r.items() if k in pos} for r in src]
        rad = [r for r in span_echelon(r0, a.field).basis()]
    sub = GradedAlgebra(
        a.field, [a.labels[k] for k in idx], table, {pos[k]: c for k, c in a.unit.items()},
        [0] * len(idx), idempotents=es, radical_basis=rad, poset=a.poset,
        simple_names=a.simple_names, name=f"{a.name}_0" if a.name else None, check=False,
    )
    return sub, idx


def quotient(a: GradedAlgebra, ideal: Iterable[Mapping], name: str | None = None) -> tuple[GradedAlgebra, Echelon, list[int]]:
    """A/I for a homogeneous two-sided ideal spanned by ``ideal``.

    Returns the quotient, the echelon form of I (its ``reduce`` is the
    normal form) and the surviving basis indices of A.
    """
    ech = span_echelon(ideal, a.field)
    keep = [i for i in range(a.dim) if i not in ech.rows]
    pos = {k: n for n, k in enumerate(keep)}

    def proj(v):
        return {pos[k]: c for k, c in ech.reduce(v).items()}

    table = {}
    for i in keep:
        for j in keep:
            v = a._left[i].get(j)
            if v:
                w = proj(v)
                if w:
                    table[(pos[i], pos[j])] = w
    es = None
    if a.idempotents is not None:
        es = [w for w in (proj(e) for e in a.idempotents) if w]
    q = GradedAlgebra(
        a.field, [a.labels[k] for k in keep], table, proj(a.unit), [a.grades[k] for k in keep],
        idempotents=es, name=name, check=False,
    )
    return q, ech, keep


# ---------------------------------------------------------------------------
# quivers


class Arrow(NamedTuple):
    source: str
    target: str
    label: str
    grade: int = 1


@dataclass
class QuiverPresentation:
    """A quiver with arrow grades and homogeneous relations.

    Paths compose right to left: the path ``"b.a"`` is ``a`` followed by
    ``b``.  Relations are lists of ``(coefficient, path)`` pairs.
    """

    vertices: list[str]
    arrows: list[Arrow]
    relations: list[list[tuple[object, str]]] = dc_field(default_factory=list)
    truncation_degree: int = 20
    field: Field = QQ
    poset: list[tuple[str, str]] | None = None
    name: str | None = None


def _parse_path(s, arrows: dict) -> tuple[str, ...]:
    parts = tuple(s) if isinstance(s, (list, tuple)) else tuple(p for p in str(s).split(".") if p)
    if not parts:
        raise SpecParseError("empty path in relation", "relations")
    for x, y in zip(parts, parts[1:]):
        if x not in arrows or y not in arrows:
            break
        if arrows[x].source != arrows[y].target:
            raise SpecParseError(f"path {'.'.join(parts)} is not composable", "relations")
    for x in parts:
        if x not in arrows:
            raise SpecParseError(f"unknown arrow {x!r}", "relations")
    return parts


def from_quiver(q: QuiverPresentation) -> GradedAlgebra:
    """Path algebra modulo relations, expanded grade by grade."""
    field = q.field
    verts = [str(v) for v in q.vertices]
    if len(set(verts)) != len(verts):
        raise SpecParseError("duplicate vertex names", "quiver.vertices")
    arrows: dict[str, Arrow] = {}
    for ar in q.arrows:
        ar = Arrow(str(ar[0]), str(ar[1]), str(ar[2]), int(ar[3]) if len(ar) > 3 else 1)
        if ar.source not in verts or ar.target not in verts:
            raise SpecParseError(f"arrow {ar.label} has an unknown endpoint", "quiver.arrows")
        if ar.label in arrows or ar.label in verts:
            raise SpecParseError(f"duplicate label {ar.label}", "quiver.arrows")
        if ar.grade < 1:
            raise GradingViolation(f"arrow {ar.label} must have grade >= 1", (ar.label,))
        arrows[ar.label] = ar

    def src(p):
        return arrows[p[-1]].source

    def tgt(p):
        return arrows[p[0]].target

    def pgrade(p):
        return sum(arrows[x].grade for x in p)

    rels_by_grade: dict[int, list[list[tuple[object, tuple]]]] = {}
    for n, rel in enumerate(q.relations):
        terms = [(field(c), _parse_path(pth, arrows)) for c, pth in rel]
        terms = [(c, p) for c, p in terms if c]
        if not terms:
            continue
        gs = {pgrade(p) for _, p in terms}
        if len(gs) != 1:
            raise GradingViolation(f"relation {n} is not homogeneous", (n,))
        ends = {(src(p), tgt(p)) for _, p in terms}
        if len(ends) != 1:
            raise SpecParseError(f"relation {n} mixes paths with different endpoints", "relations")
        rels_by_grade.setdefault(gs.pop(), []).append(terms)

    gmax = max((a.grade for a in arrows.values()), default=1)
    by_grade_arrows: dict[int, list[Arrow]] = {}
    for a in arrows.values():
        by_grade_arrows.setdefault(a.grade, []).append(a)

    paths: dict[int, list[tuple]] = {}
    index: dict[int, dict[tuple, int]] = {}
    ideal: dict[int, Echelon] = {}
    basis: dict[int, list[tuple]] = {}
    zero_run = 0
    g = 0
    while True:
        g += 1
        if g > q.truncation_degree:
            raise NotFiniteDimensional(
                f"basis paths persist up to grade {q.truncation_degree}; raise truncation_degree if the algebra is finite"
            )
        cur = set()
        for h, ars in by_grade_arrows.items():
            if h == g:
                cur.update((a.label,) for a in ars)
            elif h < g:
                for p in paths.get(g - h, ()):
                    for a in ars:
                        if a.source == tgt(p):
                            cur.add((a.label,) + p)
        plist = sorted(cur)
        paths[g] = plist
        idx = {p: n for n, p in enumerate(plist)}
        index[g] = idx
        ech = Echelon(field)
        for terms in rels_by_grade.get(g, []):
            ech.add({idx[p]: c for c, p in terms})
        for a in arrows.values():
            lower = ideal.get(g - a.grade)
            if lower is None:
                continue
            lidx = paths[g - a.grade]
            for r in lower.basis():
                v = {}
                for k, c in r.items():
                    p = lidx[k]
                    if tgt(p) == a.source:
                        v[idx[(a.label,) + p]] = c
                if v:
                    ech.add(v)
                w = {}
                for k, c in r.items():
                    p = lidx[k]
                    if src(p) == a.target:
                        w[idx[p + (a.label,)]] = c
                if w:
                    ech.add(w)
        ideal[g] = ech
        basis[g] = [p for n, p in enumerate(plist) if n not in ech.rows]
        if basis[g]:
            zero_run = 0
        else:
            zero_run += 1
            if zero_run >= gmax:
                break

    labels = [f"e{v}" for v in verts]
    grades = [0] * len(verts)
    bindex: dict[tuple, int] = {}
    for h in sorted(basis):
        for p in basis[h]:
            bindex[p] = len(labels)
            labels.append(".".join(p))
            grades.append(h)
    nv = len(verts)

    def normal_form(p: tuple) -> dict:
        h = pgrade(p)
        if h not in ideal:
            return {}
        red = ideal[h].reduce({index[h][p]: field.one})
        return {bindex[paths[h][k]]: c for k, c in red.items()}

    bpaths = {i: p for p, i in bindex.items()}
    table: dict = {}
    one = field.one
    for vi, v in enumerate(verts):
        table[(vi, vi)] = {vi: one}
        for i, p in bpaths.items():
            if tgt(p) == v:
                table[(vi, i)] = {i: one}
            if src(p) == v:
                table[(i, vi)] = {i: one}
    for i, p in bpaths.items():
        for j, r in bpaths.items():
            if src(p) == tgt(r):
                nf = normal_form(p + r)
                if nf:
                    table[(i, j)] = nf
    unit = {vi: one for vi in range(nv)}
    idem = [{vi: one} for vi in range(nv)]
    rad = [{i: one} for i in range(nv, len(labels))]
    poset = None
    if q.poset is not None:
        pos = {v: n for n, v in enumerate(verts)}
        try:
            poset = [(pos[str(x)], pos[str(y)]) for x, y in q.poset]
        except KeyError as exc:
            raise SpecParseError(f"poset names unknown vertex {exc}", "poset") from None
    alg = GradedAlgebra(
        field, labels, table, unit, grades, idempotents=idem, radical_basis=rad,
        poset=poset, simple_names=verts, name=q.name, check=False,
    )
    alg._cache["quiver"] = q
    return alg


# ---------------------------------------------------------------------------
# radical


def _trace_form_radical(a: GradedAlgebra, idx: list[int]) -> list[dict]:
    """Radical of the subalgebra spanned by ``idx`` via its trace form."""
    field = a.field
    pos = {k: n for n, k in enumerate(idx)}
    # trace of left multiplication by each basis vector of the subalgebra
    tr = {}
    for k in idx:
        t = field.zero
        for j in idx:
            v = a._left[k].get(j)
            if v:
                t += v.get(j, 0)
        if field.p is not None:
            t %= field.p
        tr[k] = t
    # Gram matrix T[i][j] = tr(L_{b_i b_j})
    rows = []
    for i in idx:
        row = {}
        for j in idx:
            v = a._left[i].get(j)
            if v:
                s = sum((c * tr[k] for k, c in v.items()), field.zero)
                if field.p is not None:
                    s %= field.p
                if s:
                    row[pos[j]] = s
        rows.append(row)
    # radical = left kernel of T (T is symmetric)
    ker = kernel_vectors(rows, field)
    return [{idx[n]: c for n, c in v.items()} for v in ker]


def _compute_radical(a: GradedAlgebra) -> list[dict]:
    field = a.field
    if a._given_radical is not None:
        return span_echelon(a._given_radical, field).basis()
    idx0 = a.indices_of_grade(0)
    if field.p is not None and field.p <= len(idx0):
        raise RadicalUnavailable(
            f"no radical algorithm for F_{field.p} with dim A_0 = {len(idx0)} >= p; supply radical_basis"
        )
    r0 = _trace_form_radical(a, idx0)
    pos = [{i: field.one} for i in range(a.dim) if a.grades[i] > 0]
    return span_echelon(r0 + pos, field).basis()


@dataclass
class RadicalSeries:
    layers: list[ExactMatrix]

    @property
    def length(self) -> int:
        """First n with rad^n A = 0."""
        return next(n for n, m in enumerate(self.layers) if m.nrows == 0)

    def dims(self) -> list[int]:
        return [m.nrows for m in self.layers]


def radical_series(a: GradedAlgebra) -> RadicalSeries:
    """Layers rad^0 A = A, rad A, rad^2 A, ..., ending with the zero layer."""
    if "radseries" in a._cache:
        return a._cache["radseries"]
    field = a.field
    layers = [ExactMatrix.identity(a.dim, field)]
    rad = a.radical()
    cur = rad
    while True:
        layers.append(ExactMatrix.from_vectors(cur, a.dim, field))
        if not cur:
            break
        nxt = span_echelon((a.mul(r, x) for r in rad for x in cur), field).basis()
        if len(nxt) >= len(cur):
            raise RadicalUnavailable("supplied radical is not nilpotent")
        cur = nxt
    rs = RadicalSeries(layers)
    a._cache["radseries"] = rs
    return rs


# ---------------------------------------------------------------------------
# idempotents


def _poly_idempotents(a: GradedAlgebra, x: dict, idx0: list[int]) -> list[dict] | None:
    """Split 1 along the minimal polynomial of ``x``; None if it does not split."""
    import sympy

    field = a.field
    powers = [a.one()]
    ech = Echelon(field, track=True)
    ech.add_tracked(powers[0], 0)
    while True:
        nxt = a.mul(powers[-1], x)
        ok, combo = ech.add_tracked(nxt, len(powers))
        powers.append(nxt)
        if not ok:
            break
    # combo gives sum c_i x^i = 0 (coefficient 1 on the top power)
    deg = len(powers) - 1
    coeffs = [combo.get(i, 0) for i in range(deg + 1)]
    t = sympy.Symbol("t")
    if field.p is None:
        dom = sympy.QQ
        poly = sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)], t, domain=dom)
    else:
        dom = sympy.GF(field.p)
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], t, modulus=field.p)
    factors = poly.factor_list()[1]
    if any(f.degree() != 1 for f, _ in factors):
        return None
    blocks = [f**m for f, m in factors]
    es = []
    for n, b in enumerate(blocks):
        rest = sympy.Poly(1, t, domain=poly.domain)
        for m2, c in enumerate(blocks):
            if m2 != n:
                rest = rest * c
        # s*rest + u*b = 1  =>  e = s*rest is 1 mod b and 0 mod the others
        s, _, _ = rest.gcdex(b)
        e_poly = (s * rest).rem(poly)
        e = {}
        for (k,), c in e_poly.terms():
            c = field(_sym_to_fraction(c, field))
            axpy(e, c, powers[k], field.p)
        es.append(e)
    return es


def _sym_to_fraction(c, field: Field):
    from fractions import Fraction

    if field.p is not None:
        return int(c) % field.p
    import sympy

    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def discover_idempotents(a: GradedAlgebra, seed: int = 0) -> list[dict]:
    """Primitive idempotents of A_0 when A_0/rad A_0 is commutative and split."""
    field = a.field
    idx0 = a.indices_of_grade(0)
    rad = a.radical_echelon()
    # commutativity of A_0 modulo radical
    for i in idx0:
        for j in idx0:
            bi, bj = {i: field.one}, {j: field.one}
            if rad.reduce(a.sub(a.mul(bi, bj), a.mul(bj, bi))):
                raise MissingIdempotents(
                    "A_0/rad is not commutative; supply a complete set of primitive idempotents"
                )
    rng = random.Random(seed)
    bound = field.p if field.p is not None else 1000
    for _ in range(8):
        x = {i: field(rng.randrange(bound)) for i in idx0}
        x = {i: c for i, c in x.items() if c}
        es = _poly_idempotents(a, x, idx0)
        if es is None:
            raise NotSplit("A_0/rad is not split over the base field")
        try:
            a._check_split(es)
        except NotSplit:
            continue
        return es
    raise MissingIdempotents("could not separate the simple summands of A_0/rad")


def lift_idempotent(a: GradedAlgebra, x: Mapping, max_iter: int = 64) -> dict:
    """Lift an idempotent modulo a nilpotent ideal via x -> 3x^2 - 2x^3."""
    field = a.field
    x = dict(x)
    three = field(3)
    two = field(2)
    for _ in range(max_iter):
        x2 = a.mul(x, x)
        if x2 == x:
            return x
        x3 = a.mul(x2, x)
        nxt = scaled(x2, three, field.p)
        axpy(nxt, -two if field.p is None else (-two) % field.p, x3, field.p)
        x = nxt
    raise ValueError("idempotent lifting did not converge")
