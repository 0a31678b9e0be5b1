"""Graded Morita calculus: matrix inflation, full idempotents, corners, F and F†.

For a full idempotent e_0 in B_0 the corner A = e_0 B e_0 is graded
Morita equivalent to B through

    F(N) = e_0 N                    (B-modules -> A-modules)
    F†(Y) = (B e_0 (x)_k Y) / R     (A-modules -> B-modules)

where R is spanned by s t (x) y - s (x) t y.  Both are materialised as
concrete graded modules so their round trips can be checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .algcore import GradedAlgebra
from .errors import NotFull, NotGradeZero, NotIdempotent
from .exactla import Coordinates, ExactMatrix, axpy, inverse, span_echelon
from .gradmod import (
    GradedModule,
    find_isomorphism,
    projective_module,
    quotient_module,
    regular_module,
    simple_module,
    simples_and_projectives,
    submodule,
)


def inflate(b: GradedAlgebra, n: int) -> GradedAlgebra:
    """M_n(B) with grade(E_ij (x) x) = grade(x)."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    if n == 1:
        return b
    d = b.dim
    f = b.field

    def idx(i, j, k):
        return (i * n + j) * d + k

    table = {}
    for (x, y), v in b.table.items():
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    table[(idx(i, j, x), idx(j, l, y))] = {idx(i, l, k): c for k, c in v.items()}
    unit = {idx(i, i, k): c for i in range(n) for k, c in b.unit.items()}
    labels = [f"E{i + 1}{j + 1}*{b.labels[k]}" for i in range(n) for j in range(n) for k in range(d)]
    grades = [b.grades[k] for i in range(n) for j in range(n) for k in range(d)]
    idems = None
    try:
        es = b.primitive_idempotents()
        idems = [{idx(i, i, k): c for k, c in e.items()} for i in range(n) for e in es]
    except Exception:
        idems = None
    rad = [{idx(i, j, k): c for k, c in r.items()} for i in range(n) for j in range(n) for r in b.radical()]
    out = GradedAlgebra(
        f, labels, table, unit, grades, idempotents=idems, radical_basis=rad,
        poset=b.poset, simple_names=b.simple_names,
        name=f"M{n}({b.name})" if b.name else None, check=False,
    )
    return out


def _check_idempotent(b: GradedAlgebra, e: Mapping) -> dict:
    e = {k: b.field(c) for k, c in e.items() if b.field(c)}
    if b.mul(e, e) != e:
        raise NotIdempotent(f"{b.fmt(e)} is not idempotent")
    return e


def _span_beb(b: GradedAlgebra, e: Mapping):
    one = b.field.one
    be = span_echelon((b.mul({i: one}, e) for i in range(b.dim)), b.field).basis()
    return span_echelon((b.mul(x, {j: one}) for x in be for j in range(b.dim)), b.field)


def is_full_idempotent(b: GradedAlgebra, e: Mapping) -> bool:
    e = _check_idempotent(b, e)
    return len(_span_beb(b, e)) == b.dim


def _head_multiplicities(b: GradedAlgebra, e: Mapping) -> list[int]:
    """Multiplicity of each simple in the head of B e."""
    one = b.field.one
    rad = b.radical()
    out = []
    for s in simples_and_projectives(b):
        full = span_echelon((b.mul(b.mul(s.idempotent, {i: one}), e) for i in range(b.dim)), b.field)
        radp = span_echelon((b.mul(b.mul(s.idempotent, r), e) for r in rad), b.field)
        out.append(len(full) - len(radp))
    return out


def grade0_idempotent(b: GradedAlgebra, e: Mapping) -> dict:
    """The grade-0 component e_0 of an idempotent e; B e_0 and B e have the same head."""
    e = _check_idempotent(b, e)
    e0 = b.homogeneous_part(e, 0)
    if b.mul(e0, e0) != e0:
        raise NotIdempotent("grade-0 component is not idempotent (toolkit bug: it always is)")
    one = b.field.one
    d_e = len(span_echelon((b.mul({i: one}, e) for i in range(b.dim)), b.field))
    d_e0 = len(span_echelon((b.mul({i: one}, e0) for i in range(b.dim)), b.field))
    if d_e != d_e0 or _head_multiplicities(b, e) != _head_multiplicities(b, e0):
        raise ArithmeticError("B e_0 and B e differ (toolkit bug)")
    return e0


# ---------------------------------------------------------------------------
# corner algebra and the functor pair


@dataclass
class Corner:
    big: GradedAlgebra
    e0: dict
    algebra: GradedAlgebra
    embed: list[dict]  # corner basis element -> element of B
    coords: Coordinates  # element of e0 B e0 -> corner coordinates

    def F(self, n: GradedModule) -> GradedModule:
        return apply_F(self, n)

    def F_dagger(self, y: GradedModule) -> GradedModule:
        return apply_F_dagger(self, y)


def _corner_idempotents(b: GradedAlgebra, e0: dict, basis: list[dict], coords: Coordinates) -> tuple[list[dict], list[int]]:
    """Primitive idempotents of e0 B e0 (as B-elements) and their simple classes.

    Picks f = sum of primitive idempotents of B with the head of B f equal to
    that of B e0, finds a degree-0 isomorphism B e0 -> B f (right
    multiplication by v, inverse by u) and conjugates: v f_i u.
    """
    sp = simples_and_projectives(b)
    es = b.primitive_idempotents()
    classes = b.simple_classes()
    mult = _head_multiplicities(b, e0)
    chosen, cls = [], []
    for lam, m in enumerate(mult):
        if m > len(classes[lam]):
            raise ArithmeticError("not enough primitive idempotents in a class")
        for k in classes[lam][:m]:
            chosen.append(es[k])
            cls.append(lam)
    f_ = {}
    for x in chosen:
        axpy(f_, 1, x, b.field.p)
    if f_ == e0:
        return chosen, cls
    one = b.field.one
    reg = regular_module(b)
    be0, _ = submodule(reg, [b.mul({i: one}, e0) for i in range(b.dim)])
    bf, _ = submodule(reg, [b.mul({i: one}, f_) for i in range(b.dim)])
    iso = find_isomorphism(be0, bf, 0)
    if iso is None:
        raise ArithmeticError("no graded isomorphism B e0 -> B f found")
    v = bf._embed(_apply(iso, be0._coords(e0), b))
    mat = ExactMatrix.from_vectors(iso, bf.dim, b.field)
    inv = inverse(mat)
    fy = bf._coords(f_)
    x: dict = {}
    for k, c in fy.items():
        axpy(x, c, inv.row(k), b.field.p)
    u = be0._embed(x)
    del sp
    return [b.mul(b.mul(v, fi), u) for fi in chosen], cls


def _apply(images: list[dict], vec: Mapping, b: GradedAlgebra) -> dict:
    out: dict = {}
    for k, c in vec.items():
        axpy(out, c, images[k], b.field.p)
    return out


def corner(b: GradedAlgebra, e0: Mapping) -> Corner:
    e0 = _check_idempotent(b, e0)
    if b.grade_of(e0) != 0:
        raise NotGradeZero(f"{b.fmt(e0)} is not homogeneous of grade 0")
    if not is_full_idempotent(b, e0):
        raise NotFull(f"B {b.fmt(e0)} B is a proper ideal")
    f = b.field
    one = f.one
    basis = span_echelon((b.mul(b.mul(e0, {i: one}), e0) for i in range(b.dim)), f).basis()
    coords = Coordinates(basis, f)
    table = {}
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            prod = b.mul(x, y)
            if prod:
                table[(i, j)] = coords(prod)
    grades = [b.grade_of(x) for x in basis]
    labels = [b.labels[min(x)] for x in basis]
    if len(set(labels)) != len(labels):
        labels = [f"c{i}" for i in range(len(basis))]
    idems, cls = _corner_idempotents(b, e0, basis, coords)
    rad = [w for w in (coords(b.mul(b.mul(e0, r), e0)) for r in b.radical()) if w]
    names = b.simple_labels()
    a = GradedAlgebra(
        f, labels, table, coords(e0), grades, idempotents=[coords(x) for x in idems],
        radical_basis=rad, poset=b.poset, simple_names=names,
        name=f"corner({b.name})" if b.name else None, check=False,
    )
    if [cls[cl[0]] for cl in a.simple_classes()] != list(range(len(names))):
        raise ArithmeticError("corner simple classes are not in the order of B's (toolkit bug)")
    return Corner(b, e0, a, basis, coords)


def apply_F(c: Corner, n: GradedModule) -> GradedModule:
    """F(N) = e0 N with inherited grades, as a module over the corner."""
    f = n.field
    vecs = [n.act(c.e0, {k: f.one}) for k in range(n.dim)]
    ech = span_echelon(vecs, f)
    basis = ech.basis()
    pivots = ech.pivots
    pos = {p: i for i, p in enumerate(pivots)}
    grades = [n.grades[p] for p in pivots]

    def coords(w):
        return {pos[p]: x for p, x in w.items() if p in pos}

    def actfn(i, k):
        return coords(n.act(c.embed[i], basis[k]))

    return GradedModule(c.algebra, grades, actfn, name=f"F({n.name})" if n.name else None)


def apply_F_dagger(c: Corner, y: GradedModule) -> GradedModule:
    """F†(Y) = (B e0 (x) Y)/R, graded by total degree, as a B-module."""
    b = c.big
    f = b.field
    one = f.one
    be = span_echelon((b.mul({i: one}, c.e0) for i in range(b.dim)), f).basis()
    bcoords = Coordinates(be, f)
    ny = y.dim

    def pair(t, k):
        return t * ny + k

    grades = [b.grade_of(s) + y.grades[k] for s in be for k in range(ny)]

    class _Tensor:
        algebra = b
        dim = len(be) * ny

        @staticmethod
        def index_grade(i):
            return grades[i]

        @staticmethod
        def act(x, v):
            out: dict = {}
            for idx, cv in v.items():
                t, k = divmod(idx, ny)
                w = bcoords(b.mul(x, be[t]))
                for t2, cw in w.items():
                    axpy(out, cv * cw, {pair(t2, k): one}, f.p)
            return out

    neg = (lambda z: -z) if f.p is None else (lambda z: (-z) % f.p)
    rels = []
    for t, s in enumerate(be):
        for ai, alpha in enumerate(c.embed):
            st = bcoords(b.mul(s, alpha))
            for k in range(ny):
                v: dict = {}
                for t2, cw in st.items():
                    axpy(v, cw, {pair(t2, k): one}, f.p)
                for k2, cy in y.image(ai, k).items():
                    axpy(v, neg(cy), {pair(t, k2): one}, f.p)
                if v:
                    rels.append(v)
    mod, _, _ = quotient_module(_Tensor, rels, name=f"Fdag({y.name})" if y.name else None)
    return mod


# ---------------------------------------------------------------------------
# verification


@dataclass
class EquivalenceReport:
    checks: list[dict]

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks}


def _pure(m: GradedModule):
    gs = set(m.grades)
    return gs.pop() if len(gs) == 1 else None


def verify_equivalence_pair(b: GradedAlgebra, e0: Mapping, test_modules: Sequence[GradedModule] | None = None,
                            corner_modules: Sequence[GradedModule] | None = None,
                            c: Corner | None = None) -> EquivalenceReport:
    """Round trips F† F N ≅ N and F F† Y ≅ Y as graded modules; purity preserved."""
    if c is None:
        c = corner(b, e0)
    if test_modules is None:
        test_modules = []
        for lam in range(len(simples_and_projectives(b))):
            test_modules += [simple_module(b, lam), projective_module(b, lam)]
    if corner_modules is None:
        a = c.algebra
        corner_modules = []
        for lam in range(len(simples_and_projectives(a))):
            corner_modules += [simple_module(a, lam), projective_module(a, lam)]
    checks = []
    for n in test_modules:
        fn = apply_F(c, n)
        back = apply_F_dagger(c, fn)
        ok = find_isomorphism(n, back, 0) is not None
        pure = _pure(n)
        if pure is not None:
            ok = ok and _pure(fn) in (pure, None if fn.dim == 0 else pure)
        checks.append({"direction": "Fdag(F(N)) ~ N", "module": n.name, "dim": n.dim, "ok": ok})
    for y in corner_modules:
        fy = apply_F_dagger(c, y)
        back = apply_F(c, fy)
        ok = find_isomorphism(y, back, 0) is not None
        pure = _pure(y)
        if pure is not None:
            ok = ok and _pure(fy) == pure
        checks.append({"direction": "F(Fdag(Y)) ~ Y", "module": y.name, "dim": y.dim, "ok": ok})
    return EquivalenceReport(checks)
