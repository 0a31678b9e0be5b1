"""Graded modules, minimal graded projective resolutions and graded ext.

Modules are left modules with homogeneous bases.  A module is backed
either by explicit action matrices or by a subspace/quotient of another
module; in every case ``act(x, v)`` gives the action of an algebra element
on a module element (both sparse dicts).

Sums of shifted indecomposable projectives ``P(l)<r> = A e_l <r>`` live
inside a free module ``A^m``: an element is stored with index
``k * dim A + j`` for coordinate ``j`` of slot ``k``.  The A-action is then
plain multiplication in each slot.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Mapping, Sequence

from .algcore import GradedAlgebra, forget_grading
from .exactla import Echelon, ExactMatrix, Field, axpy, kernel_vectors, rank_of, scaled, span_echelon


# ---------------------------------------------------------------------------
# modules


class GradedModule:
    """A finite-dimensional graded left module.

    ``actfn(i, k)`` returns the image of basis vector ``k`` under the
    algebra basis element ``b_i``; results are cached.
    """

    def __init__(self, algebra: GradedAlgebra, grades: Sequence[int], actfn: Callable[[int, int], dict],
                 direct: Callable[[Mapping, Mapping], dict] | None = None, name: str | None = None):
        self.algebra = algebra
        self.grades = tuple(int(g) for g in grades)
        self.dim = len(self.grades)
        self._actfn = actfn
        self._direct = direct
        self._cache: dict[tuple[int, int], dict] = {}
        self.name = name

    @property
    def field(self) -> Field:
        return self.algebra.field

    def image(self, i: int, k: int) -> dict:
        key = (i, k)
        v = self._cache.get(key)
        if v is None:
            v = self._actfn(i, k)
            self._cache[key] = v
        return v

    def act(self, x: Mapping, v: Mapping) -> dict:
        if self._direct is not None:
            return self._direct(x, v)
        p = self.field.p
        out: dict = {}
        for i, a in x.items():
            for k, c in v.items():
                axpy(out, a * c, self.image(i, k), p)
        return out

    def action_matrix(self, i: int) -> ExactMatrix:
        """Row ``k`` is the image of basis vector ``k`` under ``b_i``."""
        return ExactMatrix.from_vectors([self.image(i, k) for k in range(self.dim)], self.dim, self.field)

    def index_grade(self, k: int) -> int:
        return self.grades[k]

    def grade_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.grades:
            out[g] = out.get(g, 0) + 1
        return dict(sorted(out.items()))

    def indices_of_grade(self, g: int) -> list[int]:
        return [k for k, h in enumerate(self.grades) if h == g]

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<GradedModule{tag} dim={self.dim} grades={self.grade_dims()}>"

    def check(self) -> None:
        """Exhaustively verify the module axioms and the grading."""
        a = self.algebra
        one = a.one()
        for k in range(self.dim):
            e = {k: self.field.one}
            if self.act(one, e) != e:
                raise ValueError(f"unit does not act as identity on basis vector {k}")
            for i in range(a.dim):
                img = self.image(i, k)
                for m in img:
                    if self.grades[m] != self.grades[k] + a.grades[i]:
                        raise ValueError(f"b_{i} maps grade {self.grades[k]} to grade {self.grades[m]}")
        for (i, j), prod in a.table.items():
            for k in range(self.dim):
                lhs = self.act(prod, {k: self.field.one})
                rhs = self.act({i: self.field.one}, self.image(j, k))
                if lhs != rhs:
                    raise ValueError(f"module axiom fails for basis triple ({i}, {j}, {k})")
        for i in range(a.dim):
            for j in range(a.dim):
                if (i, j) not in a.table:
                    for k in range(self.dim):
                        if self.act({i: self.field.one}, self.image(j, k)):
                            raise ValueError(f"b_{i} b_{j} = 0 but acts nontrivially")


def explicit_module(algebra: GradedAlgebra, grades: Sequence[int], images: Mapping[int, Sequence[Mapping]],
                    name: str | None = None) -> GradedModule:
    """Module from explicit action: ``images[i][k]`` = b_i applied to basis vector k."""
    f = algebra.field
    imgs = {i: [{m: f(c) for m, c in v.items() if f(c)} for v in rows] for i, rows in images.items()}

    def actfn(i, k):
        rows = imgs.get(i)
        return dict(rows[k]) if rows is not None else {}

    return GradedModule(algebra, grades, actfn, name=name)


class FreeModule:
    """``A<r_0> + ... + A<r_{m-1}>`` with slot-wise multiplication."""

    def __init__(self, algebra: GradedAlgebra, shifts: Sequence[int]):
        self.algebra = algebra
        self.shifts = list(shifts)
        self.n = algebra.dim
        self.dim = self.n * len(self.shifts)

    @property
    def field(self) -> Field:
        return self.algebra.field

    def index_grade(self, idx: int) -> int:
        k, j = divmod(idx, self.n)
        return self.algebra.grades[j] + self.shifts[k]

    def split(self, v: Mapping) -> dict[int, dict]:
        out: dict[int, dict] = {}
        n = self.n
        for idx, c in v.items():
            k, j = divmod(idx, n)
            out.setdefault(k, {})[j] = c
        return out

    def join(self, parts: Mapping[int, Mapping]) -> dict:
        n = self.n
        return {k * n + j: c for k, comp in parts.items() for j, c in comp.items()}

    def act(self, x: Mapping, v: Mapping) -> dict:
        a = self.algebra
        out = {}
        for k, comp in self.split(v).items():
            w = a.mul(x, comp)
            for j, c in w.items():
                out[k * self.n + j] = c
        return out

    def right_mul_slot(self, v: Mapping, k: int, x: Mapping) -> dict:
        return self.join({k: self.algebra.mul(v, x)})


def submodule(ambient, vectors, name: str | None = None, closed: bool = True) -> tuple[GradedModule, Echelon]:
    """Module on the span of ``vectors`` (homogeneous) inside ``ambient``.

    With ``closed=False`` the span is first closed under the action.
    """
    alg = ambient.algebra
    ech = span_echelon(vectors, alg.field)
    if not closed:
        gens = _algebra_generators(alg)
        todo = ech.basis()
        while todo:
            nxt = []
            for v in todo:
                for g in gens:
                    w = ambient.act(g, v)
                    r = ech.reduce(w)
                    if r and ech.add(r):
                        nxt.append(r)
            todo = nxt
    basis = ech.basis()
    pivots = ech.pivots
    pos = {c: n for n, c in enumerate(pivots)}
    grades = [ambient.index_grade(c) for c in pivots]

    def coords(w):
        return {pos[c]: x for c, x in w.items() if c in pos}

    def embed(v):
        out: dict = {}
        for k, c in v.items():
            axpy(out, c, basis[k], alg.field.p)
        return out

    def actfn(i, k):
        return coords(ambient.act({i: alg.field.one}, basis[k]))

    def direct(x, v):
        return coords(ambient.act(x, embed(v)))

    mod = GradedModule(alg, grades, actfn, direct, name=name)
    mod._embed = embed
    mod._coords = coords
    return mod, ech


def quotient_module(ambient, sub_vectors, name: str | None = None) -> tuple[GradedModule, Echelon, list[int]]:
    """``ambient / span(sub_vectors)``; basis = ambient indices off the pivots."""
    alg = ambient.algebra
    ech = span_echelon(sub_vectors, alg.field)
    keep = [c for c in range(ambient.dim) if c not in ech.rows]
    pos = {c: n for n, c in enumerate(keep)}
    grades = [ambient.index_grade(c) for c in keep]
    one = alg.field.one

    def proj(w):
        return {pos[c]: x for c, x in ech.reduce(w).items()}

    def actfn(i, k):
        return proj(ambient.act({i: one}, {keep[k]: one}))

    def direct(x, v):
        return proj(ambient.act(x, {keep[k]: c for k, c in v.items()}))

    mod = GradedModule(alg, grades, actfn, direct, name=name)
    mod._proj = proj
    return mod, ech, keep


def shift(m: GradedModule, r: int) -> GradedModule:
    """``M<r>`` with ``M<r>_i = M_{i-r}``: same action, grades moved by +r."""
    if r == 0:
        return m
    out = GradedModule(m.algebra, [g + r for g in m.grades], m.image, m._direct, name=m.name)
    out._cache = m._cache
    return out


def regular_module(a: GradedAlgebra) -> FreeModule:
    return FreeModule(a, [0])


def inflate_module(m: GradedModule, big: GradedAlgebra, proj: Callable[[int], dict]) -> GradedModule:
    """Restriction of scalars along an algebra map ``big -> m.algebra``.

    ``proj(i)`` is the image of big basis element ``i``.
    """
    def actfn(i, k):
        return m.act(proj(i), {k: m.field.one})

    return GradedModule(big, m.grades, actfn, name=m.name)


def dual_module(m: GradedModule, algebra: GradedAlgebra, name: str | None = None) -> GradedModule:
    """Graded dual ``D M`` of a module over ``algebra^op``, as a module over ``algebra``.

    ``m.algebra`` must share the basis of ``algebra`` with transposed
    products.  Grades are negated.
    """
    n = m.dim
    cols: dict[int, list[dict]] = {}

    def actfn(i, k):
        rows = cols.get(i)
        if rows is None:
            rows = [dict() for _ in range(n)]
            for src in range(n):
                for dst, c in m.image(i, src).items():
                    rows[dst][src] = c
            cols[i] = rows
        return dict(rows[k])

    return GradedModule(algebra, [-g for g in m.grades], actfn, name=name)


def _algebra_generators(a: GradedAlgebra) -> list[dict]:
    """A_0 basis plus lifts of rad/rad^2: these generate A as an algebra."""
    key = "alg_gens"
    if key not in a._cache:
        one = a.field.one
        gens = [{i: one} for i in a.indices_of_grade(0)]
        ech = span_echelon(gens, a.field)
        for r in a.rad_generators():
            if ech.add(r):
                gens.append(r)
        a._cache[key] = gens
    return a._cache[key]


# ---------------------------------------------------------------------------
# simples and projectives


@dataclass
class SimpleProjective:
    index: int
    label: str
    idempotent: dict
    simple: GradedModule
    projective: GradedModule
    projective_basis: list[dict]  # homogeneous basis of A e as algebra elements


def projective_basis(a: GradedAlgebra, e: Mapping) -> list[dict]:
    one = a.field.one
    return span_echelon((a.mul({i: one}, e) for i in range(a.dim)), a.field).basis()


def simples_and_projectives(a: GradedAlgebra) -> list[SimpleProjective]:
    if "simples" in a._cache:
        return a._cache["simples"]
    labels = a.simple_labels()
    out = []
    reg = regular_module(a)
    rad = a.radical()
    for lam, e in enumerate(a.class_idempotents()):
        pb = projective_basis(a, e)
        proj, _ = submodule(reg, pb, name=f"P({labels[lam]})")
        radp = [a.mul(r, e) for r in rad]
        simple, _, _ = quotient_module(proj, [proj._coords(v) for v in radp if v], name=f"L({labels[lam]})")
        if any(g != 0 for g in simple.grades):
            raise ValueError(f"head of P({labels[lam]}) is not pure of grade 0")
        out.append(SimpleProjective(lam, labels[lam], e, simple, proj, pb))
    a._cache["simples"] = out
    return out


def simple_module(a: GradedAlgebra, lam: int) -> GradedModule:
    return simples_and_projectives(a)[lam].simple


def projective_module(a: GradedAlgebra, lam: int) -> GradedModule:
    return simples_and_projectives(a)[lam].projective


# ---------------------------------------------------------------------------
# Hom and isomorphism


def hom_space(x: GradedModule, y: GradedModule, degree: int = 0) -> list[list[dict]]:
    """Basis of graded A-maps ``x -> y`` raising grades by ``degree``.

    Each map is a list ``f`` with ``f[k]`` the image of basis vector ``k``.
    """
    a = x.algebra
    f = a.field
    # unknowns: (k, m) with grade(y_m) = grade(x_k) + degree
    unknowns = []
    for k in range(x.dim):
        for m in y.indices_of_grade(x.grades[k] + degree):
            unknowns.append((k, m))
    if not unknowns:
        return []
    uidx = {u: n for n, u in enumerate(unknowns)}
    # equations f(g v_k) = g f(v_k) for algebra generators g, collected column-wise
    cols: list[dict] = [dict() for _ in unknowns]
    gens = _algebra_generators(a)
    eq = 0
    for gi, g in enumerate(gens):
        for k in range(x.dim):
            gx = x.act(g, {k: f.one})  # f(g v_k) = sum_c gx[c] f(v_c)
            rows: dict[int, dict] = {}
            for c, coef in gx.items():
                for m in y.indices_of_grade(x.grades[c] + degree):
                    rows.setdefault(m, {})[uidx[(c, m)]] = coef
            for m in y.indices_of_grade(x.grades[k] + degree):
                gy = y.act(g, {m: f.one})
                for m2, coef in gy.items():
                    slot = rows.setdefault(m2, {})
                    n = uidx[(k, m)]
                    s = slot.get(n, 0) - coef
                    if f.p is not None:
                        s %= f.p
                    slot[n] = s
            for m2, row in rows.items():
                for n, coef in row.items():
                    if coef:
                        cols[n][eq + m2] = coef
            eq += y.dim
    ker = kernel_vectors(cols, f)
    maps = []
    for v in ker:
        fm = [dict() for _ in range(x.dim)]
        for n, c in v.items():
            k, m = unknowns[n]
            fm[k][m] = c
        maps.append(fm)
    return maps


def find_isomorphism(x: GradedModule, y: GradedModule, degree: int = 0, seed: int = 0,
                     tries: int = 8) -> list[dict] | None:
    """A graded isomorphism ``x<degree> -> y`` if a random search finds one.

    None means none was found; over a large field that is strong evidence,
    over a tiny field it may be a miss.
    """
    if x.dim != y.dim:
        return None
    xs = {g + degree: n for g, n in x.grade_dims().items()}
    if xs != y.grade_dims():
        return None
    basis = hom_space(x, y, degree)
    if not basis:
        return None if x.dim else []
    f = x.field
    rng = random.Random(seed)
    bound = f.p if f.p is not None else 10**6
    for t in range(tries):
        coeffs = [f(1)] if len(basis) == 1 else [f(rng.randrange(bound)) for _ in basis]
        fm = [dict() for _ in range(x.dim)]
        for c, b in zip(coeffs, basis):
            for k in range(x.dim):
                axpy(fm[k], c, b[k], f.p)
        if rank_of(fm, f) == x.dim:
            return fm
        if len(basis) == 1:
            break
    return None


def modules_isomorphic(x: GradedModule, y: GradedModule, degree: int = 0, seed: int = 0) -> bool:
    return find_isomorphism(x, y, degree, seed) is not None


# ---------------------------------------------------------------------------
# resolutions


@dataclass
class GradedResolution:
    """Minimal graded projective resolution.

    ``terms[i]`` lists the summands ``(l, r)`` of ``P_i`` as ``P(l)<r>``.
    ``differentials[i][k]`` is the image of the generator of summand ``k``
    of ``P_i``: for ``i = 0`` an element of the module (augmentation), for
    ``i > 0`` an element of the free module holding ``P_{i-1}``.

    ``status`` is "terminated" (a zero syzygy was reached), "periodic"
    (``Omega_end`` is isomorphic to ``Omega_start<shift>``, so the rest of
    the resolution repeats with that shift) or "truncated".
    """

    module: GradedModule
    terms: list[list[tuple[int, int]]]
    differentials: list[list[dict]]
    status: str
    period: tuple[int, int, int] | None = None
    free: list[FreeModule] = dc_field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.terms)

    def term(self, n: int) -> list[tuple[int, int]]:
        """Summands of ``P_n``; beyond the computed range, by periodicity."""
        if n < len(self.terms):
            return self.terms[n]
        if self.status == "terminated":
            return []
        if self.status == "periodic":
            j, i, s = self.period
            q, rem = divmod(n - j, i - j)
            return [(lam, r + q * s) for lam, r in self.terms[j + rem]]
        raise IndexError(f"term {n} beyond truncated resolution of length {len(self.terms)}")

    def known(self, n: int) -> bool:
        return n < len(self.terms) or self.status in ("terminated", "periodic")

    def term_module(self, n: int) -> GradedModule:
        a = self.module.algebra
        fm = self.free[n]
        sp = simples_and_projectives(a)
        vecs = []
        for k, (lam, _) in enumerate(self.terms[n]):
            vecs.extend(fm.join({k: c}) for c in sp[lam].projective_basis)
        mod, _ = submodule(fm, vecs, name=f"P_{n}")
        return mod


def _graded_dim_key(grades) -> tuple:
    if not grades:
        return ()
    lo = min(grades)
    counts: dict[int, int] = {}
    for g in grades:
        counts[g - lo] = counts.get(g - lo, 0) + 1
    return tuple(sorted(counts.items()))


def default_max_length(a: GradedAlgebra) -> int:
    """2n + 4 for n simples; covers the global dimension bound 2n - 2 of a quasi-hereditary algebra."""
    return 2 * len(simples_and_projectives(a)) + 4


def minimal_graded_resolution(m: GradedModule, max_length: int | None = None,
                              detect_period: bool = True, seed: int = 0) -> GradedResolution:
    """Minimal graded projective resolution ``P_0, ..., P_max_length`` of ``m``.

    Stops early on a zero syzygy, or (with ``detect_period``) when a syzygy
    is isomorphic to a shift of an earlier one.  The default length depends
    only on the number of simples, so Morita equivalent algebras truncate
    at the same place.
    """
    a = m.algebra
    f = a.field
    p = f.p
    sp = simples_and_projectives(a)
    if max_length is None:
        max_length = default_max_length(a)
    idems = [s.idempotent for s in sp]
    rgens = a.rad_generators()

    ambient = m
    sub_basis = span_echelon(({k: f.one} for k in range(m.dim)), f).basis()
    terms: list[list[tuple[int, int]]] = []
    diffs: list[list[dict]] = []
    frees: list[FreeModule] = []
    syz: list[tuple[tuple, GradedModule]] = []  # Omega_i as modules
    status = "truncated"
    period = None

    for step in range(max_length + 2):
        if not sub_basis:
            status = "terminated"
            break
        if detect_period:
            omega, _ = submodule(ambient, sub_basis)
            key = _graded_dim_key(omega.grades)
            found = None
            for j, (kj, oj) in enumerate(syz):
                if kj == key:
                    s = min(omega.grades) - min(oj.grades)
                    if modules_isomorphic(oj, omega, s, seed):
                        found = (j, step, s)
                        break
            if found is not None:
                status, period = "periodic", found
                break
            syz.append((key, omega))
        if step == max_length + 1:
            break
        # top of S: generators e_l s modulo rad S
        top = Echelon(f)
        for r in rgens:
            for s in sub_basis:
                w = ambient.act(r, s)
                if w:
                    top.add(w)
        gens: list[tuple[int, int, dict]] = []
        for lam, e in enumerate(idems):
            for s in sub_basis:
                w = ambient.act(e, s)
                if not w:
                    continue
                if top.add(w):
                    g = {ambient.index_grade(c) for c in w}
                    if len(g) != 1:
                        raise ValueError("inhomogeneous generator; module basis not homogeneous")
                    gens.append((lam, g.pop(), w))
        gens.sort(key=lambda t: (t[1], t[0]))
        summands = [(lam, r) for lam, r, _ in gens]
        terms.append(summands)
        diffs.append([w for _, _, w in gens])
        free = FreeModule(a, [r for _, r in summands])
        frees.append(free)
        # kernel of P -> ambient, grade by grade
        by_grade: dict[int, list[tuple[dict, dict]]] = {}
        for k, (lam, r, g) in enumerate(gens):
            for c in sp[lam].projective_basis:
                img = ambient.act(c, g)
                src = free.join({k: c})
                gr = r + a.grade_of(c)
                by_grade.setdefault(gr, []).append((src, img))
        new_sub = []
        for gr in sorted(by_grade):
            pairs = by_grade[gr]
            for v in kernel_vectors([img for _, img in pairs], f):
                el: dict = {}
                for n, c in v.items():
                    axpy(el, c, pairs[n][0], p)
                new_sub.append(el)
        ambient = free
        sub_basis = span_echelon(new_sub, f).basis()

    return GradedResolution(m, terms, diffs, status, period, frees)


def is_minimal(res: GradedResolution) -> bool:
    """Every differential lands in the radical of the previous term."""
    a = res.module.algebra
    rad = a.radical_echelon()
    for i in range(1, len(res.differentials)):
        fm = res.free[i - 1]
        for img in res.differentials[i]:
            for comp in fm.split(img).values():
                if rad.reduce(comp):
                    return False
    return True


# ---------------------------------------------------------------------------
# ext


@dataclass
class ExtTable:
    """``entries[(i, j)] = dim ext^i(M, N<j>)`` (zeros omitted)."""

    entries: dict[tuple[int, int], int]
    max_degree: int
    status: str = "complete"

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def total(self, i: int) -> int:
        return sum(v for (n, _), v in self.entries.items() if n == i)

    def row(self, i: int) -> dict[int, int]:
        return {j: v for (n, j), v in sorted(self.entries.items()) if n == i}

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "status": self.status,
            "entries": [[i, j, v] for (i, j), v in sorted(self.entries.items())],
        }


def _hom_cochains(res: GradedResolution, n_mod: GradedModule, i: int, j: int):
    """Basis of the degree-j part of Hom(P_i, N): list of (k, vector in eN)."""
    sp = simples_and_projectives(res.module.algebra)
    out = []
    for k, (lam, r) in enumerate(res.term(i)):
        e = sp[lam].idempotent
        vecs = [n_mod.act(e, {c: n_mod.field.one}) for c in n_mod.indices_of_grade(r - j)]
        for v in span_echelon(vecs, n_mod.field).basis():
            out.append((k, v))
    return out


def _coboundary_rank(res: GradedResolution, n_mod: GradedModule, i: int, j: int) -> int:
    """Rank of Hom(P_i, N)_j -> Hom(P_{i+1}, N)_j."""
    if not res.known(i + 1) or not res.term(i + 1):
        return 0
    chains = _hom_cochains(res, n_mod, i, j)
    if not chains:
        return 0
    a = res.module.algebra
    d_next = _differential(res, i + 1)
    fm = res.free[i] if i < len(res.free) else FreeModule(a, [r for _, r in res.term(i)])
    nd = n_mod.dim
    images = []
    for k, v in chains:
        img: dict = {}
        for k2, g in enumerate(d_next):
            comp = fm.split(g).get(k)
            if comp:
                w = n_mod.act(comp, v)
                for c, x in w.items():
                    img[k2 * nd + c] = x
        images.append(img)
    return rank_of(images, n_mod.field)


def _differential(res: GradedResolution, i: int) -> list[dict]:
    if i < len(res.differentials):
        return res.differentials[i]
    raise IndexError("differential beyond computed range; compute the resolution further")


def graded_ext(m: GradedModule, n: GradedModule, max_degree: int, res: GradedResolution | None = None) -> ExtTable:
    """``dim ext^i(m, n<j>)`` for ``0 <= i <= max_degree`` and every j."""
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    if res is None or (res.status != "terminated" and len(res.terms) < max_degree + 2):
        res = minimal_graded_resolution(m, max_degree + 1, detect_period=False)
    entries = {}
    ngrades = set(n.grades)
    for i in range(max_degree + 1):
        if not res.known(i):
            break
        window = sorted({r - g for _, r in res.term(i) for g in ngrades})
        for j in window:
            dim_c = len(_hom_cochains(res, n, i, j))
            if not dim_c:
                continue
            out_rank = _coboundary_rank(res, n, i, j)
            in_rank = _coboundary_rank(res, n, i - 1, j) if i > 0 else 0
            d = dim_c - out_rank - in_rank
            if d:
                entries[(i, j)] = d
    status = "complete" if all(res.known(i + 1) for i in range(max_degree + 1)) else "truncated"
    return ExtTable(entries, max_degree, status)


def ungraded_ext_dims(m: GradedModule, n: GradedModule, max_degree: int) -> list[int]:
    """Ext dimensions from a resolution over the algebra with its grading forgotten."""
    a = m.algebra
    flat = forget_grading(a)
    mf = GradedModule(flat, [0] * m.dim, m.image, name=m.name)
    nf = GradedModule(flat, [0] * n.dim, n.image, name=n.name)
    table = graded_ext(mf, nf, max_degree)
    return [table.total(i) for i in range(max_degree + 1)]


# ---------------------------------------------------------------------------
# linearity


@dataclass
class Linearity:
    linear: bool
    failure: tuple[int, int] | None
    status: str

    def __bool__(self):
        return self.linear


def is_linear(m: GradedModule, max_length: int | None = None, res: GradedResolution | None = None) -> Linearity:
    """Is every term ``P_i`` generated in grade ``i``?  Failure gives ``(i, r)``."""
    if res is None:
        res = minimal_graded_resolution(m, max_length)
    for i, t in enumerate(res.terms):
        for _, r in t:
            if r != i:
                return Linearity(False, (i, r), res.status)
    if res.status == "periodic":
        j, i, s = res.period
        if s != i - j:
            # the repeated block shifts by s but homological degree by i-j
            n = i
            for _, r in res.term(n):
                if r != n:
                    return Linearity(False, (n, r), res.status)
    return Linearity(True, None, res.status)


# ---------------------------------------------------------------------------
# cochain oracle


def cochain_ext_dim(m: GradedModule, n: GradedModule, degree: int, j: int | None = None) -> int:
    """``dim Ext^degree(m, n)`` from the Hochschild cochain complex.

    Cochains are linear maps ``A^{(x)degree} -> Hom_k(m, n)``; with ``j``
    given only those of internal degree ``j`` (into ``n<j>``) are used.
    Independent of resolutions; exponential in ``degree``, so for tiny
    algebras only.
    """
    a = m.algebra
    f = a.field

    def unknowns(deg):
        out = []
        for tup in itertools.product(range(a.dim), repeat=deg):
            g = sum(a.grades[t] for t in tup)
            for km in range(m.dim):
                for kn in range(n.dim):
                    if j is None or n.grades[kn] == g + m.grades[km] - j:
                        out.append((tup, km, kn))
        return out

    def coboundary(deg):
        src = unknowns(deg)
        dst = unknowns(deg + 1)
        didx = {u: t for t, u in enumerate(dst)}
        one = f.one
        neg = (lambda c: -c) if f.p is None else (lambda c: (-c) % f.p)
        cols = []
        for tup, km, kn in src:
            # phi = E_{tup, (km -> kn)}; compute d(phi) on all (deg+1)-tuples
            img: dict = {}

            def put(tup2, km2, kn2, c):
                key = (tup2, km2, kn2)
                if key in didx and c:
                    t = didx[key]
                    s = img.get(t, 0) + c
                    if f.p is not None:
                        s %= f.p
                    if s:
                        img[t] = s
                    else:
                        img.pop(t, None)

            # term a1 . phi(a2..): tuples (b, *tup)
            for b in range(a.dim):
                for kn2, c in n.image(b, kn).items():
                    put((b,) + tup, km, kn2, c)
            # inner terms (-1)^i phi(.., a_i a_{i+1}, ..)
            for pos in range(deg):
                sign = one if (pos + 1) % 2 == 0 else neg(one)
                t = tup[pos]
                for (x, y), prod in a.table.items():
                    c = prod.get(t)
                    if c:
                        tup2 = tup[:pos] + (x, y) + tup[pos + 1:]
                        put(tup2, km, kn, sign * c)
            # last term (-1)^{deg+1} phi(a1..a_deg) a_{deg+1}: need m basis km2 with b.km2 having km
            sign = one if (deg + 1) % 2 == 0 else neg(one)
            for b in range(a.dim):
                for km2 in range(m.dim):
                    c = m.image(b, km2).get(km)
                    if c:
                        put(tup + (b,), km2, kn, sign * c)
            cols.append(img)
        return len(src), rank_of(cols, f)

    dim_c, r_out = coboundary(degree)
    r_in = coboundary(degree - 1)[1] if degree > 0 else 0
    return dim_c - r_out - r_in
