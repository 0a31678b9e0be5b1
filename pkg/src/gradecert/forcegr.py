"""Forced gradings: gr A from the radical filtration and the integral version.

``gr_algebra`` takes representatives of rad^n A / rad^{n+1} A in pivot
order, so the output basis is reproducible.  ``tilde_gr`` does the same
with the lattices L_i = O ∩ rad^i(O ⊗ Q) of an order O over Z and then
reduces modulo the designated prime.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .algcore import GradedAlgebra, radical_series
from .errors import GradecertError, SpecParseError
from .exactla import (
    GF,
    QQ,
    Coordinates,
    ExactMatrix,
    IntegerLattice,
    axpy,
    lattice_complement,
    lattice_intersect_subspace,
    rank_of,
    solve_and_nullspace,
    span_echelon,
    standard_lattice,
)
from .gradmod import GradedModule


# ---------------------------------------------------------------------------
# gr of an algebra and of a module


def _adapted_layers(layers: list[list[dict]], field) -> list[list[dict]]:
    """Representatives of layers[n] modulo layers[n+1], chosen by pivot order."""
    reps = []
    for n in range(len(layers) - 1):
        ech = span_echelon(layers[n + 1], field)
        chosen = []
        for v in layers[n]:
            if ech.add(v):
                chosen.append(v)
        reps.append(chosen)
    return reps


class _LayerCoords:
    """Coordinates modulo the next layer, in terms of a layer's representatives."""

    def __init__(self, reps: list[dict], deeper: list[dict], field):
        self.k = len(reps)
        self.coords = Coordinates(list(reps) + list(deeper), field)

    def __call__(self, v: dict) -> dict:
        c = self.coords(v)
        return {i: x for i, x in c.items() if i < self.k}


def gr_algebra(a: GradedAlgebra) -> GradedAlgebra:
    """gr A = sum of rad^n A / rad^{n+1} A; the input grading is ignored."""
    if "gr" in a._cache:
        return a._cache["gr"]
    f = a.field
    rs = radical_series(a)
    layers = [m.rows() for m in rs.layers]
    reps = _adapted_layers(layers, f)
    offsets, flat, grades = [], [], []
    for n, rs_n in enumerate(reps):
        offsets.append(len(flat))
        flat.extend(rs_n)
        grades.extend([n] * len(rs_n))
    coords = [_LayerCoords(reps[n], layers[n + 1], f) for n in range(len(reps))]
    table = {}
    for i, u in enumerate(flat):
        for j, w in enumerate(flat):
            g = grades[i] + grades[j]
            if g >= len(reps):
                continue
            prod = a.mul(u, w)
            if not prod:
                continue
            c = coords[g](prod)
            if c:
                table[(i, j)] = {offsets[g] + k: x for k, x in c.items()}
    unit = {offsets[0] + k: x for k, x in coords[0](a.one()).items()}
    try:
        es = a.primitive_idempotents()
        idems = [{offsets[0] + k: x for k, x in coords[0](e).items()} for e in es]
    except GradecertError:
        idems = None
    labels = [a.labels[min(v)] for v in flat]
    if len(set(labels)) != len(labels):
        labels = [f"g{grades[i]}_{i}" for i in range(len(flat))]
    out = GradedAlgebra(
        f, labels, table, unit, grades, idempotents=idems,
        radical_basis=[{i: f.one} for i in range(len(flat)) if grades[i] > 0],
        poset=a.poset, simple_names=a.simple_names,
        name=f"gr({a.name})" if a.name else None, check=False,
    )
    out._cache["gr_reps"] = flat
    a._cache["gr"] = out
    return out


def gr_module(a: GradedAlgebra, m: GradedModule) -> GradedModule:
    """gr M = sum of rad^n M / rad^{n+1} M as a module over ``gr_algebra(a)``."""
    f = a.field
    g = gr_algebra(a)
    rad = a.radical()
    layers = [span_echelon(({k: f.one} for k in range(m.dim)), f).basis()]
    while layers[-1]:
        layers.append(span_echelon((m.act(r, x) for r in rad for x in layers[-1]), f).basis())
    reps = _adapted_layers(layers, f)
    offsets, flat, grades = [], [], []
    for n, rs_n in enumerate(reps):
        offsets.append(len(flat))
        flat.extend(rs_n)
        grades.extend([n] * len(rs_n))
    coords = [_LayerCoords(reps[n], layers[n + 1], f) for n in range(len(reps))]
    elems = g._cache["gr_reps"]

    def actfn(i, k):
        deg = g.grades[i] + grades[k]
        if deg >= len(reps):
            return {}
        w = m.act(elems[i], flat[k])
        if not w:
            return {}
        return {offsets[deg] + t: x for t, x in coords[deg](w).items()}

    return GradedModule(g, grades, actfn, name=f"gr({m.name})" if m.name else None)


# ---------------------------------------------------------------------------
# integral forced grading


@dataclass
class IntegralOrder:
    """An order over Z given by integer structure constants, with a prime p."""

    dim: int
    mult: list[tuple[int, int, int, int]]
    unit: list[int]
    prime: int
    labels: list[str] | None = None
    name: str | None = None

    def __post_init__(self):
        for t in self.mult:
            if len(t) != 4 or any(int(x) != x for x in t):
                raise SpecParseError(f"integer triplet expected, got {t!r}", "mult")
        if len(self.unit) != self.dim:
            raise SpecParseError(f"unit has length {len(self.unit)}, expected {self.dim}", "unit")
        if self.labels is None:
            self.labels = [f"b{i}" for i in range(self.dim)]

    def table(self) -> dict:
        out: dict = {}
        for i, j, k, c in self.mult:
            slot = out.setdefault((int(i), int(j)), {})
            slot[int(k)] = slot.get(int(k), 0) + int(c)
        return out

    def rational_algebra(self) -> GradedAlgebra:
        """O (x) Q, trivially graded (validated)."""
        tab = {k: {m: mpq(c) for m, c in v.items()} for k, v in self.table().items()}
        return GradedAlgebra(QQ, self.labels, tab, {i: mpq(c) for i, c in enumerate(self.unit)},
                             [0] * self.dim, name=self.name)

    def reduction(self) -> GradedAlgebra:
        """O (x) F_p, trivially graded."""
        fp = GF(self.prime)
        return GradedAlgebra(fp, self.labels, self.table(), dict(enumerate(self.unit)), [0] * self.dim,
                             name=self.name)


def _int_coords(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    m = ExactMatrix.from_dense([list(b) for b in basis], QQ).transpose()
    sol, _ = solve_and_nullspace(m, list(v))
    if sol is None:
        raise ArithmeticError("vector outside the lattice span")
    out = []
    for i in range(len(basis)):
        x = sol[i, 0]
        if mpq(x).denominator != 1:
            raise ArithmeticError("non-integral coordinates")
        out.append(int(x))
    return out


def tilde_gr(o: IntegralOrder) -> GradedAlgebra:
    """The graded F_p-algebra sum (L_i / L_{i+1}) (x) F_p, L_i = O ∩ rad^i(O_Q)."""
    n = o.dim
    aq = o.rational_algebra()
    rs = radical_series(aq)
    lattices: list[IntegerLattice] = []
    z = standard_lattice(n)
    for layer in rs.layers:
        lattices.append(lattice_intersect_subspace(z, layer) if layer.nrows else IntegerLattice(n, ()))
    comps: list[list[tuple[int, ...]]] = []
    for i in range(len(lattices) - 1):
        comps.append(lattice_complement(lattices[i + 1], lattices[i]))
    basis, grades = [], []
    for i, c in enumerate(comps):
        basis.extend(c)
        grades.extend([i] * len(c))
    tab = o.table()

    def mul_vec(u, w):
        out = [0] * n
        for i, x in enumerate(u):
            if not x:
                continue
            for j, y in enumerate(w):
                if not y:
                    continue
                for k, c in tab.get((i, j), {}).items():
                    out[k] += x * y * c
        return out

    p = o.prime
    table = {}
    for a_, u in enumerate(basis):
        for b_, w in enumerate(basis):
            g = grades[a_] + grades[b_]
            prod = mul_vec(u, w)
            if not any(prod):
                continue
            if g >= len(comps):
                if any(prod):
                    raise ArithmeticError(f"L_{grades[a_]} L_{grades[b_]} is not inside L_{g} = 0")
                continue
            if not lattices[g].contains(prod):
                raise ArithmeticError(f"L_{grades[a_]} L_{grades[b_]} is not inside L_{g}")
            c = _int_coords(basis, prod)
            entry = {k: x % p for k, x in enumerate(c) if grades[k] == g and x % p}
            if entry:
                table[(a_, b_)] = entry
    unit_c = _int_coords(basis, o.unit)
    unit = {k: x % p for k, x in enumerate(unit_c) if grades[k] == 0 and x % p}
    labels = [_vec_label(v, o.labels) for v in basis]
    if len(set(labels)) != len(labels):
        labels = [f"t{i}" for i in range(len(basis))]
    return GradedAlgebra(GF(p), labels, table, unit, grades,
                         name=f"tgr({o.name})" if o.name else None)


def _vec_label(v, labels) -> str:
    parts = []
    for c, lab in zip(v, labels):
        if c == 1:
            parts.append(lab)
        elif c == -1:
            parts.append(f"-{lab}")
        elif c:
            parts.append(f"{c}{lab}")
    return "+".join(parts).replace("+-", "-") or "0"


# ---------------------------------------------------------------------------
# graded isomorphism of small algebras


def _invariants(a: GradedAlgebra) -> tuple:
    f = a.field
    one = f.one
    gd = {}
    for g in a.grades:
        gd[g] = gd.get(g, 0) + 1
    prods = []
    for gi in sorted(gd):
        for gj in sorted(gd):
            xs = [{i: one} for i in a.indices_of_grade(gi)]
            ys = [{j: one} for j in a.indices_of_grade(gj)]
            prods.append(rank_of((a.mul(x, y) for x in xs for y in ys), f))
    # dimension of the centre
    cols = []
    for i in range(a.dim):
        img = {}
        for j in range(a.dim):
            d = a.sub(a.mul({i: one}, {j: one}), a.mul({j: one}, {i: one}))
            for k, c in d.items():
                img[j * a.dim + k] = c
        cols.append(img)
    centre = a.dim - rank_of(cols, f)
    return (repr(f), tuple(sorted(gd.items())), tuple(prods), centre)


def _is_hom(a: GradedAlgebra, b: GradedAlgebra, images: list[dict]) -> bool:
    for i in range(a.dim):
        for j in range(a.dim):
            lhs: dict = {}
            for k, c in a.table.get((i, j), {}).items():
                axpy(lhs, c, images[k], b.field.p)
            if lhs != b.mul(images[i], images[j]):
                return False
    return True


def graded_isomorphic(a: GradedAlgebra, b: GradedAlgebra, cap: int = 8, tries: int = 2000,
                      seed: int = 0) -> bool | None:
    """True / False when decided, None when undecided.

    Invariants first, then the identity alignment, then (dim <= cap) a
    search over grade-preserving block matrices: exhaustive over small
    F_p, seeded random otherwise.
    """
    if a.field != b.field or a.dim != b.dim:
        return False
    if _invariants(a) != _invariants(b):
        return False
    one = a.field.one
    if _is_hom(a, b, [{i: one} for i in range(a.dim)]):
        return True
    if a.dim > cap:
        return None
    f = a.field
    blocks = []
    for g in sorted(set(a.grades)):
        blocks.append((a.indices_of_grade(g), b.indices_of_grade(g)))

    def assemble(mats):
        images = [dict() for _ in range(a.dim)]
        for (src, dst), m in zip(blocks, mats):
            for r, i in enumerate(src):
                images[i] = {dst[c]: x for c, x in enumerate(m[r]) if x}
        return images

    def invertible(m):
        return rank_of([{c: x for c, x in enumerate(row) if x} for row in m], f) == len(m)

    if f.p is not None:
        total = 1
        for src, _ in blocks:
            total *= f.p ** (len(src) ** 2)
        if total <= 200_000:
            per_block = []
            for src, _ in blocks:
                k = len(src)
                mats = []
                for entries in itertools.product(range(f.p), repeat=k * k):
                    m = [list(entries[r * k:(r + 1) * k]) for r in range(k)]
                    if invertible(m):
                        mats.append(m)
                per_block.append(mats)
            for combo in itertools.product(*per_block):
                if _is_hom(a, b, assemble(combo)):
                    return True
            return False
    rng = random.Random(seed)
    lo, hi = (0, f.p - 1) if f.p is not None else (-2, 2)
    for _ in range(tries):
        mats = []
        for src, _ in blocks:
            k = len(src)
            m = [[f(rng.randint(lo, hi)) for _ in range(k)] for _ in range(k)]
            mats.append(m)
        if all(invertible(m) for m in mats) and _is_hom(a, b, assemble(mats)):
            return True
    return None
