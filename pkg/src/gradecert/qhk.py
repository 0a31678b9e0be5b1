"""Quasi-hereditary structure and the Koszul / Q-Koszul certification suite.

Every certifier returns a :class:`CertReport` whose verdict is "pass",
"fail" (with a witness that can be re-checked on its own) or
"inconclusive(truncated)" when a resolution was cut off before the
question was settled.  Infinite resolutions are settled when a syzygy
recurs up to a grading shift; see ``minimal_graded_resolution``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .algcore import GradedAlgebra, degree_zero_part, opposite, quotient
from .errors import A0NotQuasiHereditary, NotQuasiHereditary, TightnessRequired
from .exactla import Coordinates, Echelon, axpy, kernel_vectors, span_echelon
from .gradmod import (
    ExtTable,
    GradedModule,
    dual_module,
    default_max_length,
    graded_ext,
    hom_space,
    inflate_module,
    is_linear,
    minimal_graded_resolution,
    quotient_module,
    regular_module,
    simples_and_projectives,
    submodule,
)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive(truncated)"


# ---------------------------------------------------------------------------
# posets


class WeightPoset:
    """Strict partial order on simple indices ``0..n-1``; ``less`` is transitively closed."""

    def __init__(self, n: int, relations: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        self.n = n
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        less = set()
        for a, b in relations:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"poset relation ({a}, {b}) outside 0..{n - 1}")
            if a == b:
                raise ValueError(f"poset relation ({a}, {a}) is not strict")
            less.add((a, b))
        changed = True
        while changed:
            changed = False
            for a, b in list(less):
                for c, d in list(less):
                    if b == c and (a, d) not in less:
                        less.add((a, d))
                        changed = True
        for a, b in less:
            if a == b or (b, a) in less:
                raise ValueError(f"poset relations contain a cycle through {self.labels[a]}")
        self.less = frozenset(less)

    @classmethod
    def of_algebra(cls, a: GradedAlgebra) -> "WeightPoset":
        n = len(a.simple_classes())
        if a.poset is None:
            raise ValueError("algebra carries no weight poset")
        return cls(n, a.poset, a.simple_labels())

    @property
    def elements(self) -> list[int]:
        return list(range(self.n))

    def le(self, a: int, b: int) -> bool:
        return a == b or (a, b) in self.less

    def maximal(self, among: Iterable[int]) -> list[int]:
        among = list(among)
        return [x for x in among if not any((x, y) in self.less for y in among)]

    def linear_extension(self) -> list[int]:
        out, left = [], set(range(self.n))
        while left:
            m = min(x for x in left if not any((y, x) in self.less for y in left))
            out.append(m)
            left.remove(m)
        return out


# ---------------------------------------------------------------------------
# reports


@dataclass
class CertReport:
    property: str
    verdict: str
    witness: object = None
    evidence: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "witness": self.witness,
            "evidence": self.evidence,
        }


# ---------------------------------------------------------------------------
# quasi-hereditary structure


@dataclass
class QHStructure:
    algebra: GradedAlgebra
    poset: WeightPoset
    standards: list[GradedModule]
    costandards: list[GradedModule]
    op_standards: list[GradedModule]
    verified: bool
    grade0_standards: list[GradedModule] = dc_field(default_factory=list)  # Delta^0
    grade0_costandards: list[GradedModule] = dc_field(default_factory=list)  # nabla_0
    a0_standards: list[GradedModule] = dc_field(default_factory=list)  # Delta_0
    a0_costandards: list[GradedModule] = dc_field(default_factory=list)  # nabla^0
    deep_checked: bool = False


def _standards(a: GradedAlgebra, poset: WeightPoset) -> list[GradedModule]:
    sp = simples_and_projectives(a)
    reg = regular_module(a)
    one = a.field.one
    out = []
    for lam, s in enumerate(sp):
        gens = []
        for mu, t in enumerate(sp):
            if poset.le(mu, lam):
                continue
            for i in range(a.dim):
                v = a.mul(a.mul(t.idempotent, {i: one}), s.idempotent)
                if v:
                    gens.append(v)
        trace, tech = submodule(reg, gens, closed=False)
        proj = s.projective
        sub = [proj._coords(v) for v in tech.basis()]
        delta, _, _ = quotient_module(proj, sub, name=f"Delta({s.label})")
        out.append(delta)
    return out


def _a0_modules(a: GradedAlgebra, poset: WeightPoset):
    """Standard and costandard modules of A_0, inflated to A (A_{>0} acts by 0)."""
    a.radical()
    a0, idx = degree_zero_part(a)
    try:
        q0 = build_qh(a0, poset, _grade0=False)
    except NotQuasiHereditary as exc:
        raise A0NotQuasiHereditary(f"A_0 is not quasi-hereditary for this poset ({exc})", exc.criterion) from None
    pos = {k: n for n, k in enumerate(idx)}
    one = a.field.one

    def proj(i):
        return {pos[i]: one} if i in pos else {}

    deltas = [inflate_module(m, a, proj) for m in q0.standards]
    nablas = [inflate_module(m, a, proj) for m in q0.costandards]
    for m, src in zip(deltas + nablas, q0.standards + q0.costandards):
        m.name = src.name and src.name + "_A0"
    return deltas, nablas


def build_qh(a: GradedAlgebra, poset: WeightPoset | None = None, deep: bool = False,
             _grade0: bool = True) -> QHStructure:
    """Standard and costandard modules; raises NotQuasiHereditary on failure."""
    if poset is None:
        poset = WeightPoset.of_algebra(a)
    sp = simples_and_projectives(a)
    if len(sp) != poset.n:
        raise ValueError(f"poset has {poset.n} elements but the algebra has {len(sp)} simples")
    a.radical()
    deltas = _standards(a, poset)
    op = opposite(a)
    op_deltas = _standards(op, poset)
    nablas = []
    for lam, m in enumerate(op_deltas):
        nablas.append(dual_module(m, a, name=f"nabla({sp[lam].label})"))
    total = sum(d.dim * n.dim for d, n in zip(deltas, nablas))
    if total != a.dim:
        raise NotQuasiHereditary(
            f"sum of dim Delta * dim nabla is {total}, dim A is {a.dim}", "dimension_identity"
        )
    for lam, d in enumerate(deltas):
        e = sp[lam].idempotent
        top = span_echelon((d.act(e, {k: a.field.one}) for k in range(d.dim)), a.field)
        ends = sum(len(hom_space(d, d, deg)) for deg in range(0, max(d.grades, default=0) + 1))
        if len(top) != 1 or ends != 1:
            raise NotQuasiHereditary(
                f"End(Delta({sp[lam].label})) has dimension {ends}, [Delta:L] = {len(top)}", "end_delta"
            )
    q = QHStructure(a, poset, deltas, nablas, op_deltas, True)
    if deep:
        bad = heredity_chain(a, poset)
        if bad is not None:
            raise NotQuasiHereditary(
                f"heredity chain fails at {poset.labels[bad[0]]}: {bad[1]} (fast check disagreed: toolkit bug)",
                "heredity_chain",
            )
        q.deep_checked = True
    q.grade0_standards = []
    for d in deltas:
        high = [{k: a.field.one} for k in range(d.dim) if d.grades[k] > 0]
        m, _, _ = quotient_module(d, high, name=f"{d.name}^0")
        q.grade0_standards.append(m)
    q.grade0_costandards = []
    for n_ in nablas:
        m, _ = submodule(n_, [{k: a.field.one} for k in range(n_.dim) if n_.grades[k] == 0], name=f"{n_.name}_0")
        q.grade0_costandards.append(m)
    if _grade0:
        q.a0_standards, q.a0_costandards = _a0_modules(a, poset)
    return q


def heredity_chain(a: GradedAlgebra, poset: WeightPoset) -> tuple[int, str] | None:
    """Peel off heredity ideals A e A for maximal weights; None if every layer is fine."""
    f = a.field
    one = f.one
    idems = {lam: dict(s.idempotent) for lam, s in enumerate(simples_and_projectives(a))}
    alg = a
    rad = a.radical()
    left = set(range(poset.n))
    while left:
        lam = min(poset.maximal(left))
        e = idems[lam]
        basis = [{i: one} for i in range(alg.dim)]
        eae = span_echelon((alg.mul(alg.mul(e, b), e) for b in basis), f)
        erade = span_echelon((alg.mul(alg.mul(e, r), e) for r in rad), f)
        if len(erade):
            return lam, "e rad e is nonzero"
        if len(eae) != 1:
            return lam, "eAe is not one-dimensional"
        ae = span_echelon((alg.mul(b, e) for b in basis), f)
        ea = span_echelon((alg.mul(e, b) for b in basis), f)
        aea = span_echelon((alg.mul(x, y) for x in ae.basis() for y in ea.basis()), f)
        if len(aea) != len(ae) * len(ea):
            return lam, f"dim AeA = {len(aea)} but dim Ae * dim eA = {len(ae) * len(ea)}"
        left.remove(lam)
        if not left:
            break
        alg, ech, keep = quotient(alg, aea.basis())
        pos = {k: n for n, k in enumerate(keep)}

        def proj(v, ech=ech, pos=pos):
            return {pos[k]: c for k, c in ech.reduce(v).items()}

        rad = [w for w in (proj(r) for r in rad) if w]
        idems = {mu: proj(x) for mu, x in idems.items() if mu in left}
    return None


# ---------------------------------------------------------------------------
# ext bookkeeping


@dataclass
class ExtProfile:
    """ext tables of one module against several targets, plus completeness."""

    tables: list[ExtTable]
    complete: bool
    degrees: int  # degrees 0..degrees were computed


def ext_profile(m: GradedModule, targets: Sequence[GradedModule], max_degree: int | None = None,
                max_length: int | None = None) -> ExtProfile:
    """ext^i(m, t<j>) for every target.

    With ``max_degree=None`` all degrees are meant: a terminating resolution
    settles this exactly, a periodic one is computed for one extra period
    (enough to expose any violation of "nonzero only on i = j"), and a
    truncated one yields ``complete=False``.
    """
    a = m.algebra
    if max_length is None:
        max_length = default_max_length(a)
        if max_degree is not None:
            max_length = max(max_length, max_degree + 1)
    res = minimal_graded_resolution(m, max_length)
    if max_degree is not None:
        deg = max_degree
        complete = res.status != "truncated" or res.length > deg + 1
    elif res.status == "terminated":
        deg, complete = res.length - 1, True
    elif res.status == "periodic":
        j, i, _ = res.period
        deg, complete = 2 * i - j, True
    else:
        deg, complete = res.length - 2, False
    deg = max(deg, 0)
    if res.status == "terminated" or (res.status == "truncated" and res.length > deg + 1):
        full = res
    else:
        full = minimal_graded_resolution(m, deg + 1, detect_period=False)
    tables = [graded_ext(m, t, deg, res=full) for t in targets]
    return ExtProfile(tables, complete, deg)


def _diagonal_violation(table: ExtTable, lo: int = 0):
    for (i, j), v in sorted(table.entries.items()):
        if i >= lo and i != j and v:
            return i, j, v
    return None


# ---------------------------------------------------------------------------
# certifiers


def _a0_semisimple(a: GradedAlgebra) -> bool:
    return not any(a.grade_of(r) == 0 for r in a.radical())


def certify_koszul(a: GradedAlgebra, max_length: int | None = None) -> CertReport:
    if not _a0_semisimple(a):
        r = next(r for r in a.radical() if a.grade_of(r) == 0)
        return CertReport("koszul", FAIL, {"reason": "A_0 not semisimple", "element": a.fmt(r)})
    sp = simples_and_projectives(a)
    truncated = False
    ev = {}
    for s in sp:
        lin = is_linear(s.simple, max_length)
        ev[s.label] = lin.status
        if not lin.linear:
            i, r = lin.failure
            return CertReport("koszul", FAIL, {"simple": s.label, "degree": i, "shift": r}, ev)
        truncated |= lin.status == "truncated"
    return CertReport("koszul", INCONCLUSIVE if truncated else PASS, None, ev)


def certify_standard_koszul(q: QHStructure, max_length: int | None = None) -> CertReport:
    k = certify_koszul(q.algebra, max_length)
    ev = {"koszul": k.verdict}
    if k.failed:
        return CertReport("standard_koszul", FAIL, {"koszul": k.witness}, ev)
    truncated = k.verdict == INCONCLUSIVE
    labels = q.poset.labels
    for kind, mods in (("Delta", q.standards), ("nabla_dual", q.op_standards)):
        for lam, m in enumerate(mods):
            lin = is_linear(m, max_length)
            if not lin.linear:
                i, r = lin.failure
                return CertReport("standard_koszul", FAIL,
                                  {"module": f"{kind}({labels[lam]})", "degree": i, "shift": r}, ev)
            truncated |= lin.status == "truncated"
    return CertReport("standard_koszul", INCONCLUSIVE if truncated else PASS, None, ev)


def _pair_check(prop: str, sources, targets, labels, lo: int, max_degree: int | None,
                max_length: int | None, swap: bool = False) -> CertReport:
    """ext^i(source, target<j>) != 0 => i == j for i >= lo (up to max_degree)."""
    complete = True
    ev = {}
    for lam, m in enumerate(sources):
        prof = ext_profile(m, targets, max_degree, max_length)
        complete &= prof.complete
        for mu, t in enumerate(prof.tables):
            key = (mu, lam) if swap else (lam, mu)
            ev[f"{labels[key[0]]},{labels[key[1]]}"] = [[i, j, v] for (i, j), v in sorted(t.entries.items())]
            bad = _diagonal_violation(t, lo)
            if bad is not None:
                i, j, v = bad
                w = {"lambda": labels[key[0]], "mu": labels[key[1]], "i": i, "j": j, "dim": v}
                return CertReport(prop, FAIL, w, ev)
    return CertReport(prop, PASS if complete else INCONCLUSIVE, None, ev)


def certify_q_koszul(q: QHStructure | GradedAlgebra, n: int | None = None, poset: WeightPoset | None = None,
                     max_length: int | None = None) -> CertReport:
    """n-Q-Koszul (``n=None``: all degrees, up to truncation).

    Accepts an algebra for which only A_0 need be quasi-hereditary.
    """
    if isinstance(q, GradedAlgebra):
        a = q
        poset = poset or WeightPoset.of_algebra(a)
        deltas, nablas = _a0_modules(a, poset)
    else:
        a, poset = q.algebra, q.poset
        deltas, nablas = q.a0_standards, q.a0_costandards
    prop = "q_koszul" if n is None else f"q_koszul({n})"
    if n == 0:
        return CertReport(prop, PASS)
    rep = _pair_check(prop, deltas, nablas, poset.labels, 1, n, max_length)
    return rep


def certify_standard_q_koszul(q: QHStructure, max_length: int | None = None) -> CertReport:
    labels = q.poset.labels
    a_rep = _pair_check("standard_q_koszul", q.standards, q.grade0_costandards, labels, 0, None, max_length)
    if a_rep.failed:
        a_rep.witness = {"condition": "a", **a_rep.witness}
        return a_rep
    b_rep = _pair_check("standard_q_koszul", q.grade0_standards, q.costandards, labels, 0, None, max_length,
                        swap=True)
    if b_rep.failed:
        b_rep.witness = {"condition": "b", **b_rep.witness}
        return b_rep
    truncated = INCONCLUSIVE in (a_rep.verdict, b_rep.verdict)
    ev = {"a": a_rep.evidence, "b": b_rep.evidence}
    if truncated:
        return CertReport("standard_q_koszul", INCONCLUSIVE, None, ev)
    # a consequence that must hold: ext^n(Delta^0, nabla_0<r>) != 0 => n = r for all n >= 0
    cross = _pair_check("grade0_diagonal", q.grade0_standards, q.grade0_costandards, labels, 0, None, max_length)
    qk = certify_q_koszul(q, None, max_length=max_length)
    ev["cross_check"] = {"grade0_diagonal": cross.verdict, "q_koszul": qk.verdict}
    if cross.failed or qk.failed:
        ev["cross_check"]["toolkit_bug"] = True
    return CertReport("standard_q_koszul", PASS, None, ev)


def certify_quasi_hereditary(a: GradedAlgebra, poset: WeightPoset | None = None, deep: bool = False):
    """(report, structure or None)."""
    try:
        q = build_qh(a, poset, deep=deep)
    except NotQuasiHereditary as exc:
        return CertReport("quasi_hereditary", FAIL, {"criterion": exc.criterion, "detail": str(exc)}), None
    ev = {"dims": [[d.dim, n.dim] for d, n in zip(q.standards, q.costandards)], "deep": q.deep_checked}
    return CertReport("quasi_hereditary", PASS, None, ev), q


# ---------------------------------------------------------------------------
# tight and quadratic


def check_tight(a: GradedAlgebra) -> CertReport:
    f = a.field
    one = f.one
    a1 = [{i: one} for i in a.indices_of_grade(1)]
    cur = span_echelon(a1, f).basis()
    dims = {}
    for n in range(2, a.max_grade + 1):
        cur = span_echelon((a.mul(x, y) for x in a1 for y in cur), f).basis()
        target = a.indices_of_grade(n)
        dims[n] = [len(cur), len(target)]
        if len(cur) != len(target):
            ech = span_echelon(cur, f)
            miss = next(i for i in target if ech.reduce({i: one}))
            return CertReport("tight", FAIL, {"n": n, "element": a.labels[miss]}, {"dims": dims})
    return CertReport("tight", PASS, None, {"dims": dims})


class _TensorPowers:
    """T^n_{A_0}(A_1) built as (T^{n-1} (x)_E A_1) / balancing relations.

    E is spanned by the primitive idempotents; A_1 and A_0 get bases made
    of pieces e_i A_1 e_j and e_i A_0 e_j.
    """

    def __init__(self, a: GradedAlgebra):
        self.a = a
        f = self.f = a.field
        one = f.one
        es = a.primitive_idempotents()
        self.es = es

        def pieces(g):
            out = []
            for i, ei in enumerate(es):
                for j, ej in enumerate(es):
                    vecs = [a.mul(a.mul(ei, {b: one}), ej) for b in a.indices_of_grade(g)]
                    for v in span_echelon(vecs, f).basis():
                        out.append((i, j, v))
            return out

        self.a1 = pieces(1)
        self.a0 = pieces(0)
        self.c1 = Coordinates([v for _, _, v in self.a1], f) if self.a1 else None
        # level n: list of basis keys with (left, right) idempotent labels
        self.levels: dict[int, dict] = {}
        basis1 = [(i, j) for i, j, _ in self.a1]
        self.levels[1] = {
            "lr": basis1,
            "mu": [v for _, _, v in self.a1],
            "pairs": None,
            "ech": None,
            "keep": list(range(len(basis1))),
        }

    def a1_coords(self, v) -> dict:
        return self.c1(v) if v else {}

    def right_act(self, n: int, u: int, x: dict) -> dict:
        """(basis element u of T^n) * x for x in A_0, in T^n coordinates."""
        a = self.a
        if n == 1:
            return self.a1_coords(a.mul(self.a1[u][2], x))
        lev = self.levels[n]
        t, beta = lev["pairs"][lev["keep"][u]]
        w = self.a1_coords(a.mul(self.a1[beta][2], x))
        return self.reduce(n, {lev["pidx"][(t, g)]: c for g, c in w.items() if (t, g) in lev["pidx"]})

    def left_act(self, n: int, x: dict, u: int) -> dict:
        a = self.a
        if n == 1:
            return self.a1_coords(a.mul(x, self.a1[u][2]))
        lev = self.levels[n]
        t, beta = lev["pairs"][lev["keep"][u]]
        w = self.left_act(n - 1, x, t)
        return self.reduce(n, {lev["pidx"][(s, beta)]: c for s, c in w.items() if (s, beta) in lev["pidx"]})

    def reduce(self, n: int, v: dict) -> dict:
        """Pair-space vector at level n -> T^n coordinates."""
        lev = self.levels[n]
        red = lev["ech"].reduce(v)
        return {lev["kpos"][k]: c for k, c in red.items()}

    def tensor(self, n: int, t_vec: dict, beta: int) -> dict:
        """(element of T^{n-1}) (x) (basis element beta of A_1), in T^n coordinates."""
        lev = self.levels[n]
        return self.reduce(n, {lev["pidx"][(t, beta)]: c for t, c in t_vec.items() if (t, beta) in lev["pidx"]})

    def build(self, n: int) -> None:
        if n in self.levels:
            return
        self.build(n - 1)
        a, f = self.a, self.f
        prev = self.levels[n - 1]
        prev_lr = [prev["lr"][k] for k in range(len(prev["keep"]))]
        pairs = []
        for t, (l, r) in enumerate(prev_lr):
            for beta, (i, j, _) in enumerate(self.a1):
                if r == i:
                    pairs.append((t, beta))
        pidx = {pr: k for k, pr in enumerate(pairs)}
        ech = Echelon(f)
        lev = {"pairs": pairs, "pidx": pidx, "ech": ech}
        self.levels[n] = lev
        # balancing: (t x) (x) beta - t (x) (x beta), x in e_r A_0 e_i pieces
        neg = (lambda c: -c) if f.p is None else (lambda c: (-c) % f.p)
        for t, (l, r) in enumerate(prev_lr):
            for (i, j, x) in self.a0:
                if i != r:
                    continue
                tx = self.right_act(n - 1, t, x)
                for beta, (bi, bj, _) in enumerate(self.a1):
                    if bi != j:
                        continue
                    v: dict = {}
                    for s, c in tx.items():
                        k = pidx.get((s, beta))
                        if k is not None:
                            axpy(v, c, {k: f.one}, f.p)
                    xb = self.a1_coords(a.mul(x, self.a1[beta][2]))
                    for g, c in xb.items():
                        k = pidx.get((t, g))
                        if k is not None:
                            axpy(v, neg(c), {k: f.one}, f.p)
                    if v:
                        ech.add(v)
        keep = [k for k in range(len(pairs)) if k not in ech.rows]
        lev["keep"] = keep
        lev["kpos"] = {k: m for m, k in enumerate(keep)}
        lev["lr"] = [(prev_lr[pairs[k][0]][0], self.a1[pairs[k][1]][1]) for k in keep]
        lev["mu"] = [a.mul(prev["mu"][pairs[k][0]], self.a1[pairs[k][1]][2]) for k in keep]

    def dim(self, n: int) -> int:
        self.build(n)
        return len(self.levels[n]["keep"])


def check_quadratic(a: GradedAlgebra) -> CertReport:
    """Kernel of T_{A_0}(A_1) -> A generated in degree 2, for degrees up to top grade + 1."""
    tight = check_tight(a)
    if tight.failed:
        raise TightnessRequired(f"algebra is not tight (witness {tight.witness})")
    f = a.field
    if not a.indices_of_grade(1):
        return CertReport("quadratic", PASS, None, {"note": "A_1 = 0"})
    tp = _TensorPowers(a)
    top = a.max_grade
    kernels: dict[int, list[dict]] = {}
    ideal: dict[int, list[dict]] = {}
    dims = {}
    for n in range(2, top + 2):
        tp.build(n)
        lev = tp.levels[n]
        ker = kernel_vectors(lev["mu"], f)
        kernels[n] = ker
        if n == 2:
            gen = ker
        else:
            gen = []
            for v in ideal[n - 1]:
                for beta in range(len(tp.a1)):
                    w = tp.tensor(n, v, beta)
                    if w:
                        gen.append(w)
            prev2 = range(tp.dim(n - 2)) if n - 2 >= 1 else []
            for t in prev2:
                for k in kernels[2]:
                    acc: dict = {}
                    lev2 = tp.levels[2]
                    for idx, c in k.items():
                        b1, b2 = lev2["pairs"][lev2["keep"][idx]]
                        left = tp.tensor(n - 1, {t: f.one}, b1)
                        w = tp.tensor(n, left, b2)
                        axpy(acc, c, w, f.p)
                    if acc:
                        gen.append(acc)
        ideal[n] = span_echelon(gen, f).basis()
        dims[n] = {"T": len(lev["keep"]), "K": len(ker), "generated": len(ideal[n])}
        if len(ideal[n]) != len(ker):
            ech = span_echelon(ideal[n], f)
            w = next(v for v in ker if ech.reduce(v))
            return CertReport("quadratic", FAIL, {"n": n, "kernel_element": _fmt_tensor(tp, n, w)}, {"dims": dims})
    return CertReport("quadratic", PASS, None, {"dims": dims})


def _fmt_tensor(tp: _TensorPowers, n: int, v: dict) -> str:
    def words(level, idx):
        if level == 1:
            return [tp.a.fmt(tp.a1[idx][2])]
        lev = tp.levels[level]
        t, beta = lev["pairs"][lev["keep"][idx]]
        return words(level - 1, t) + [tp.a.fmt(tp.a1[beta][2])]

    parts = []
    for idx, c in sorted(v.items()):
        parts.append(f"{tp.f.fmt(c)}*[" + " (x) ".join(words(n, idx)) + "]")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# audit


@dataclass
class AuditReport:
    reports: dict[str, CertReport]
    violations: list[str]

    def to_json(self) -> dict:
        return {
            "reports": {k: r.to_json() for k, r in sorted(self.reports.items())},
            "violations": self.violations,
        }


def implication_audit(a: GradedAlgebra, poset: WeightPoset | None = None, max_length: int | None = None,
                      deep: bool = False) -> AuditReport:
    """Run every certifier and check the implications between their verdicts."""
    reps: dict[str, CertReport] = {}
    reps["tight"] = check_tight(a)
    try:
        reps["quadratic"] = check_quadratic(a)
    except TightnessRequired as exc:
        reps["quadratic"] = CertReport("quadratic", FAIL, {"reason": str(exc)})
    reps["koszul"] = certify_koszul(a, max_length)
    if poset is None and a.poset is not None:
        poset = WeightPoset.of_algebra(a)
    q = None
    if poset is not None:
        qh, q = certify_quasi_hereditary(a, poset, deep)
        reps["quasi_hereditary"] = qh
        try:
            target = q if q is not None else a
            for n in (1, 2):
                reps[f"q_koszul({n})"] = certify_q_koszul(target, n, poset, max_length)
            reps["q_koszul"] = certify_q_koszul(target, None, poset, max_length)
        except A0NotQuasiHereditary as exc:
            reps["q_koszul"] = CertReport("q_koszul", FAIL, {"criterion": exc.criterion, "detail": str(exc)})
        if q is not None:
            reps["standard_koszul"] = certify_standard_koszul(q, max_length)
            reps["standard_q_koszul"] = certify_standard_q_koszul(q, max_length)
    viol = []

    def imp(lhs, rhs, why):
        l, r = reps.get(lhs), reps.get(rhs)
        if l is not None and r is not None and l.passed and r.failed:
            viol.append(f"TOOLKIT BUG: {lhs} passed but {rhs} failed ({why})")

    imp("q_koszul(1)", "tight", "1-Q-Koszul implies tight")
    imp("q_koszul(2)", "quadratic", "2-Q-Koszul implies quadratic")
    imp("standard_q_koszul", "q_koszul", "standard Q-Koszul implies Q-Koszul")
    if q is not None and _a0_semisimple(a):
        imp("koszul", "q_koszul", "Koszul implies Q-Koszul")
    imp("standard_koszul", "standard_q_koszul", "standard Koszul implies standard Q-Koszul")
    imp("standard_koszul", "koszul", "standard Koszul implies Koszul")
    sq = reps.get("standard_q_koszul")
    if sq is not None and sq.evidence.get("cross_check", {}).get("toolkit_bug"):
        viol.append("TOOLKIT BUG: standard Q-Koszul pass without the grade-0 diagonal vanishing")
    return AuditReport(reps, viol)


VECTOR_PROPERTIES = ("quasi_hereditary", "positively_graded", "koszul", "standard_koszul", "q_koszul",
                     "standard_q_koszul")


def verdict_vector(a: GradedAlgebra, poset: WeightPoset | None = None,
                   max_length: int | None = None) -> dict[str, str]:
    """The six verdicts that graded Morita equivalence preserves."""
    if poset is None:
        poset = WeightPoset.of_algebra(a)
    out = {"positively_graded": PASS if min(a.grades, default=0) >= 0 else FAIL}
    qh, q = certify_quasi_hereditary(a, poset)
    out["quasi_hereditary"] = qh.verdict
    out["koszul"] = certify_koszul(a, max_length).verdict
    try:
        out["q_koszul"] = certify_q_koszul(q if q is not None else a, None, poset, max_length).verdict
    except A0NotQuasiHereditary:
        out["q_koszul"] = FAIL
    if q is None:
        out["standard_koszul"] = out["standard_q_koszul"] = FAIL
    else:
        out["standard_koszul"] = certify_standard_koszul(q, max_length).verdict
        out["standard_q_koszul"] = certify_standard_q_koszul(q, max_length).verdict
    return {k: out[k] for k in VECTOR_PROPERTIES}
