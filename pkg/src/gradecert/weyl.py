"""Finite and affine Weyl group combinatorics.

Elements are affine maps ``c -> M c + t`` on coordinates ``c_i = <x, alpha_i>``
of a real vector space in which the coroot lattice acts by translation.
Two elements are equal iff the maps are equal, so ``(M, t)`` is a canonical
form.  Lengths come from counting the affine root hyperplanes separating a
generic point ``x0`` of the fundamental alcove from its image, which makes
every descent test exact and independent of any finite window.

Words are written as products, ``"s2.s1"`` meaning ``s2 * s1``; ``"e"`` is
the identity and ``s0`` is the affine reflection.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import ConventionMismatch, ElementNotInPoset, IntervalEscapesBall, UncertifiedAtRadius

# ---------------------------------------------------------------------------
# root data


def cartan_matrix(kind: str, n: int) -> list[list[int]]:
    """Cartan matrix with ``A[i][j] = <alpha_i^vee, alpha_j>`` (Bourbaki numbering)."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if kind == "A" and n >= 1:
        for i in range(1, n):
            link(i, i + 1)
    elif kind == "B" and n >= 2:
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 1, n, -1, -2)
    elif kind == "C" and n >= 2:
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 1, n, -2, -1)
    elif kind == "D" and n >= 4:
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif kind == "E" and n in (6, 7, 8):
        link(1, 3)
        link(3, 4)
        link(2, 4)
        for i in range(4, n):
            link(i, i + 1)
    elif kind == "F" and n == 4:
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    elif kind == "G" and n == 2:
        link(1, 2, -3, -1)
    else:
        raise ValueError(f"unknown Cartan type {kind}{n}")
    return a


_TYPE_RE = re.compile(r"^\s*(~?)([A-Ga-g])_?(\d+)(~?)\s*$")


def parse_type(s: str) -> tuple[str, int, bool]:
    """``"A2"`` -> ("A", 2, False); ``"A1~"`` or ``"~A1"`` -> affine."""
    m = _TYPE_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse Cartan type {s!r}")
    return m.group(2).upper(), int(m.group(3)), bool(m.group(1) or m.group(4))


@dataclass
class RootDatum:
    kind: str
    rank: int
    affine: bool = False
    cartan: list[list[int]] = field(init=False)
    positive_roots: list[tuple[int, ...]] = field(init=False)  # simple-root coordinates
    positive_coroots: list[tuple[int, ...]] = field(init=False)  # matching simple-coroot coordinates

    def __post_init__(self):
        self.cartan = cartan_matrix(self.kind, self.rank)
        n, a = self.rank, self.cartan
        simple = [(tuple(int(i == k) for k in range(n)), tuple(int(i == k) for k in range(n))) for i in range(n)]
        seen = set(simple)
        todo = list(simple)
        while todo:
            nxt = []
            for r, rv in todo:
                for i in range(n):
                    pr = sum(r[j] * a[i][j] for j in range(n))  # <alpha_i^vee, alpha>
                    pv = sum(rv[j] * a[j][i] for j in range(n))  # <alpha^vee, alpha_i>
                    r2 = tuple(r[k] - (pr if k == i else 0) for k in range(n))
                    v2 = tuple(rv[k] - (pv if k == i else 0) for k in range(n))
                    if (r2, v2) not in seen:
                        seen.add((r2, v2))
                        nxt.append((r2, v2))
            todo = nxt
        pos = sorted(((r, v) for r, v in seen if all(x >= 0 for x in r)), key=lambda p: (sum(p[0]), p[0]))
        self.positive_roots = [r for r, _ in pos]
        self.positive_coroots = [v for _, v in pos]

    @classmethod
    def of(cls, name: str) -> "RootDatum":
        kind, n, aff = parse_type(name)
        return cls(kind, n, aff)

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}" + ("~" if self.affine else "")

    @property
    def simple_roots(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == k) for k in range(self.rank)) for i in range(self.rank)]

    @property
    def highest_root(self) -> tuple[int, ...]:
        return max(self.positive_roots, key=sum)

    @property
    def highest_coroot_of_highest_root(self) -> tuple[int, ...]:
        return self.positive_coroots[self.positive_roots.index(self.highest_root)]

    @property
    def coxeter_number(self) -> int:
        return sum(self.highest_root) + 1

    def root_length2(self, root: Sequence[int]) -> Fraction:
        """Squared length, normalised so short simple roots have length 1."""
        d = self._symmetriser()
        n = self.rank
        return sum(Fraction(root[i] * root[j]) * d[i] * self.cartan[i][j] / 2 for i in range(n) for j in range(n))

    def _symmetriser(self) -> list[Fraction]:
        # (alpha_i, alpha_i) = d_i with d_i A_ij = d_j A_ji
        n, a = self.rank, self.cartan
        d: list[Fraction | None] = [None] * n
        d[0] = Fraction(1)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                for j in range(n):
                    if d[i] is not None and d[j] is None and a[i][j]:
                        d[j] = d[i] * a[i][j] / a[j][i]
                        changed = True
        m = min(d)
        return [x / m for x in d]

    @property
    def highest_short_root(self) -> tuple[int, ...]:
        short = min(self.root_length2(r) for r in self.positive_roots)
        return max((r for r in self.positive_roots if self.root_length2(r) == short), key=sum)

    @property
    def rho(self) -> tuple[int, ...]:
        """Half the sum of positive roots, in fundamental-weight coordinates."""
        return tuple(1 for _ in range(self.rank))

    def coroot_of(self, root: Sequence[int]) -> tuple[int, ...]:
        return self.positive_coroots[self.positive_roots.index(tuple(root))]

    def pair(self, weight: Sequence[int], coroot: Sequence[int]) -> int:
        """``<weight, coroot>`` for a weight in fundamental-weight coordinates."""
        return sum(w * c for w, c in zip(weight, coroot))


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class CoxElement:
    mat: tuple[tuple[int, ...], ...]
    trans: tuple[int, ...]
    group: "CoxeterGroup" = field(compare=False, hash=False, repr=False)

    def __mul__(self, other: "CoxElement") -> "CoxElement":
        return self.group.mul(self, other)

    @property
    def length(self) -> int:
        return self.group.length(self)

    def inverse(self) -> "CoxElement":
        return self.group.inverse(self)

    @property
    def word(self) -> str:
        return self.group.word(self)

    def __repr__(self):
        return f"<{self.word}>"


class CoxeterGroup:
    """The finite Weyl group of a root datum, or its affine Weyl group."""

    def __init__(self, datum: RootDatum | str):
        if isinstance(datum, str):
            datum = RootDatum.of(datum)
        self.datum = datum
        n = datum.rank
        a = datum.cartan
        self.rank = n
        self.affine = datum.affine
        self._h = datum.coxeter_number
        gens: dict[str, CoxElement] = {}
        if self.affine:
            th = datum.highest_root
            thv = datum.highest_coroot_of_highest_root
            u = [sum(thv[i] * a[i][j] for i in range(n)) for j in range(n)]
            m0 = tuple(tuple(int(j == k) - u[j] * th[k] for k in range(n)) for j in range(n))
            gens["s0"] = CoxElement(m0, tuple(u), self)
        for i in range(n):
            m = tuple(tuple(int(j == k) - (a[i][j] if k == i else 0) for k in range(n)) for j in range(n))
            gens[f"s{i + 1}"] = CoxElement(m, (0,) * n, self)
        self.gens = gens
        self.gen_names = list(gens)
        self.identity = CoxElement(tuple(tuple(int(j == k) for k in range(n)) for j in range(n)), (0,) * n, self)
        self._len_cache: dict = {}

    @property
    def name(self) -> str:
        return self.datum.name

    def mul(self, x: CoxElement, y: CoxElement) -> CoxElement:
        n = self.rank
        m = tuple(tuple(sum(x.mat[i][k] * y.mat[k][j] for k in range(n)) for j in range(n)) for i in range(n))
        t = tuple(sum(x.mat[i][k] * y.trans[k] for k in range(n)) + x.trans[i] for i in range(n))
        return CoxElement(m, t, self)

    def inverse(self, x: CoxElement) -> CoxElement:
        w = self.identity
        for s in reversed(self.word_list(x)):
            w = self.mul(w, self.gens[s])
        return w

    def length(self, x: CoxElement) -> int:
        key = (x.mat, x.trans)
        got = self._len_cache.get(key)
        if got is not None:
            return got
        n, h = self.rank, self._h
        y = [sum(x.mat[i]) + h * x.trans[i] for i in range(n)]  # h * (x . x0)
        tot = 0
        for r in self.datum.positive_roots:
            v = sum(r[i] * y[i] for i in range(n))
            tot += abs(v // h)
        self._len_cache[key] = tot
        return tot

    def s(self, name: str) -> CoxElement:
        return self.gens[name]

    def left_descent(self, x: CoxElement, s: str) -> bool:
        return self.length(self.mul(self.gens[s], x)) < self.length(x)

    def right_descent(self, x: CoxElement, s: str) -> bool:
        return self.length(self.mul(x, self.gens[s])) < self.length(x)

    def word_list(self, x: CoxElement) -> list[str]:
        out = []
        lx = self.length(x)
        while lx:
            for s in self.gen_names:
                y = self.mul(self.gens[s], x)
                ly = self.length(y)
                if ly < lx:
                    out.append(s)
                    x, lx = y, ly
                    break
        return out

    def word(self, x: CoxElement) -> str:
        w = self.word_list(x)
        return ".".join(w) if w else "e"

    def from_word(self, word: str | Iterable[str]) -> CoxElement:
        if isinstance(word, str):
            parts = [p for p in re.split(r"[.\s*]+", word.strip()) if p and p != "e"]
        else:
            parts = list(word)
        x = self.identity
        for p in parts:
            if p not in self.gens:
                raise ValueError(f"unknown generator {p!r} for {self.name}")
            x = self.mul(x, self.gens[p])
        return x

    def check_subset(self, j: Iterable[str]) -> list[str]:
        j = sorted(set(j), key=self.gen_names.index) if j else []
        for s in j:
            if s not in self.gens:
                raise ValueError(f"unknown generator {s!r} for {self.name}")
        if self.affine and len(j) == len(self.gen_names):
            raise ValueError("the parabolic subgroup on all affine generators is infinite")
        return j

    def parabolic(self, j: Iterable[str]) -> list[CoxElement]:
        """All elements of the finite parabolic subgroup ``W_J``."""
        j = self.check_subset(j)
        seen = {self.identity}
        todo = [self.identity]
        while todo:
            nxt = []
            for x in todo:
                for s in j:
                    y = self.mul(x, self.gens[s])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            todo = nxt
        return sorted(seen, key=lambda e: (self.length(e), self.word(e)))

    def longest(self, j: Iterable[str]) -> CoxElement:
        """The longest element ``w_J`` of a finite parabolic subgroup."""
        j = self.check_subset(j)
        x = self.identity
        grew = True
        while grew:
            grew = False
            for s in j:
                if not self.right_descent(x, s):
                    x = self.mul(x, self.gens[s])
                    grew = True
        return x

    def bruhat_le(self, x: CoxElement, w: CoxElement) -> bool:
        return _bruhat(self, x, w)


@lru_cache(maxsize=None)
def _bruhat(g: CoxeterGroup, x: CoxElement, w: CoxElement) -> bool:
    lx, lw = g.length(x), g.length(w)
    if lx > lw:
        return False
    if lw == 0:
        return lx == 0
    if lx == lw:
        return x == w
    for s in g.gen_names:
        sw = g.mul(g.gens[s], w)
        if g.length(sw) < lw:
            sx = g.mul(g.gens[s], x)
            lo = sx if g.length(sx) < lx else x
            return _bruhat(g, lo, sw)
    raise AssertionError("non-identity element without a left descent")


# ---------------------------------------------------------------------------
# balls


@dataclass
class CoxBall:
    group: CoxeterGroup
    radius: int
    elements: list[CoxElement]

    def __post_init__(self):
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __contains__(self, x: CoxElement) -> bool:
        return x in self._index

    def __len__(self) -> int:
        return len(self.elements)

    def le(self, x: CoxElement, w: CoxElement) -> bool:
        return self.group.bruhat_le(x, w)

    def bruhat(self) -> list[tuple[CoxElement, CoxElement]]:
        return [(x, w) for x in self.elements for w in self.elements if self.le(x, w)]

    def edges(self) -> list[tuple[CoxElement, CoxElement]]:
        """Covering relations x < w with l(w) = l(x) + 1."""
        g = self.group
        return [(x, w) for w in self.elements for x in self.elements
                if g.length(x) + 1 == g.length(w) and self.le(x, w)]

    def by_word(self, word: str) -> CoxElement:
        x = self.group.from_word(word)
        if x not in self:
            raise ElementNotInPoset(f"{word} is not in the ball of radius {self.radius}")
        return x


def ball(group: CoxeterGroup | str, radius: int) -> CoxBall:
    """All elements of length at most ``radius`` (breadth-first, deduplicated)."""
    if isinstance(group, str):
        group = CoxeterGroup(group)
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    layer = [group.identity]
    seen = {group.identity}
    out = [group.identity]
    for _ in range(radius):
        nxt = []
        for x in layer:
            for s in group.gen_names:
                y = group.mul(x, group.gens[s])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            break
        nxt.sort(key=group.word)
        out += nxt
        layer = nxt
    return CoxBall(group, radius, out)


# ---------------------------------------------------------------------------
# cosets


@dataclass
class CosetRep:
    element: CoxElement
    certificate: dict[str, int]  # generator -> length of the neighbour


def _is_min(g: CoxeterGroup, x: CoxElement, j: Sequence[str], side: str) -> bool:
    desc = g.left_descent if side == "left" else g.right_descent
    return not any(desc(x, s) for s in j)


def _is_max(g: CoxeterGroup, x: CoxElement, j: Sequence[str], side: str) -> bool:
    desc = g.left_descent if side == "left" else g.right_descent
    return all(desc(x, s) for s in j)


def coset_reps(b: CoxBall, j: Iterable[str], side: str = "left", extremal: str = "min") -> list[CosetRep]:
    """Extremal representatives of the cosets ``W_J x`` (side left) or ``x W_J`` (side right).

    Only representatives inside the ball are returned; a maximal
    representative is listed exactly when its whole coset lies in the ball.
    """
    g = b.group
    j = g.check_subset(j)
    if side not in ("left", "right") or extremal not in ("min", "max"):
        raise ValueError("side must be left|right and extremal min|max")
    if extremal == "max":
        need = g.length(g.longest(j))
        if need > b.radius:
            raise UncertifiedAtRadius(f"w_J does not fit in the ball of radius {b.radius}", need)
    test = _is_min if extremal == "min" else _is_max
    out = []
    for x in b.elements:
        if test(g, x, j, side):
            nb = {s: g.length(g.mul(g.gens[s], x) if side == "left" else g.mul(x, g.gens[s])) for s in j}
            out.append(CosetRep(x, nb))
    return out


@dataclass
class DoubleCoset:
    min_rep: CoxElement
    max_rep: CoxElement
    regular: bool
    size: int
    in_ball: bool  # the whole double coset lies in the ball


def is_regular(g: CoxeterGroup, j1: Sequence[str], d: CoxElement, j2: Sequence[str]) -> bool:
    """Whether ``d^-1 W_J1 d`` meets ``W_J2`` only in the identity."""
    w2 = set(g.parabolic(j2))
    dinv = g.inverse(d)
    for z in g.parabolic(j1):
        if z != g.identity and g.mul(g.mul(dinv, z), d) in w2:
            return False
    return True


def double_coset_max(g: CoxeterGroup, j1: Sequence[str], d: CoxElement, j2: Sequence[str]) -> CoxElement:
    x = d
    grew = True
    while grew:
        grew = False
        for s in j1:
            if not g.left_descent(x, s):
                x = g.mul(g.gens[s], x)
                grew = True
        for s in j2:
            if not g.right_descent(x, s):
                x = g.mul(x, g.gens[s])
                grew = True
    return x


def regular_double_cosets(b: CoxBall, j1: Iterable[str], j2: Iterable[str]) -> list[DoubleCoset]:
    """Double cosets ``W_J1 d W_J2`` with distinguished representative ``d`` in the ball."""
    g = b.group
    j1, j2 = g.check_subset(j1), g.check_subset(j2)
    w1, w2 = g.longest(j1), g.longest(j2)
    need = g.length(w1) + g.length(w2)
    if need > b.radius:
        raise UncertifiedAtRadius(f"w_J1 w_J2 does not fit in the ball of radius {b.radius}", need)
    p1, p2 = g.parabolic(j1), g.parabolic(j2)
    out = []
    for d in b.elements:
        if not (_is_min(g, d, j1, "left") and _is_min(g, d, j2, "right")):
            continue
        reg = is_regular(g, j1, d, j2)
        if reg:
            top = g.mul(g.mul(w1, d), w2)
            if g.length(top) != g.length(w1) + g.length(d) + g.length(w2):
                raise AssertionError("length additivity fails on a regular double coset")
            size = len(p1) * len(p2)
        else:
            top = double_coset_max(g, j1, d, j2)
            size = len({g.mul(g.mul(u, d), v) for u in p1 for v in p2})
        out.append(DoubleCoset(d, top, reg, size, g.length(top) <= b.radius))
    return out


# ---------------------------------------------------------------------------
# the Psi correspondence and the parabolic-singular posets


def psi(g: CoxeterGroup, x: CoxElement, mu: Iterable[str], nu: Iterable[str]) -> CoxElement:
    """``y = w_mu x^-1 w_nu``."""
    return g.mul(g.mul(g.longest(mu), g.inverse(x)), g.longest(nu))


CONVENTIONS = ("right", "left")


def in_minus_a(g: CoxeterGroup, x: CoxElement, mu, nu, convention: str = "right") -> bool:
    """Characterisation (a) of the minus poset: a descent condition on ``x w_mu``.

    ``convention`` fixes how ``I_J^max`` and ``I_J^min`` are read: "right"
    takes cosets ``z W_J``, "left" takes cosets ``W_J z``.
    """
    z = g.mul(x, g.longest(mu))
    if convention == "right":
        # z^-1 maximal in z^-1 W_nu  and  z minimal in z W_mu
        return _is_max(g, z, nu, "left") and _is_min(g, z, mu, "right")
    return _is_max(g, z, nu, "right") and _is_min(g, z, mu, "left")


def in_plus_a(g: CoxeterGroup, y: CoxElement, mu, nu, convention: str = "right") -> bool:
    """Characterisation (a) of the plus poset: a descent condition on ``y w_nu``."""
    z = g.mul(y, g.longest(nu))
    if convention == "right":
        # z^-1 minimal in z^-1 W_mu  and  z maximal in z W_nu
        return _is_min(g, z, mu, "left") and _is_max(g, z, nu, "right")
    return _is_min(g, z, mu, "right") and _is_max(g, z, nu, "left")


@dataclass
class SubPoset:
    """A finite subset of a ball with Bruhat (``opposite=False``) or opposite Bruhat order."""

    group: CoxeterGroup
    elements: list[CoxElement]
    opposite: bool
    label: str = ""

    def __contains__(self, x) -> bool:
        return x in set(self.elements)

    def le(self, x: CoxElement, y: CoxElement) -> bool:
        return self.group.bruhat_le(y, x) if self.opposite else self.group.bruhat_le(x, y)

    def edges(self) -> list[tuple[CoxElement, CoxElement]]:
        els = self.elements
        rel = {(x, y) for x in els for y in els if x != y and self.le(x, y)}
        return sorted(((x, y) for x, y in rel
                       if not any((x, z) in rel and (z, y) in rel for z in els)),
                      key=lambda e: (self.group.length(e[0]), e[0].word, self.group.length(e[1]), e[1].word))


def parabolic_singular_posets(b: CoxBall, mu: Iterable[str], nu: Iterable[str], sign: str,
                              convention: str = "right") -> SubPoset:
    """The minus poset ``I^nu_{mu,-}`` or the plus poset ``I^mu_{nu,+}`` inside the ball.

    Computed twice, from the double-coset description and from the descent
    description on ``x w_mu`` (resp. ``y w_nu``); the two must agree.  The
    window is the set of elements whose regular double coset lies entirely
    in the ball, which for the plus side means ``w_nu y^-1 w_mu`` is in the
    ball as well.
    """
    g = b.group
    mu, nu = g.check_subset(mu), g.check_subset(nu)
    if sign not in ("-", "+"):
        raise ValueError("sign must be '-' or '+'")
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    wmu, wnu = g.longest(mu), g.longest(nu)
    if sign == "-":
        via_b = {c.max_rep for c in regular_double_cosets(b, nu, mu) if c.regular and c.in_ball}
        via_a = {x for x in b.elements if in_minus_a(g, x, mu, nu, convention)}
    else:
        via_b = {c.min_rep for c in regular_double_cosets(b, mu, nu) if c.regular and c.in_ball}
        via_a = {y for y in b.elements
                 if g.mul(g.mul(wnu, g.inverse(y)), wmu) in b and in_plus_a(g, y, mu, nu, convention)}
    if via_a != via_b:
        witness = sorted(via_a ^ via_b, key=lambda e: (g.length(e), g.word(e)))[0]
        side = "descent description only" if witness in via_a else "double-coset description only"
        raise ConventionMismatch(
            f"{g.name} mu={mu} nu={nu} sign {sign} ({convention} cosets): "
            f"{g.word(witness)} appears in the {side}")
    els = sorted(via_b, key=lambda e: (g.length(e), g.word(e)))
    return SubPoset(g, els, opposite=(sign == "+"), label=f"I({','.join(nu)}|{','.join(mu)},{sign})")


def poset_ideal(poset: SubPoset, w: CoxElement) -> SubPoset:
    """All elements below ``w`` in the poset's own order."""
    if w not in poset:
        raise ElementNotInPoset(f"{w.word} is not in the poset")
    return SubPoset(poset.group, [x for x in poset.elements if poset.le(x, w)], poset.opposite, poset.label)


def is_anti_isomorphism(f: Callable[[CoxElement], CoxElement], p: SubPoset, q: SubPoset) -> bool:
    """``f`` is a bijection ``p -> q`` with ``x <= x'`` iff ``f(x') <= f(x)``."""
    img = [f(x) for x in p.elements]
    if len(set(img)) != len(img) or set(img) != set(q.elements):
        return False
    return all(p.le(x, y) == q.le(fy, fx)
               for x, fx in zip(p.elements, img) for y, fy in zip(p.elements, img))


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig polynomials


def _padd(a: list[int], b: Sequence[int], shift: int = 0, sign: int = 1) -> list[int]:
    if len(a) < len(b) + shift:
        a.extend([0] * (len(b) + shift - len(a)))
    for i, c in enumerate(b):
        a[i + shift] += sign * c
    return a


def _ptrim(a: Sequence[int]) -> tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


@dataclass
class KLTable:
    ball: CoxBall
    entries: dict[tuple[CoxElement, CoxElement], tuple[int, ...]]

    def get(self, x: CoxElement, w: CoxElement) -> tuple[int, ...]:
        if w not in self.ball or x not in self.ball:
            raise IntervalEscapesBall(f"[{x.word}, {w.word}] is not inside the ball of radius {self.ball.radius}")
        return self.entries.get((x, w), ())

    def mu(self, x: CoxElement, w: CoxElement) -> int:
        """Coefficient of ``q^((l(w)-l(x)-1)/2)`` in ``P_{x,w}``."""
        g = self.ball.group
        d = g.length(w) - g.length(x) - 1
        if d < 0 or d % 2:
            return 0
        p = self.get(x, w)
        return p[d // 2] if d // 2 < len(p) else 0

    def to_csv(self) -> str:
        g = self.ball.group
        rows = sorted(((g.length(w), w.word, g.length(x), x.word, p) for (x, w), p in self.entries.items()))
        lines = ["x,w,coefficients"]
        lines += [f"{xw},{ww},{' '.join(map(str, p))}" for _, ww, _, xw, p in rows]
        return "\n".join(lines) + "\n"


def kl_polynomials(b: CoxBall) -> KLTable:
    """``P_{x,w}`` for all ``x <= w`` in the ball, by the standard descent recursion."""
    g = b.group
    els = sorted(b.elements, key=lambda e: (g.length(e), g.word(e)))
    below = {w: [x for x in els if g.bruhat_le(x, w)] for w in els}
    P: dict[tuple[CoxElement, CoxElement], tuple[int, ...]] = {}
    mu: dict[tuple[CoxElement, CoxElement], int] = {}

    def get(x, w):
        return P.get((x, w), ())

    for w in els:
        lw = g.length(w)
        P[(w, w)] = (1,)
        if lw == 0:
            continue
        s = next(t for t in g.gen_names if g.left_descent(w, t))
        sg = g.gens[s]
        v = g.mul(sg, w)
        zs = [z for z in below[v] if z != v and g.left_descent(z, s) and mu.get((z, v), 0)]
        for x in below[w]:
            if x == w:
                continue
            sx = g.mul(sg, x)
            c = 1 if g.length(sx) < g.length(x) else 0
            acc: list[int] = []
            _padd(acc, get(sx, v), 1 - c)
            _padd(acc, get(x, v), c)
            for z in zs:
                if g.bruhat_le(x, z):
                    k = lw - g.length(z)
                    _padd(acc, get(x, z), k // 2, -mu[(z, v)])
            p = _ptrim(acc)
            P[(x, w)] = p
            d = lw - g.length(x) - 1
            if d % 2 == 0 and d // 2 < len(p) and p[d // 2]:
                mu[(x, w)] = p[d // 2]
    return KLTable(b, P)


# ---------------------------------------------------------------------------
# weight predicates


@dataclass
class WeightPredicates:
    datum: RootDatum
    p: int

    @property
    def coxeter_number(self) -> int:
        return self.datum.coxeter_number

    @property
    def ell_of_p(self) -> int:
        return 4 if self.p == 2 else self.p

    def _shifted(self, lam: Sequence[int]) -> list[int]:
        if len(lam) != self.datum.rank:
            raise ValueError(f"weight needs {self.datum.rank} coordinates")
        return [l + r for l, r in zip(lam, self.datum.rho)]

    def is_p_regular(self, lam: Sequence[int]) -> bool:
        lr = self._shifted(lam)
        return all(self.datum.pair(lr, cv) % self.p for cv in self.datum.positive_coroots)

    def jantzen_value(self, lam: Sequence[int]) -> int:
        return self.datum.pair(self._shifted(lam), self.datum.coroot_of(self.datum.highest_short_root))

    def in_jantzen_region(self, lam: Sequence[int]) -> bool:
        if any(l < 0 for l in lam):
            return False
        return self.jantzen_value(lam) <= self.p * (self.p - self.coxeter_number + 2)

    def is_restricted(self, lam: Sequence[int]) -> bool:
        return all(0 <= l < self.p for l in lam)

    def dominance_le(self, lam: Sequence[int], mu: Sequence[int]) -> bool:
        """``mu - lam`` is a nonnegative integer combination of simple roots."""
        diff = [Fraction(m - l) for l, m in zip(lam, mu)]
        c = _solve_int(self.datum.cartan, diff)
        return c is not None and all(x >= 0 for x in c)

    def gamma_res_reg_members(self, bound: int) -> list[tuple[int, ...]]:
        """p-regular dominant weights (coordinates <= bound) below some restricted p-regular weight."""
        n = self.datum.rank
        tops = [lam for lam in itertools.product(range(self.p), repeat=n) if self.is_p_regular(lam)]
        out = []
        for lam in itertools.product(range(bound + 1), repeat=n):
            if self.is_p_regular(lam) and any(self.dominance_le(lam, t) for t in tops):
                out.append(lam)
        return out


def _solve_int(a: list[list[int]], w: list[Fraction]) -> list[Fraction] | None:
    """Solve ``sum_j c_j alpha_j = w`` where ``alpha_j`` has weight coordinates ``A[i][j]``."""
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [w[i]] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col])
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    c = [m[i][n] for i in range(n)]
    if any(x.denominator != 1 for x in c):
        return None
    return c


def weight_predicates(datum: RootDatum | str, p: int) -> WeightPredicates:
    if isinstance(datum, str):
        datum = RootDatum.of(datum)
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return WeightPredicates(datum, p)
