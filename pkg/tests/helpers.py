"""Independent oracles and shared fixtures for the test modules."""

from __future__ import annotations

import itertools

from sympy import GF as SymGF
from sympy import QQ as SymQQ
from sympy.polys.matrices import DomainMatrix


def ext1_by_extensions(m, n, j=None):
    """dim ext^1(m, n<j>) from derivations A -> Hom(m, n) modulo inner ones.

    A derivation is exactly the off-diagonal block of a module structure
    on m + n with m as quotient and n as submodule.  Linear algebra is done
    with sympy, so this shares nothing with the resolution code.
    """
    a = m.algebra
    dom = SymQQ if a.field.p is None else SymGF(a.field.p)
    dm, dn = m.dim, n.dim

    def conv(c):
        return dom.convert(int(c)) if a.field.p is not None else dom.convert(c.numerator) / dom.convert(c.denominator)

    # unknowns delta(b_i)[kn, km], restricted to degree-j maps when graded
    def allowed(i, km, kn):
        return j is None or n.grades[kn] == m.grades[km] + a.grades[i] - j

    unk = [(i, km, kn) for i in range(a.dim) for km in range(dm) for kn in range(dn) if allowed(i, km, kn)]
    pos = {u: t for t, u in enumerate(unk)}
    rows = []
    # delta(b_i b_j) - b_i delta(b_j) - delta(b_i) b_j = 0, entry (kn, km)
    for x in range(a.dim):
        for y in range(a.dim):
            prod = a.table.get((x, y), {})
            for km in range(dm):
                for kn in range(dn):
                    row = [dom.zero] * len(unk)
                    for z, c in prod.items():
                        if (z, km, kn) in pos:
                            row[pos[(z, km, kn)]] += conv(c)
                    # b_x delta(b_y): sum over kn2 of n.image(x, kn2)[kn] * delta(b_y)[kn2, km]
                    for kn2 in range(dn):
                        c = n.image(x, kn2).get(kn)
                        if c and (y, km, kn2) in pos:
                            row[pos[(y, km, kn2)]] -= conv(c)
                    # delta(b_x) b_y: sum over km2 of delta(b_x)[kn, km2] * m.image(y, km)[km2]
                    for km2, c in m.image(y, km).items():
                        if (x, km2, kn) in pos:
                            row[pos[(x, km2, kn)]] -= conv(c)
                    if any(row):
                        rows.append(row)
    rank_z = DomainMatrix(rows, (len(rows), len(unk)), dom).rank() if rows else 0
    cocycles = len(unk) - rank_z
    # inner derivations a -> a f - f a for f in Hom_k(m, n<j>) of degree 0
    fs = [(km, kn) for km in range(dm) for kn in range(dn) if j is None or n.grades[kn] == m.grades[km] - j]
    cols = []
    for km0, kn0 in fs:
        vec = [dom.zero] * len(unk)
        for i in range(a.dim):
            # (b_i f)[kn, km0] = n.image(i, kn0)[kn]
            for kn, c in n.image(i, kn0).items():
                if (i, km0, kn) in pos:
                    vec[pos[(i, km0, kn)]] += conv(c)
            # (f b_i)[kn0, km] = m.image(i, km)[km0]
            for km in range(dm):
                c = m.image(i, km).get(km0)
                if c and (i, km, kn0) in pos:
                    vec[pos[(i, km, kn0)]] -= conv(c)
        cols.append(vec)
    rank_b = DomainMatrix(cols, (len(cols), len(unk)), dom).rank() if cols and unk else 0
    return cocycles - rank_b


def sample_full_idempotents(b, n=2):
    """Two full grade-0 idempotents of M_n(b): E11 (x) 1 and E11 (x) 1 + E22 (x) f.

    ``f`` is the first primitive idempotent of ``b``; the basis index of
    E_ij (x) b_k is ``(n i + j) d + k``.
    """
    d = b.dim
    first = dict(b.unit)
    second = dict(first)
    second.update({(n + 1) * d + k: c for k, c in b.primitive_idempotents()[0].items()})
    return [first, second]


# Coxeter group oracles


def subword_ideal(g, w):
    """Everything obtainable from a subword of a reduced word of w."""
    word = g.word_list(w)
    out = set()
    for mask in itertools.product((0, 1), repeat=len(word)):
        out.add(g.from_word([s for s, m in zip(word, mask) if m]))
    return out


def r_polynomials(g, els):
    """R_{x,w} by the descent recursion, as coefficient lists."""
    R = {}
    order = sorted(els, key=g.length)
    for w in order:
        for x in order:
            if x == w:
                R[(x, w)] = [1]
                continue
            if not g.bruhat_le(x, w):
                R[(x, w)] = [0]
                continue
            s = next(t for t in g.gen_names if g.left_descent(w, t))
            sw, sx = g.s(s) * w, g.s(s) * x
            if g.length(sx) < g.length(x):
                R[(x, w)] = list(R[(sx, sw)])
            else:
                a, b = R[(x, sw)], R[(sx, sw)]
                out = [0] * (max(len(a), len(b)) + 1)
                for i, c in enumerate(a):  # (q - 1) R_{x,sw}
                    out[i + 1] += c
                    out[i] -= c
                for i, c in enumerate(b):  # q R_{sx,sw}
                    out[i + 1] += c
                R[(x, w)] = out
    return R


def kl_from_r(g, els):
    """Solve q^d P(1/q) - P(q) = sum_{x<y<=w} R_{x,y} P_{y,w} using the degree bound."""
    R = r_polynomials(g, els)
    order = sorted(els, key=g.length)
    P = {}
    for w in order:
        below = sorted((x for x in order if g.bruhat_le(x, w)), key=g.length, reverse=True)
        for x in below:
            if x == w:
                P[(x, w)] = [1]
                continue
            d = g.length(w) - g.length(x)
            k = [0] * (d + 1)
            for y in below:
                if y != x and g.bruhat_le(x, y):
                    r, p = R[(x, y)], P[(y, w)]
                    for i, a in enumerate(r):
                        for j, b in enumerate(p):
                            k[i + j] += a * b
            P[(x, w)] = [-c for i, c in enumerate(k) if 2 * i < d]
    return {key: tuple(_trim(v)) for key, v in P.items()}


def _trim(v):
    v = list(v)
    while v and v[-1] == 0:
        v.pop()
    return v
