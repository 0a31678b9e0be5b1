from __future__ import annotations

import pytest

from gradecert.algcore import build_algebra, forget_grading, radical_series
from gradecert.corpus import corpus, entry
from gradecert.errors import RadicalUnavailable
from gradecert.exactla import GF, QQ
from gradecert.forcegr import IntegralOrder, gr_algebra, gr_module, graded_isomorphic, tilde_gr
from gradecert.gradmod import projective_module, simple_module


def truncated(n, field=QQ):
    mult = [(i, j, i + j, 1) for i in range(n) for j in range(n) if i + j < n]
    return build_algebra(field, list(range(n)), mult, [1] + [0] * (n - 1))


def quadratic_order(c, p):
    """Z[x]/(x^2 - c) on the basis 1, x."""
    mult = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]
    if c:
        mult.append((1, 1, 0, c))
    return IntegralOrder(2, mult, [1, 0], p, ["1", "x"])


def grade_dims(a):
    out: dict[int, int] = {}
    for g in a.grades:
        out[g] = out.get(g, 0) + 1
    return out


def test_gr_semisimple():
    a = build_algebra(QQ, [0, 0], [(0, 0, 0, 1), (1, 1, 1, 1)], [1, 1])
    g = gr_algebra(a)
    assert g.grades == (0, 0)
    assert graded_isomorphic(g, a)


def test_gr_truncated_cube():
    a = forget_grading(truncated(3))
    g = gr_algebra(a)
    assert sorted(g.grades) == [0, 1, 2]
    assert graded_isomorphic(g, truncated(3))


def test_gr_path_a2():
    a = entry("path-A2-trivial").algebra()
    g = gr_algebra(a)
    assert graded_isomorphic(g, entry("path-A2").algebra()) is True


def test_gr_module_examples():
    a = forget_grading(truncated(3))
    reg = gr_module(a, projective_module(a, 0))
    assert sorted(reg.grades) == [0, 1, 2]
    reg.check()
    simple = gr_module(a, simple_module(a, 0))
    assert simple.grades == (0,)
    b = entry("path-A3-trivial").algebra()
    graded = entry("path-A3").algebra()
    for lam in range(3):
        gm = gr_module(b, projective_module(b, lam))
        gm.check()
        assert sorted(gm.grades) == sorted(projective_module(graded, lam).grades)


@pytest.mark.parametrize("e", corpus(), ids=lambda e: e.name)
def test_gr_layers_and_idempotence(e):
    a = e.algebra()
    try:
        g = gr_algebra(a)
    except RadicalUnavailable:
        pytest.skip("no radical algorithm in this regime")
    dims = radical_series(a).dims()
    assert grade_dims(g) == {n: dims[n] - dims[n + 1] for n in range(len(dims) - 1)}
    assert g.dim == a.dim
    # grade 0 of gr A is semisimple
    assert not any(g.grades[i] == 0 for r in g.radical() for i in r)
    gg = gr_algebra(g)
    assert gg.grades == g.grades and gg.table == g.table


@pytest.mark.parametrize("name", ["path-A2", "path-A3", "sl2-block", "auslander-x3", "dual-numbers",
                                  "truncated-x3", "exterior-2", "kronecker"])
def test_gr_recovers_radical_grading(name):
    a = entry(name).algebra()
    assert graded_isomorphic(gr_algebra(forget_grading(a)), a) is not False


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_tilde_gr_dual_numbers(p):
    t = tilde_gr(quadratic_order(0, p))
    assert t.field == GF(p)
    assert sorted(t.grades) == [0, 1]
    assert graded_isomorphic(t, truncated(2, GF(p)))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_tilde_gr_ramified_differs(p):
    t = tilde_gr(quadratic_order(p, p))
    assert t.grades == (0, 0)
    reduction = quadratic_order(p, p).reduction()
    g = gr_algebra(reduction)
    assert sorted(g.grades) == [0, 1]
    assert graded_isomorphic(t, g) is False
    assert graded_isomorphic(forget_grading(g), t) is True
    # grade 0 of the integral forced grading is not semisimple here
    assert any(t.grades[i] == 0 for r in t.radical() for i in r)


def test_tilde_gr_split_order():
    o = IntegralOrder(2, [(0, 0, 0, 1), (1, 1, 1, 1)], [1, 1], 5)
    t = tilde_gr(o)
    assert t.grades == (0, 0)
    assert graded_isomorphic(t, build_algebra(GF(5), [0, 0], [(0, 0, 0, 1), (1, 1, 1, 1)], [1, 1]))


def test_tilde_gr_cubic_ramified():
    # Z[x]/(x^3 - p x) is semisimple over Q, so everything lands in grade 0
    p = 5
    mult = [(i, j, i + j, 1) for i in range(3) for j in range(3) if i + j < 3]
    mult += [(1, 2, 1, p), (2, 1, 1, p), (2, 2, 2, p)]
    o = IntegralOrder(3, mult, [1, 0, 0], p)
    t = tilde_gr(o)
    assert t.grades == (0, 0, 0)
    g = gr_algebra(o.reduction())
    assert sorted(g.grades) == [0, 1, 2]


def test_tilde_gr_multiplicative_layers():
    # Z[x]/(x^3): layers Z x, Z x^2 stay multiplicative
    mult = [(i, j, i + j, 1) for i in range(3) for j in range(3) if i + j < 3]
    t = tilde_gr(IntegralOrder(3, mult, [1, 0, 0], 5))
    assert sorted(t.grades) == [0, 1, 2]
    assert graded_isomorphic(t, truncated(3, GF(5)))


def test_graded_isomorphic_rejects_dimension_vectors():
    assert graded_isomorphic(truncated(2), forget_grading(truncated(2))) is False
