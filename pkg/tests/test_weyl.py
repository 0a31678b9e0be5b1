from __future__ import annotations

import itertools

import pytest

from gradecert.errors import ConventionMismatch, ElementNotInPoset, IntervalEscapesBall, UncertifiedAtRadius
from gradecert.weyl import (
    CoxeterGroup,
    RootDatum,
    ball,
    coset_reps,
    in_minus_a,
    in_plus_a,
    is_anti_isomorphism,
    kl_polynomials,
    parabolic_singular_posets,
    poset_ideal,
    psi,
    regular_double_cosets,
    weight_predicates,
)
from helpers import kl_from_r, subword_ideal


def words(xs):
    return [x.word for x in xs]


def proper_subsets(g):
    names = g.gen_names
    return [list(c) for k in range(len(names)) for c in itertools.combinations(names, k)]


# --- root data ---------------------------------------------------------------


@pytest.mark.parametrize("name,h", [("A1", 2), ("A2", 3), ("A3", 4), ("B2", 4), ("C3", 6), ("D4", 6),
                                    ("G2", 6), ("F4", 12), ("E6", 12), ("E7", 18), ("E8", 30)])
def test_coxeter_numbers(name, h):
    d = RootDatum.of(name)
    assert d.coxeter_number == h
    assert 2 * len(d.positive_roots) == h * d.rank


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6", "E8"])
def test_root_data_match_sympy(name):
    from sympy.liealgebras.cartan_type import CartanType

    ref = CartanType(name)
    d = RootDatum.of(name)
    # sympy stores <alpha_j^vee, alpha_i> at (i, j): the transpose of ours
    assert ref.cartan_matrix().T.tolist() == d.cartan
    assert len(ref.positive_roots()) == len(d.positive_roots)


def test_highest_short_root_g2():
    d = RootDatum.of("G2")
    assert d.highest_root == (3, 2)
    assert d.highest_short_root == (2, 1)


# --- balls and Bruhat order ---------------------------------------------------


def test_ball_a2():
    b = ball("A2", 3)
    assert len(b) == 6
    assert b.elements[-1].word == "s1.s2.s1"
    assert words(ball("A2", 0).elements) == ["e"]


def test_ball_affine_a1_growth():
    b = ball("A1~", 4)
    assert len(b) == 9
    lens = [x.length for x in b.elements]
    assert [lens.count(k) for k in range(5)] == [1, 2, 2, 2, 2]


def test_ball_growth_s4():
    # Poincare polynomial of S_4 is (1)(1+q)(1+q+q^2)(1+q+q^2+q^3)
    b = ball("A3", 6)
    lens = [x.length for x in b.elements]
    assert [lens.count(k) for k in range(7)] == [1, 3, 5, 6, 5, 3, 1]


@pytest.mark.parametrize("name,radius", [("A2", 3), ("A3", 5), ("B2", 4), ("A1~", 5), ("A2~", 5), ("G2", 5)])
def test_length_formula_matches_bfs_layers(name, radius):
    b = ball(name, radius)
    seen = {b.group.identity: 0}
    layer = [b.group.identity]
    for k in range(1, radius + 1):
        nxt = []
        for x in layer:
            for s in b.group.gen_names:
                y = x * b.group.s(s)
                if y not in seen:
                    seen[y] = k
                    nxt.append(y)
        layer = nxt
    assert all(x.length == seen[x] for x in b.elements)


@pytest.mark.parametrize("name,radius", [("A3", 5), ("B2", 4), ("A1~", 5), ("A2~", 4)])
def test_bruhat_matches_subword_property(name, radius):
    b = ball(name, radius)
    g = b.group
    for w in b.elements:
        ideal = subword_ideal(g, w)
        for x in b.elements:
            assert g.bruhat_le(x, w) == (x in ideal)


def test_words_round_trip():
    g = CoxeterGroup("A2~")
    for x in ball(g, 4).elements:
        assert g.from_word(x.word) == x
        assert g.inverse(x) * x == g.identity


# --- cosets ------------------------------------------------------------------


def test_coset_reps_s3():
    b = ball("A2", 3)
    assert words(r.element for r in coset_reps(b, ["s1"], "left", "min")) == ["e", "s2", "s2.s1"]
    assert words(r.element for r in coset_reps(b, ["s1"], "left", "max")) == ["s1", "s1.s2", "s1.s2.s1"]


def test_coset_reps_empty_j():
    b = ball("A2", 3)
    assert len(coset_reps(b, [], "right", "min")) == len(coset_reps(b, [], "right", "max")) == 6


def test_coset_reps_certificate():
    b = ball("A2", 3)
    rep = coset_reps(b, ["s1"], "left", "max")[0]
    assert rep.certificate == {"s1": 0}


def test_coset_reps_uncertified():
    with pytest.raises(UncertifiedAtRadius) as err:
        coset_reps(ball("A2~", 1), ["s1", "s2"], "left", "max")
    assert err.value.needed_radius == 3


def test_double_cosets_s3():
    cs = regular_double_cosets(ball("A2", 3), ["s1"], ["s2"])
    got = [(c.min_rep.word, c.max_rep.word, c.regular, c.size) for c in cs]
    assert got == [("e", "s1.s2", True, 4), ("s2.s1", "s1.s2.s1", False, 2)]


def test_double_coset_self_intersection_irregular():
    cs = regular_double_cosets(ball("A2", 3), ["s1"], ["s1"])
    assert (cs[0].min_rep.word, cs[0].regular) == ("e", False)


def test_trivial_double_cosets_all_regular():
    cs = regular_double_cosets(ball("A2", 3), [], [])
    assert len(cs) == 6 and all(c.regular and c.size == 1 for c in cs)


def test_inverse_of_regular_double_coset_is_regular():
    b = ball("A2~", 5)
    g = b.group
    for j1 in proper_subsets(g):
        for j2 in proper_subsets(g):
            try:
                cs = regular_double_cosets(b, j1, j2)
            except UncertifiedAtRadius:
                continue
            inv = {c.min_rep: c.regular for c in regular_double_cosets(b, j2, j1)}
            for c in cs:
                d = g.inverse(c.min_rep)
                assert inv[d] == c.regular


# --- psi and the posets ------------------------------------------------------


def test_psi_examples():
    g = CoxeterGroup("A2")
    x = g.from_word("s2.s1")
    assert psi(g, x, [], []) == g.inverse(x)
    assert psi(g, x, ["s1"], ["s2"]).word == "e"
    assert psi(g, g.s("s1"), ["s1"], ["s1"]).word == "s1"


def test_psi_is_an_involution_up_to_swap():
    g = CoxeterGroup("A2~")
    for x in ball(g, 4).elements:
        assert psi(g, psi(g, x, ["s1"], ["s0"]), ["s0"], ["s1"]) == x


def test_posets_s3():
    b = ball("A2", 3)
    assert words(parabolic_singular_posets(b, ["s1"], ["s2"], "-").elements) == ["s2.s1"]
    assert words(parabolic_singular_posets(b, ["s1"], ["s2"], "+").elements) == ["e"]


def test_trivial_posets_are_whole_ball():
    b = ball("A2", 3)
    minus = parabolic_singular_posets(b, [], [], "-")
    plus = parabolic_singular_posets(b, [], [], "+")
    assert len(minus.elements) == len(plus.elements) == 6
    assert plus.opposite and not minus.opposite
    assert is_anti_isomorphism(lambda x: x.inverse(), minus, plus)


def test_left_coset_reading_is_caught():
    with pytest.raises(ConventionMismatch):
        parabolic_singular_posets(ball("A2", 3), ["s1"], ["s1"], "-", convention="left")
    minus = parabolic_singular_posets(ball("A2", 3), ["s1"], ["s1"], "-")
    assert words(minus.elements) == ["s1.s2.s1"]


@pytest.mark.parametrize("name,radius", [("A2", 3), ("B2", 4), ("A3", 6), ("A1~", 8)])
def test_proposition_cross_check(name, radius):
    b = ball(name, radius)
    g = b.group
    for mu in proper_subsets(g):
        for nu in proper_subsets(g):
            minus = parabolic_singular_posets(b, mu, nu, "-")
            plus = parabolic_singular_posets(b, mu, nu, "+")
            assert is_anti_isomorphism(lambda x: psi(g, x, mu, nu), minus, plus)
            for x in b.elements:
                assert in_minus_a(g, x, mu, nu) == in_plus_a(g, psi(g, x, mu, nu), mu, nu)


def test_poset_ideal():
    b = ball("A2", 3)
    g = b.group
    full = parabolic_singular_posets(b, [], [], "-")
    assert set(words(poset_ideal(full, g.from_word("s1.s2")).elements)) == {"e", "s1", "s2", "s1.s2"}
    assert words(poset_ideal(full, g.identity).elements) == ["e"]
    opp = parabolic_singular_posets(b, [], [], "+")
    s1 = g.s("s1")
    assert set(poset_ideal(opp, s1).elements) == {x for x in b.elements if g.bruhat_le(s1, x)}
    with pytest.raises(ElementNotInPoset):
        poset_ideal(parabolic_singular_posets(b, ["s1"], ["s2"], "-"), s1)


# --- Kazhdan-Lusztig ---------------------------------------------------------

GOLDEN_P_S4 = (1, 1)  # P_{s2, s2s1s3s2} in S_4, from the R-polynomial oracle


def test_kl_s3_all_one():
    table = kl_polynomials(ball("A2", 3))
    assert set(table.entries.values()) == {(1,)}
    assert len(table.entries) == 19


def test_kl_golden_s4():
    b = ball("A3", 6)
    g = b.group
    x, w = g.from_word("s2"), g.from_word("s2.s1.s3.s2")
    assert kl_from_r(g, b.elements)[(x, w)] == GOLDEN_P_S4
    assert kl_polynomials(b).get(x, w) == GOLDEN_P_S4


@pytest.mark.parametrize("name,radius", [("A3", 6), ("B2", 4), ("A1~", 6), ("A2~", 4)])
def test_kl_matches_r_polynomial_oracle(name, radius):
    b = ball(name, radius)
    g = b.group
    oracle = kl_from_r(g, b.elements)
    table = kl_polynomials(b)
    for x in b.elements:
        for w in b.elements:
            assert table.get(x, w) == oracle.get((x, w), ())


@pytest.mark.parametrize("radius", range(7))
def test_kl_sanity_affine_a1(radius):
    b = ball("A1~", radius)
    g = b.group
    table = kl_polynomials(b)
    for (x, w), p in table.entries.items():
        assert p[0] == 1
        assert all(c >= 0 for c in p)
        if x != w:
            assert 2 * (len(p) - 1) <= g.length(w) - g.length(x) - 1


def test_kl_ball_invariance():
    small, big = kl_polynomials(ball("A2~", 3)), kl_polynomials(ball("A2~", 5))
    for key, p in small.entries.items():
        assert big.entries[key] == p


def test_kl_interval_escapes():
    table = kl_polynomials(ball("A1~", 2))
    g = table.ball.group
    with pytest.raises(IntervalEscapesBall):
        table.get(g.identity, g.from_word("s0.s1.s0"))


def test_kl_csv_header():
    assert kl_polynomials(ball("A1", 1)).to_csv().splitlines() == ["x,w,coefficients", "e,e,1", "e,s1,1", "s1,s1,1"]


# --- weights -----------------------------------------------------------------


def test_weight_predicates_a1():
    w3 = weight_predicates("A1", 3)
    assert not w3.is_p_regular([2])
    assert w3.is_p_regular([1])
    w5 = weight_predicates("A1", 5)
    assert w5.in_jantzen_region([24])
    assert not w5.in_jantzen_region([25])
    assert w5.coxeter_number == 2


def test_ell_of_p():
    assert weight_predicates("A1", 2).ell_of_p == 4
    assert weight_predicates("A1", 7).ell_of_p == 7


def test_dominance_order():
    w = weight_predicates("A2", 5)
    assert w.dominance_le([0, 0], [1, 1])  # rho - 0 = alpha1 + alpha2
    assert not w.dominance_le([0, 0], [1, 0])  # omega1 is not in the root lattice
    assert w.dominance_le([0, 1], [2, 0])  # 2w1 - w2 = alpha1


def test_gamma_res_reg_a1():
    # for A1 every dominant weight below a restricted one is restricted
    w = weight_predicates("A1", 5)
    assert w.gamma_res_reg_members(10) == [(0,), (1,), (2,), (3,)]


def test_gamma_res_reg_is_an_ideal():
    w = weight_predicates("A2", 5)
    members = set(w.gamma_res_reg_members(8))
    for lam in members:
        for other in itertools.product(range(9), repeat=2):
            if w.is_p_regular(other) and w.dominance_le(other, lam):
                assert other in members
