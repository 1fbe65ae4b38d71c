import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmt import GroupSpec
from gmt.errors import BadGeneratorIndex, ConfigError, InvalidElement
from gmt.group import NormalForm, Token, format_word, parse_word

MATRICES = ["2", "1,1;0,1", "2,1;1,1", "1", "3", "-2", "0,-1;1,0", "2,0;0,1", "1,2;0,-1"]


@st.composite
def spec_and_words(draw, count=1, max_len=6):
    spec = GroupSpec.parse(draw(st.sampled_from(MATRICES)))
    gen = st.integers(0, spec.m)
    exp = st.integers(-3, 3).filter(bool)
    words = [
        [Token(draw(gen), draw(exp)) for _ in range(draw(st.integers(0, max_len)))]
        for _ in range(count)
    ]
    return spec, words


def test_parse_word_roundtrip():
    w = parse_word("t a1^3 t^-1 a2")
    assert w == [Token(0, 1), Token(1, 3), Token(0, -1), Token(2, 1)]
    assert format_word(w) == "t a1^3 t^-1 a2"
    assert parse_word("a1^0 t") == [Token(0, 1)]
    with pytest.raises(ConfigError):
        parse_word("b1")


def test_element_from_word_examples(bs12):
    g = bs12.element_from_word("t a1 t^-1")
    assert (g.v, g.k) == ((Fraction(2),), 0)
    assert bs12.element_from_word("") == bs12.identity
    h = bs12.element_from_word("t^-1 a1 t")
    assert (h.v, h.k) == ((Fraction(1, 2),), 0)
    with pytest.raises(BadGeneratorIndex):
        bs12.element_from_word("a2")


def test_multiply_examples(bs12):
    t, a = bs12.t(), bs12.a(1)
    assert bs12.multiply(bs12.identity, a) == a
    ta = bs12.multiply(t, a)
    assert (ta.v, ta.k) == ((2,), 1)
    at = bs12.multiply(a, t)
    assert (at.v, at.k) == ((1,), 1)


def test_inverse_examples(bs12):
    assert bs12.inverse(bs12.identity) == bs12.identity
    assert bs12.inverse(bs12.a(1)).v == (-1,)
    ta = bs12.element((2,), 1)
    inv = bs12.inverse(ta)
    assert (inv.v, inv.k) == ((-1,), -1)
    assert bs12.multiply(ta, inv) == bs12.identity


def test_normal_form_examples(bs12):
    assert bs12.normal_form(bs12.element([Fraction(1, 2)], 0)) == NormalForm(1, (1,), 1)
    assert bs12.normal_form(bs12.identity) == NormalForm(0, (0,), 0)
    assert bs12.normal_form(bs12.element([2], 1)) == NormalForm(0, (2,), 1)
    assert str(bs12.normal_form(bs12.element([Fraction(1, 2)], 0))) == "t^-1 a1 t"


def test_normal_form_negative_tau(bs12):
    g = bs12.t(-3)
    assert bs12.normal_form(g) == NormalForm(3, (0,), 0)


def test_raw_element_validation():
    spec = GroupSpec.parse("2,0;0,1")
    spec.element([Fraction(1, 8), 3], 0)
    with pytest.raises(InvalidElement):
        spec.element([0, Fraction(1, 2)], 0)  # T fixes the second coordinate
    with pytest.raises(InvalidElement):
        GroupSpec.parse("2").element([Fraction(1, 3)], 0)
    with pytest.raises(InvalidElement):
        GroupSpec.parse("2").element([Fraction(1, 8)], 0, e_max=2)


def test_simple_commutator_examples(bs12, z2):
    c = bs12.simple_commutator([bs12.a(1), bs12.t()])
    assert (c.v, c.k) == ((Fraction(-1, 2),), 0)
    # by hand: a^-1 t^-1 a t = a^-1 (t^-1 a t) = a^-1 a^(1/2)
    g = bs12.element_from_word("t a1^3 t^-2")
    assert bs12.simple_commutator([g, g]) == bs12.identity
    x, y = z2.element_from_word("a1 t^2"), z2.element_from_word("t^-1 a1^5")
    assert z2.simple_commutator([x, y]) == z2.identity
    with pytest.raises(ValueError):
        bs12.simple_commutator([g])


def test_central_series_index_examples(bs12, heis):
    assert bs12.central_series_index(bs12.identity) == 0
    assert bs12.central_series_index(bs12.a(1)) is None
    assert heis.N == 12
    assert heis.shift_minus_identity == ((0, 12), (0, 0))
    assert heis.central_series_index(heis.a(1)) == 1
    assert heis.central_series_index(heis.a(2)) == 2
    assert heis.central_series_index(heis.t()) is None


def test_element_json_roundtrip(bs12):
    g = bs12.element_from_word("t^-5 a1^7 t^2")
    data = json.loads(json.dumps(g.to_json()))
    assert data["v"][0] == ["7", "32"]
    assert bs12.element_from_json(data) == g


@given(spec_and_words(count=3))
@settings(max_examples=80)
def test_associativity_identity_inverse(sw):
    spec, words = sw
    g, h, k = (spec.element_from_word(w) for w in words)
    mul = spec.multiply
    assert mul(mul(g, h), k) == mul(g, mul(h, k))
    assert mul(g, spec.identity) == g == mul(spec.identity, g)
    assert mul(g, spec.inverse(g)) == spec.identity == mul(spec.inverse(g), g)


@given(spec_and_words(count=2))
@settings(max_examples=80)
def test_tau_homomorphism_and_word_concatenation(sw):
    spec, (w1, w2) = sw
    g, h = spec.element_from_word(w1), spec.element_from_word(w2)
    assert spec.multiply(g, h).k == g.k + h.k
    assert spec.element_from_word(w1 + w2) == spec.multiply(g, h)


@given(st.sampled_from(MATRICES), st.data())
def test_phi_additive_on_A(text, data):
    spec = GroupSpec.parse(text)
    vec = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=1), min_size=spec.m, max_size=spec.m)
    r = data.draw(st.integers(0, 3))
    g = spec.multiply(spec.multiply(spec.t(-r), spec.a_vec([int(x) for x in data.draw(vec)])), spec.t(r))
    h = spec.a_vec([int(x) for x in data.draw(vec)])
    gh = spec.multiply(g, h)
    assert gh.k == 0
    assert gh.v == tuple(x + y for x, y in zip(g.v, h.v))


@given(st.sampled_from(MATRICES), st.data())
def test_defining_relation(text, data):
    spec = GroupSpec.parse(text)
    u = data.draw(st.lists(st.integers(-50, 50), min_size=spec.m, max_size=spec.m))
    lhs = spec.multiply(spec.t(), spec.multiply(spec.a_vec(u), spec.t(-1)))
    assert lhs == spec.a_vec(spec.T.apply(u))


@given(spec_and_words())
@settings(max_examples=100)
def test_normal_form_roundtrip(sw):
    spec, (w,) = sw
    g = spec.element_from_word(w)
    nf = spec.normal_form(g)
    assert nf.r >= max(0, -g.k) and nf.s == g.k + nf.r
    assert spec.element_from_word(nf.word()) == g
    # minimality: one fewer conjugation is either disallowed or non-integral
    if nf.r > max(0, -g.k):
        den, _ = spec.apply_power(nf.r - 1, g.den, g.num)
        assert den != 1


def brute_in_center_series(spec, g, i, gens_H):
    """g in Z_i(H) by recursion on commutators with generators of H."""
    if i == 0:
        return g == spec.identity
    return all(brute_in_center_series(spec, spec.commutator(g, h), i - 1, gens_H) for h in gens_H)


@pytest.mark.parametrize("text", ["2", "1,1;0,1", "2,1;1,1", "1", "0,-1;1,0", "1,1,0;0,1,1;0,0,1"])
def test_central_series_index_matches_brute_force(text):
    from gmt.cayley import enumerate_ball

    spec = GroupSpec.parse(text)
    gens_H = [spec.a(i) for i in range(1, spec.m + 1)] + [spec.t(spec.N)]
    radius = 3 if spec.m < 3 else 2
    ball = enumerate_ball(spec, None, radius)
    for g in ball.elements():
        if g.k != 0:
            continue
        idx = spec.central_series_index(g)
        for i in range(4):
            assert (idx is not None and idx <= i) == brute_in_center_series(spec, g, i, gens_H), (g, i)
