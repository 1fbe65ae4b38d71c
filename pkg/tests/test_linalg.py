import itertools
import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gmt.errors import SingularMatrix
from gmt.linalg import (
    GrowthClass,
    IntMatrix,
    char_poly,
    classify,
    det_and_adjugate,
    mat_pow_apply,
    root_of_unity_exponent,
)
from fractions import Fraction


def cofactor_adjugate(rows):
    """Adjugate by explicit cofactor expansion (independent of the code under test)."""
    M = sympy.Matrix(rows)
    return M.det(), [[int(x) for x in row] for row in M.adjugate().tolist()]


small_ints = st.integers(-4, 4)


@st.composite
def int_matrices(draw, max_m=3):
    m = draw(st.integers(1, max_m))
    return IntMatrix([[draw(small_ints) for _ in range(m)] for _ in range(m)])


@st.composite
def nonsingular(draw, max_m=3):
    M = draw(int_matrices(max_m))
    d = sympy.Matrix(M.rows).det()
    if d == 0:
        M = IntMatrix([[int(i == j) + (M.rows[i][j] if i < j else 0) for j in range(M.m)] for i in range(M.m)])
    return M


def test_parse_and_format():
    M = IntMatrix.parse("2,1;1,1")
    assert M.rows == ((2, 1), (1, 1))
    assert str(M) == "2,1;1,1"
    assert IntMatrix.parse("-3").rows == ((-3,),)


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[2]], [1, -2]),
        ([[1, 0], [0, 1]], [1, -2, 1]),
        ([[0, -1], [1, 0]], [1, 0, 1]),
    ],
)
def test_char_poly_examples(rows, expected):
    assert char_poly(rows) == expected


@given(int_matrices())
def test_char_poly_matches_sympy(M):
    x = sympy.symbols("x")
    expected = [int(c) for c in sympy.Matrix(M.rows).charpoly(x).all_coeffs()]
    assert char_poly(M) == expected


@given(int_matrices())
def test_cayley_hamilton(M):
    coeffs = char_poly(M)
    acc = IntMatrix([[0] * M.m for _ in range(M.m)])
    for c in coeffs:
        acc = acc @ M + IntMatrix.identity(M.m).scaled(c)
    assert acc.is_zero()


def test_det_adjugate_examples():
    assert det_and_adjugate([[2]]) == (2, IntMatrix([[1]]))
    assert det_and_adjugate([[2, 1], [1, 1]]) == (1, IntMatrix([[1, -1], [-1, 2]]))
    with pytest.raises(SingularMatrix):
        det_and_adjugate([[0, 0], [0, 0]])


@given(nonsingular())
def test_adjugate_matches_cofactors(M):
    d, adj = det_and_adjugate(M)
    d2, adj2 = cofactor_adjugate(M.rows)
    assert d == d2
    assert [list(r) for r in adj.rows] == adj2
    assert M @ adj == IntMatrix.identity(M.m).scaled(d)


def brute_totient(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(n, k) == 1)


@pytest.mark.parametrize("m, expected", [(1, 2), (2, 12), (3, 12), (4, 120)])
def test_root_of_unity_exponent(m, expected):
    assert root_of_unity_exponent(m) == expected


@pytest.mark.parametrize("m", range(1, 7))
def test_root_of_unity_exponent_oracle(m):
    orders = [n for n in range(1, 200) if brute_totient(n) <= m]
    assert root_of_unity_exponent(m) == math.lcm(*orders)


@pytest.mark.parametrize(
    "rows, cls",
    [
        ([[2]], GrowthClass.EXPONENTIAL),
        ([[1, 1], [0, 1]], GrowthClass.NILPOTENT),
        ([[0, -1], [1, 0]], GrowthClass.VIRTUALLY_NILPOTENT),
        ([[1]], GrowthClass.NILPOTENT),
        ([[-1]], GrowthClass.VIRTUALLY_NILPOTENT),
        ([[0, -1], [1, 1]], GrowthClass.VIRTUALLY_NILPOTENT),
        ([[2, 1], [1, 1]], GrowthClass.EXPONENTIAL),
    ],
)
def test_classify_examples(rows, cls):
    assert classify(rows) is cls


def test_classify_singular():
    with pytest.raises(SingularMatrix):
        classify([[1, 1], [1, 1]])


def random_unimodular(rng, m, steps=6):
    P = IntMatrix.identity(m)
    Pinv = IntMatrix.identity(m)
    for _ in range(steps):
        i, j = rng.sample(range(m), 2)
        c = rng.choice([-1, 1])
        E = [[int(a == b) for b in range(m)] for a in range(m)]
        Einv = [row[:] for row in E]
        E[i][j] = c
        Einv[i][j] = -c
        P = P @ IntMatrix(E)
        Pinv = IntMatrix(Einv) @ Pinv
    return P, Pinv


@pytest.mark.parametrize(
    "rows",
    [[[2, 1], [1, 1]], [[1, 1], [0, 1]], [[0, -1], [1, 0]], [[0, -1], [1, 1]], [[3, 0], [0, 1]], [[1, 2], [0, -1]]],
)
def test_classify_conjugation_invariant(rows):
    rng = random.Random(7)
    T = IntMatrix(rows)
    for _ in range(10):
        P, Pinv = random_unimodular(rng, 2)
        assert P @ Pinv == IntMatrix.identity(2)
        assert classify(P @ T @ Pinv) is classify(T)


def test_classify_conjugation_invariant_3x3():
    rng = random.Random(3)
    for rows in ([[1, 1, 0], [0, 1, 1], [0, 0, 1]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[2, 0, 0], [0, 1, 1], [0, 0, 1]]):
        T = IntMatrix(rows)
        for _ in range(5):
            P, Pinv = random_unimodular(rng, 3)
            assert classify(P @ T @ Pinv) is classify(T)


@given(nonsingular())
@settings(max_examples=60)
def test_virtually_nilpotent_power_is_unipotent(T):
    if classify(T) is GrowthClass.VIRTUALLY_NILPOTENT:
        N = root_of_unity_exponent(T.m)
        assert ((T ** N) - IntMatrix.identity(T.m)) ** T.m == IntMatrix([[0] * T.m] * T.m)


def test_mat_pow_apply_examples():
    assert mat_pow_apply([[2]], -1, [1]) == (Fraction(1, 2),)
    assert mat_pow_apply([[2, 1], [1, 1]], 0, [Fraction(1, 3), 5]) == (Fraction(1, 3), Fraction(5))
    assert mat_pow_apply([[2, 1], [1, 1]], 2, [1, 0]) == (5, 3)


@given(
    nonsingular(max_m=2),
    st.integers(-6, 6),
    st.integers(-6, 6),
    st.lists(st.fractions(max_denominator=9), min_size=2, max_size=2),
)
def test_mat_pow_apply_composes(T, j, k, v):
    v = v[: T.m]
    assert mat_pow_apply(T, j, mat_pow_apply(T, k, v)) == mat_pow_apply(T, j + k, v)


@given(nonsingular(max_m=2), st.integers(0, 5), st.lists(st.integers(-9, 9), min_size=2, max_size=2))
def test_mat_pow_apply_matches_integer_power(T, k, v):
    v = v[: T.m]
    assert mat_pow_apply(T, k, v) == tuple(Fraction(x) for x in (T ** k).apply(v))
