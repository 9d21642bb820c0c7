from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from toricsl.linalg import RatMatrix, kernel_basis, lp_feasible, rank, rref, same_row_space, solve

from oracles import brute_lp_feasible, sympy_nullspace_rref, sympy_rank, sympy_rref

F = Fraction

small_rationals = st.builds(F, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def matrices(draw, max_rows=4, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    return RatMatrix([[draw(small_rationals) for _ in range(c)] for _ in range(r)], ncols=c)


def test_rref_examples():
    red, piv = rref([[2, 4], [1, 2]])
    assert red == RatMatrix([[1, 2], [0, 0]])
    assert piv == [0]

    assert rref(RatMatrix.identity(3)) == (RatMatrix.identity(3), [0, 1, 2])

    m = [[0, 1, 1, 0], [0, 0, 1, 1], [1, 1, 1, 1]]
    expected = [[1, 0, 0, 1], [0, 1, 0, -1], [0, 0, 1, 1]]
    assert sympy_rref(m, 4)[0] == expected  # oracle agrees with the frozen value
    red, piv = rref(m)
    assert red == RatMatrix(expected)
    assert piv == [0, 1, 2]


def test_kernel_examples():
    assert kernel_basis([[1, 1]]) == RatMatrix([[1, -1]])
    assert kernel_basis(RatMatrix.identity(2)) == RatMatrix([], ncols=2)
    m = [[0, 1, 2, 3], [0, 1, 4, 9], [1, 1, 1, 1]]
    assert sympy_nullspace_rref(m, 4) == [[1, -3, 3, -1]]
    assert kernel_basis(m) == RatMatrix([[1, -3, 3, -1]])


def test_rank_examples():
    assert rank(RatMatrix.zeros(2, 3)) == 0
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[1, 2], [2, 4]]) == 1


def test_fractions_stay_reduced():
    red, _ = rref([[2, 3], [4, 5]])
    for row in red:
        for x in row:
            assert x.denominator > 0
            assert x == F(x.numerator, x.denominator)


def test_matrix_rejects_floats():
    with pytest.raises(TypeError):
        RatMatrix([[0.5]])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_matches_sympy_and_is_idempotent(m):
    red, piv = rref(m)
    if m.nrows:
        ref, refpiv = sympy_rref(m.tolist(), m.ncols)
        assert red.tolist() == ref
        assert piv == refpiv
    assert rref(red) == (red, piv)
    assert rank(m) == rank(m.T) == sympy_rank(m.tolist())


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_is_orthogonal_and_complementary(m):
    k = kernel_basis(m)
    assert k.nrows + rank(m) == m.ncols
    for row in m:
        for kr in k:
            assert sum(a * b for a, b in zip(row, kr)) == 0
    assert rref(k)[0] == k
    assert k.tolist() == sympy_nullspace_rref(m.tolist(), m.ncols)


def test_solve():
    assert solve([[1, 1], [1, -1]], [2, 0]) == (1, 1)
    assert solve([[1, 1], [1, 1]], [1, 2]) is None


def test_same_row_space():
    assert same_row_space([[1, 2], [0, 1]], [[1, 0], [3, 3]])
    assert not same_row_space([[1, 2]], [[2, 1]])


# -- feasibility -------------------------------------------------------------


def test_lp_examples():
    res = lp_feasible(ge=([[1], [-1]], [1, -2]))
    assert res.feasible and 1 <= res.witness[0] <= 2
    assert not lp_feasible(ge=([[1], [-1]], [1, 0]))
    res = lp_feasible(eq=([[1, -1]], [0]), ge=([[1, 0], [0, 1]], [1, 1]))
    assert res.witness == (1, 1)


def test_lp_is_deterministic():
    sys = dict(eq=([[1, 1, 1]], [3]), ge=([[1, 0, 0], [0, 1, -1]], [0, 1]))
    assert lp_feasible(**sys) == lp_feasible(**sys)


def test_lp_free_and_nonneg_variables():
    assert lp_feasible(eq=([[1]], [-3])).witness == (-3,)
    assert not lp_feasible(eq=([[1]], [-3]), nonneg=True)


def test_lp_degenerate_cycling_instance():
    # Beale's example (equality-standardized): cycles without an anti-cycling rule
    A = [
        [F(1, 4), -8, -1, 9, 1, 0, 0],
        [F(1, 2), -12, F(-1, 2), 3, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 1],
    ]
    res = lp_feasible(eq=(A, [0, 0, 1]), nonneg=True)
    assert res.feasible
    for row, b in zip(A, [0, 0, 1]):
        assert sum(F(a) * x for a, x in zip(row, res.witness)) == b


@st.composite
def lp_systems(draw):
    n = draw(st.integers(1, 4))
    neq = draw(st.integers(0, 2))
    nge = draw(st.integers(0, 8 - neq))
    coef = st.integers(-3, 3)
    A = [[draw(coef) for _ in range(n)] for _ in range(neq)]
    b = [draw(coef) for _ in range(neq)]
    C = [[draw(coef) for _ in range(n)] for _ in range(nge)]
    d = [draw(coef) for _ in range(nge)]
    return n, A, b, C, d


@settings(max_examples=200, deadline=None)
@given(lp_systems())
def test_lp_agrees_with_face_enumeration(system):
    n, A, b, C, d = system
    res = lp_feasible(eq=(A, b), ge=(C, d), nvars=n)
    if res.feasible:
        x = res.witness
        for row, bi in zip(A, b):
            assert sum(a * xi for a, xi in zip(row, x)) == bi
        for row, di in zip(C, d):
            assert sum(c * xi for c, xi in zip(row, x)) >= di
    assert res.feasible == brute_lp_feasible(A, b, C, d, n)


def test_lp_exhaustive_one_variable_bounds():
    for lo, hi in product(range(-2, 3), repeat=2):
        res = lp_feasible(ge=([[1], [-1]], [lo, -hi]))
        assert res.feasible == (lo <= hi)
