from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclattice import exact
from cyclattice.errors import NoSolution, SingularMatrixError


def laplace_det(m):
    """Independent oracle: recursive cofactor expansion along the first row."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * laplace_det(sub)
    return total


def int_matrices(min_n=1, max_n=4, lo=-9, hi=9):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n))


def frac_matrices(max_n=3):
    entry = st.fractions(min_value=-5, max_value=5, max_denominator=7)
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n))


def test_det_examples():
    assert exact.det([[4, 9], [3, 8]]) == 5
    assert exact.det([["4/3", "2/9"], ["4/3", "8/9"]]) == Fraction(8, 9)
    assert exact.det(exact.identity(5)) == 1
    assert exact.det([[1, 2], [2, 4]]) == 0
    assert exact.det([[0, 1], [1, 0]]) == -1


def test_entries_stay_exact():
    m = exact.matrix([[1, "1/2"], [0.5, 2]])
    assert m[0][0] == 1 and isinstance(m[0][0], int)
    assert m[0][1] == Fraction(1, 2)
    assert m[1][0] == Fraction(1, 2)


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_det_matches_laplace(m):
    assert exact.det(m) == laplace_det(m)


@settings(max_examples=60, deadline=None)
@given(frac_matrices())
def test_det_matches_laplace_fractions(m):
    assert exact.det(m) == laplace_det([[Fraction(v) for v in row] for row in m])


@settings(max_examples=250, deadline=None)
@given(int_matrices(1, 5))
def test_adjugate_times_matrix_is_det_identity(m):
    d = exact.det(m)
    n = len(m)
    want = exact.scale(exact.identity(n), d)
    assert exact.matmul(exact.adjugate(m), m) == want
    assert exact.matmul(m, exact.adjugate(m)) == want


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    *(st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n) for _ in range(2)))))
def test_det_multiplicative(pair):
    a, b = pair
    assert exact.det(exact.matmul(a, b)) == exact.det(a) * exact.det(b)


@settings(max_examples=80, deadline=None)
@given(frac_matrices())
def test_inverse(m):
    if exact.det(m) == 0:
        with pytest.raises(SingularMatrixError):
            exact.inverse(m)
        return
    n = len(m)
    assert exact.matmul(m, exact.inverse(m)) == exact.identity(n)


def test_cofactor_signs():
    m = [[1, 2, 3], [4, 5, 6], [7, 8, 10]]
    assert exact.cofactor(m, 0, 0) == 5 * 10 - 6 * 8
    assert exact.cofactor(m, 0, 1) == -(4 * 10 - 6 * 7)
    assert exact.adjugate([[7]]) == ((1,),)


def test_gcd_vec():
    assert exact.gcd_vec([9, -4]) == 1
    assert exact.gcd_vec([-15, -30]) == 15
    assert exact.gcd_vec([0, 0, 0]) == 0
    assert exact.gcd_vec([0, -6, 4]) == 2


@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=6), st.integers(-20, 20).filter(bool))
def test_gcd_vec_invariances(v, k):
    g = exact.gcd_vec(v)
    assert exact.gcd_vec([-x for x in v]) == g
    assert exact.gcd_vec(list(reversed(v))) == g
    assert exact.gcd_vec([k * x for x in v]) == abs(k) * g
    if g:
        assert all(x % g == 0 for x in v)


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_ext_gcd(a, b):
    g, x, y = exact.ext_gcd(a, b)
    assert a * x + b * y == g
    assert g == exact.gcd_vec([a, b])


def test_diophantine_examples():
    assert exact.solve_diophantine([-9, 4], 1) == (-1, -2)
    r = exact.solve_diophantine([2, 7, -7], 1)
    assert 2 * r[0] + 7 * r[1] - 7 * r[2] == 1
    # other witnesses exist; (95, 65, 92) is one of them
    assert 2 * 95 + 7 * 65 - 7 * 92 == 1
    with pytest.raises(NoSolution):
        exact.solve_diophantine([4, 6], 1)
    with pytest.raises(ValueError):
        exact.solve_diophantine([], 1)


@given(st.lists(st.integers(-200, 200), min_size=1, max_size=6), st.integers(-50, 50))
def test_diophantine_solution_or_no_solution(coeffs, target):
    g = exact.gcd_vec(coeffs)
    solvable = (target == 0) if g == 0 else (target % g == 0)
    if not solvable:
        with pytest.raises(NoSolution):
            exact.solve_diophantine(coeffs, target)
        return
    x = exact.solve_diophantine(coeffs, target)
    assert sum(c * v for c, v in zip(coeffs, x)) == target
