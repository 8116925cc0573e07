from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from siltlab.complexes import ProjComplex, end_algebra
from siltlab.examples import lambda0
from siltlab.linalg import Echelon, RatMatrix, det, is_local, rank_kernel, radical, solve

small = st.integers(min_value=-4, max_value=4)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_matmul_and_identity():
    A = RatMatrix([[1, 2], [3, 4]])
    assert A @ RatMatrix.identity(2) == A
    assert (A @ A) == RatMatrix([[7, 10], [15, 22]])


@given(matrices(3, 3))
def test_det_matches_sympy(rows):
    assert det(RatMatrix(rows, 3)) == sympy.Matrix(rows).det()


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(lambda c: matrices(r, c))))
def test_rank_nullity_and_kernel(rows):
    cols = len(rows[0])
    A = RatMatrix(rows, cols)
    r, ker = rank_kernel(A)
    assert r + len(ker) == cols
    assert r == sympy.Matrix(rows).rank()
    for v in ker:
        assert all(x == 0 for x in A.apply(v))


@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_returns_a_solution_when_one_exists(rows, x):
    A = RatMatrix(rows, 3)
    b = A.apply(x)
    y = solve(A, b)
    assert y is not None and A.apply(y) == b


def test_solve_inconsistent():
    assert solve(RatMatrix([[1, 0], [1, 0]], 2), [1, 2]) is None


def test_echelon_coordinates():
    E = Echelon()
    assert E.add({0: Fraction(1), 1: Fraction(1)})
    assert E.add({1: Fraction(1)})
    assert not E.add({0: Fraction(2)})
    assert E.contains({0: Fraction(3), 1: Fraction(-1)})
    assert not Echelon().contains({2: Fraction(1)})


def test_radical_of_the_regular_endomorphisms():
    # End(A) is A itself; its radical is spanned by a, b and a*b
    alg, _, _ = end_algebra(ProjComplex.regular(lambda0()))
    assert alg.dim == 5
    assert len(radical(alg)) == 3
    assert not is_local(alg)


def test_local_algebra_detection():
    alg, _, _ = end_algebra(ProjComplex.stalk(lambda0(), (0,)))
    assert is_local(alg)
    assert len(radical(alg)) == 1
