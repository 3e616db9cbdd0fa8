from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from reflex.errors import InputError
from reflex.field import QuadraticNumber
from reflex.linalg import (
    EchelonBasis,
    Matrix,
    determinant,
    eigenspace,
    in_span,
    intersect_spaces,
    inverse,
    kernel_basis,
    matrix_proportionality,
    proportionality,
    rank,
    rref,
    row_space_basis,
    same_span,
    solve,
    span_dim,
)

small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=5):
    r = rows or draw(st.integers(1, max_dim))
    c = cols or draw(st.integers(1, max_dim))
    # low-rank matrices show up often with a narrow entry range
    entries = st.one_of(small, st.sampled_from([Fraction(0), Fraction(1)]))
    return Matrix([[draw(entries) for _ in range(c)] for _ in range(r)])


def to_sympy(m):
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))


@given(matrices())
def test_rank_and_rref_match_sympy(m):
    R, r, pivots = rref(m)
    S, spivots = to_sympy(m).rref()
    assert r == to_sympy(m).rank() == rank(m)
    assert tuple(pivots) == tuple(spivots)
    assert to_sympy(R) == S


@given(matrices())
def test_kernel_is_kernel(m):
    K = kernel_basis(m)
    assert len(K) == m.cols - rank(m)
    for v in K:
        assert all(x == 0 for x in m @ v)
    assert span_dim(K) == len(K)


@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)))
def test_determinant_matches_sympy(m):
    assert determinant(m) == to_sympy(m).det()


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_inverse(m):
    if determinant(m) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
    else:
        assert m @ inverse(m) == Matrix.identity(m.rows)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, n), matrices(n, n), matrices(n, n))))
def test_matrix_algebra(abc):
    a, b, c = abc
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    assert (a @ b).T == b.T @ a.T
    assert determinant(a @ b) == determinant(a) * determinant(b)


@given(matrices(), st.data())
def test_solve(m, data):
    x = tuple(data.draw(small) for _ in range(m.cols))
    b = m @ x
    sol = solve(m, b)
    assert sol is not None
    assert m @ sol == b


def test_solve_inconsistent_and_mismatch():
    m = Matrix([[1, 0], [0, 0]])
    assert solve(m, (0, 1)) is None
    with pytest.raises(InputError):
        solve(m, (1, 2, 3))


def test_quadratic_entries():
    phi = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)
    m = Matrix([[phi, 1], [1, phi - 1]])
    assert determinant(m) == phi * (phi - 1) - 1 == 0
    assert rank(m) == 1
    (v,) = kernel_basis(m)
    assert all(x == 0 for x in m @ v)


def test_floats_rejected():
    with pytest.raises(TypeError):
        Matrix([[0.5]])


def test_eigenspace():
    m = Matrix([[-1, 0, 0], [1, 1, 0], [0, 0, 1]])
    assert len(eigenspace(m, 1)) == 2
    assert len(eigenspace(m, -1)) == 1


def test_spans():
    u = [(1, 0, 0), (0, 1, 0)]
    v = [(0, 1, 0), (0, 0, 1)]
    (w,) = intersect_spaces(u, v)
    assert proportionality(w, (0, 1, 0)) is not None
    assert in_span((2, 3, 0), u)
    assert not in_span((0, 0, 1), u)
    assert same_span(u, [(1, 1, 0), (1, -1, 0)])
    assert row_space_basis([(0, 0, 0)]) == []


def test_proportionality():
    assert proportionality((2, 4), (1, 2)) == 2
    assert proportionality((2, 5), (1, 2)) is None
    a = Matrix([[1, 2], [3, 4]])
    assert matrix_proportionality(a.scale(Fraction(-3, 2)), a) == Fraction(-3, 2)
    assert matrix_proportionality(a, Matrix([[1, 2, 3]])) is None


@settings(max_examples=50)
@given(st.lists(st.tuples(small, small, small, small), max_size=6))
def test_echelon_basis_tracks_span(vectors):
    ech = EchelonBasis(4)
    for v in vectors:
        ech.add(v)
    assert len(ech.vectors) == span_dim(vectors) if vectors else len(ech.vectors) == 0
    for v in vectors:
        assert v in ech


def test_matrix_basics():
    m = Matrix([[1, 2], [3, 4]])
    assert m.shape == (2, 2)
    assert m.trace() == 5
    assert m**0 == Matrix.identity(2)
    assert m**2 == m @ m
    assert m.submatrix([1], [0]) == Matrix([[3]])
    assert Matrix.from_columns([(1, 3), (2, 4)]) == m
    assert hash(m) == hash(Matrix([[1, 2], [3, 4]]))
    with pytest.raises(InputError):
        Matrix([[1, 2], [3]])
