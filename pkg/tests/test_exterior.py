from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from reflex.errors import InputError
from reflex.exterior import (
    binom_difference_identity,
    binom_rigidity,
    binom_search,
    compound_matrix,
    eigen_dimension_table,
    eigenspace_minus,
    eigenspace_plus,
    exterior_power,
    intersect_minus,
    satisfies_eigenvalue_dichotomy,
    subset_rank,
    subset_unrank,
    subsets,
    wedge_vector,
)
from reflex.families import affine_An_Vx, dihedral, triangle_example, symmetric_group_standard
from reflex.linalg import Matrix, proportionality

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def square(draw, n=None):
    n = n or draw(st.integers(1, 5))
    return Matrix([[draw(entries) for _ in range(n)] for _ in range(n)])


def sympy_compound(m, d):
    S = sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(str(m[i, j])))
    idx = list(combinations(range(m.rows), d))
    return [[S.extract(list(r), list(c)).det() for c in idx] for r in idx]


@settings(max_examples=60, deadline=None)
@given(square(), st.data())
def test_compound_entries_are_minors(m, data):
    d = data.draw(st.integers(1, m.rows))
    C = compound_matrix(m, d)
    assert C.tolist() == sympy_compound(m, d)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))), st.data())
def test_cauchy_binet(ab, data):
    a, b = ab
    d = data.draw(st.integers(0, a.rows))
    assert compound_matrix(a @ b, d) == compound_matrix(a, d) @ compound_matrix(b, d)


@given(square())
def test_compound_extremes(m):
    n = m.rows
    assert compound_matrix(m, 1) == m
    assert compound_matrix(m, n) == Matrix([[m.det()]])
    assert compound_matrix(m, 0) == Matrix([[1]])
    with pytest.raises(InputError):
        compound_matrix(m, n + 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(square(n), st.lists(
    st.tuples(*[entries] * n), min_size=1, max_size=n))))
def test_compound_acts_on_wedges(args):
    m, vs = args
    d = len(vs)
    lhs = compound_matrix(m, d) @ wedge_vector(vs)
    assert lhs == wedge_vector([m @ v for v in vs])


def test_wedge_of_basis_vectors():
    n = 4
    e = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    for t in subsets(n, 2):
        w = wedge_vector([e[i] for i in t])
        assert w[subset_rank(t, n)] == 1 and sum(map(abs, w)) == 1
    # alternating
    assert wedge_vector([e[1], e[0]]) == tuple(-x for x in wedge_vector([e[0], e[1]]))
    assert not any(wedge_vector([e[0], e[0]]))
    assert wedge_vector([], n=3) == (1,)


@given(st.integers(1, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_subset_ranking_is_lexicographic_bijection(nd):
    n, d = nd
    subs = subsets(n, d)
    assert len(subs) == comb(n, d)
    assert subs == sorted(subs)
    for r, t in enumerate(subs):
        assert subset_rank(t, n) == r
        assert subset_unrank(r, n, d) == t


FAMILIES = [affine_An_Vx(2, 2), affine_An_Vx(3, Fraction(1, 3)), symmetric_group_standard(4), dihedral(5),
            triangle_example()]


@pytest.mark.parametrize("rep", FAMILIES, ids=lambda r: f"n{r.dim}k{r.k}")
def test_eigenspace_dimension_law(rep):
    n = rep.dim
    for d in range(1, n + 1):
        ext = exterior_power(rep, d)
        assert ext.dim == comb(n, d)
        assert ext.eigenvalues == rep.eigenvalues
        for i, (p, m) in enumerate(eigen_dimension_table(ext)):
            assert (p, m) == (comb(n - 1, d), comb(n - 1, d - 1))
            assert satisfies_eigenvalue_dichotomy(ext, i)


def test_affine_a2_second_power_table():
    ext = exterior_power(affine_An_Vx(2, 2), 2)
    assert eigen_dimension_table(ext) == [(1, 2)] * 3


def test_common_minus_eigenspaces_are_wedge_lines():
    rep = affine_An_Vx(3, 2)
    ext = exterior_power(rep, 2)
    for J in combinations(range(4), 2):
        (v,) = intersect_minus(ext, J)
        assert proportionality(v, wedge_vector([rep.alphas[j] for j in J])) is not None
    assert len(intersect_minus(ext, (0, 1, 2))) == 0


def test_plus_and_minus_complement():
    ext = exterior_power(symmetric_group_standard(5), 2)
    for i in range(ext.k):
        assert len(eigenspace_plus(ext, i)) + len(eigenspace_minus(ext, i)) == ext.dim


def test_binomial_rigidity():
    assert binom_rigidity(5, 2, 5, 2)
    assert not binom_rigidity(5, 2, 5, 3)
    with pytest.raises(InputError):
        binom_rigidity(3, 0, 3, 1)
    with pytest.raises(InputError):
        binom_rigidity(3, 3, 3, 1)


def test_binomial_search_singmaster():
    # 120 = C(16,2) = C(10,3) = C(120,1)
    found = binom_search(17, 2, 130)
    assert {(17, 2), (17, 14), (11, 3), (11, 7), (121, 1), (121, 119)} <= set(found["plus"])
    assert found["both"] == [(17, 2)]


def test_difference_identity():
    assert all(binom_difference_identity(n, d) for n in range(1, 30) for d in range(1, n + 1))
    with pytest.raises(InputError):
        binom_difference_identity(3, 0)
