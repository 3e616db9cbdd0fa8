from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reflex.errors import InputError, NotDiagonalizable, NotInvertible, NotRankOne, ParseError
from reflex.families import affine_An_Vx, conjugated_copy, dihedral, triangle_example
from reflex.field import Field
from reflex.linalg import Matrix
from reflex.reflection import (
    ReflectionRep,
    dump_rep,
    dumps_rep,
    interaction_coefficient,
    interaction_table,
    load_rep,
    loads_rep,
    rescale_reflection_vector,
    validate_reflection,
)

nonzero = st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool)


def test_simple_reflection():
    g = validate_reflection(Matrix([[-1, 0], [1, 1]]), "s")
    assert g.alpha == (1, Fraction(-1, 2))
    assert g.eigenvalue == -1
    assert g.matrix @ g.alpha == tuple(-x for x in g.alpha)
    for h in g.hyperplane:
        assert g.matrix @ h == h
    assert g.act((1, 0)) == (-1, 1)


def test_generalized_eigenvalue():
    g = validate_reflection(Matrix([[3, 0], [0, 1]]))
    assert g.eigenvalue == 3
    assert g.alpha == (1, 0)


@given(st.lists(st.tuples(nonzero, nonzero, nonzero), min_size=3, max_size=3), nonzero, nonzero)
def test_reflection_formula(vs, lam_offset, c):
    """s v = v + f(v) alpha for an arbitrary rank-one perturbation."""
    alpha = vs[0]
    phi = vs[1]
    # force f(alpha) != 0 and lambda != 0
    f_alpha = sum(a * b for a, b in zip(phi, alpha))
    if f_alpha in (0, -1):
        return
    M = Matrix.identity(3) + Matrix([[a * b for b in phi] for a in alpha])
    g = validate_reflection(M)
    assert g.eigenvalue == 1 + f_alpha
    v = vs[2]
    assert M @ v == tuple(x + g.f(v) * y for x, y in zip(v, g.alpha))
    h = rescale_reflection_vector(g, c)
    assert M @ v == tuple(x + h.f(v) * y for x, y in zip(v, h.alpha))
    assert h.f(h.alpha) == g.f(g.alpha)


@pytest.mark.parametrize(
    "m,err",
    [
        ([[1, 0], [0, 1]], NotRankOne),
        ([[-1, 0], [0, -1]], NotRankOne),
        ([[1, 1], [0, 1]], NotDiagonalizable),
        ([[0, 0], [0, 1]], NotInvertible),
    ],
)
def test_rejections(m, err):
    with pytest.raises(err):
        validate_reflection(Matrix(m))


def test_non_square():
    with pytest.raises(InputError):
        validate_reflection(Matrix([[1, 0, 0], [0, 1, 0]]))


def test_rescale_by_zero():
    g = validate_reflection(Matrix([[-1, 0], [0, 1]]))
    with pytest.raises(InputError):
        rescale_reflection_vector(g, 0)


def test_interaction_coefficients_of_affine_family():
    x = Fraction(7, 3)
    rep = affine_An_Vx(2, x)
    assert interaction_coefficient(rep, 2, 0) == x
    assert interaction_coefficient(rep, 0, 2) == 1 / x
    assert interaction_coefficient(rep, 0, 1) == 1
    assert interaction_coefficient(rep, 1, 2) == 1
    with pytest.raises(InputError):
        interaction_coefficient(rep, 1, 1)
    with pytest.raises(InputError):
        interaction_coefficient(rep, 0, 3)
    table = interaction_table(rep)
    assert len(table) == 6


def cycle_products(rep):
    c = interaction_coefficient
    return (c(rep, 0, 1) * c(rep, 1, 2) * c(rep, 2, 0), c(rep, 0, 2) * c(rep, 2, 1) * c(rep, 1, 0))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.lists(nonzero, min_size=3, max_size=3))
def test_cycle_products_are_invariants(seed, scalings):
    rep = affine_An_Vx(2, 5)
    for other in (conjugated_copy(rep, seed=seed), rep.rescaled(scalings)):
        assert cycle_products(other) == cycle_products(rep) == (5, Fraction(1, 5))


def test_file_round_trip(tmp_path):
    for rep in (triangle_example(), dihedral(5), affine_An_Vx(3, Fraction(-2, 3))):
        text = dumps_rep(rep)
        back = loads_rep(text)
        assert back.matrices == rep.matrices
        assert back.names == rep.names
        assert back.field == rep.field
        path = tmp_path / "rep.txt"
        dump_rep(rep, path)
        assert load_rep(path).matrices == rep.matrices


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_file_round_trip_random(seed):
    rep = conjugated_copy(affine_An_Vx(2, 3), seed=seed)
    assert loads_rep(dumps_rep(rep)).matrices == rep.matrices


GOOD = """reflex-rep v1   # header
field rational
dim 2

gen a
-1  0
 1  1
gen b   # second generator
1 1/2
0 -1
"""


def test_comments_and_whitespace():
    rep = loads_rep(GOOD)
    assert rep.names == ["a", "b"]
    assert rep.matrices[1] == Matrix([[1, Fraction(1, 2)], [0, -1]])


def test_spaces_inside_tokens():
    text = "reflex-rep v1\nfield quadratic 5\ndim 1\ngen s\n-1 + 0 * sqrt(5)\n"
    rep = loads_rep(text)
    assert rep.eigenvalues == [-1]
    assert rep.field == Field(5)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "reflex-rep v2\nfield rational\ndim 1\ngen s\n-1\n",
        "reflex-rep v1\nfield real\ndim 1\ngen s\n-1\n",
        "reflex-rep v1\nfield rational\ndim x\ngen s\n-1\n",
        "reflex-rep v1\nfield rational\ndim 2\ngen s\n-1 0\n",
        "reflex-rep v1\nfield rational\ndim 2\ngen s\n-1 0 0\n0 1\n",
        "reflex-rep v1\nfield rational\ndim 1\ngen s\n-1.0\n",
        "reflex-rep v1\nfield rational\ndim 1\n",
        "reflex-rep v1\nfield quadratic 5\ndim 1\ngen s\n-1\n",
        "reflex-rep v1\nfield rational\ndim 1\ngen s\n-1+0*sqrt(5)\n",
        "reflex-rep v1\nfield quadratic 4\ndim 1\ngen s\n-1+0*sqrt(4)\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        loads_rep(text)


def test_rep_accessors():
    rep = ReflectionRep.from_matrices([Matrix([[-1, 0], [0, 1]]), Matrix([[1, 0], [0, 2]])])
    assert rep.names == ["s0", "s1"]
    assert rep.dim == 2 and rep.k == 2
    assert rep.eigenvalues == [-1, 2]
    with pytest.raises(InputError):
        ReflectionRep.from_matrices([])
    with pytest.raises(InputError):
        rep.with_alphas([(1, 1), (0, 1)])
