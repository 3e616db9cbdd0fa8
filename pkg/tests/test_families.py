from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reflex.errors import InputError, ParseError
from reflex.families import (
    FAMILIES,
    FamilySpec,
    affine_An_Vx,
    conjugated_copy,
    dihedral,
    quotient_rep,
    triangle_example,
    symmetric_group_standard,
)
from reflex.field import Field
from reflex.linalg import Matrix
from reflex.modtheory import is_simple
from reflex.reflection import dump_rep


def order(M, cap=50):
    P = M
    for k in range(1, cap + 1):
        if P == Matrix.identity(M.rows):
            return k
        P = P @ M
    return None


def test_affine_a2_matrices():
    x = Fraction(5, 2)
    s0, s1, s2 = affine_An_Vx(2, x).matrices
    assert s0 == Matrix([[-1, 1, x], [0, 1, 0], [0, 0, 1]])
    assert s1 == Matrix([[1, 0, 0], [1, -1, 1], [0, 0, 1]])
    assert s2 == Matrix([[1, 0, 0], [0, 1, 0], [1 / x, 1, -1]])


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("x", [2, Fraction(-1, 3), 1])
def test_affine_relations(n, x):
    mats = affine_An_Vx(n, x).matrices
    size = n + 1
    for i in range(size):
        assert order(mats[i]) == 2
        for j in range(i + 1, size):
            adjacent = j - i == 1 or (i, j) == (0, n)
            # the wrap-around pair has coefficient product x * (1/x) = 1
            assert order(mats[i] @ mats[j]) == (3 if adjacent else 2)


def test_affine_errors():
    with pytest.raises(InputError):
        affine_An_Vx(1, 2)
    with pytest.raises(InputError):
        affine_An_Vx(2, 0)
    with pytest.raises(TypeError):
        affine_An_Vx(2, 0.5)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_symmetric_group_braid_relations(n):
    mats = symmetric_group_standard(n).matrices
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            assert order(mats[i] @ mats[j]) == (3 if j == i + 1 else 2)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_dihedral_order(m):
    rep = dihedral(m)
    s1, s2 = rep.matrices
    assert order(s1 @ s2) == m
    assert rep.field == (Field(5) if m == 5 else Field())


def test_dihedral_unsupported():
    with pytest.raises(InputError):
        dihedral(7)


def test_triangle_example():
    rep = triangle_example()
    assert rep.matrices == [
        Matrix([[-1, 0], [0, 1]]),
        Matrix([[1, 0], [2, -1]]),
        Matrix([[1, -2], [0, -1]]),
    ]
    assert rep.alphas == [(1, 0), (0, 1), (-1, -1)]


def test_quotient_of_reducible_affine():
    rep = affine_An_Vx(2, 1)
    q = quotient_rep(rep, [(1, 1, 1)])
    assert q.dim == 2 and q.k == 3
    assert is_simple(q).verdict == "Simple"
    with pytest.raises(InputError):
        quotient_rep(rep, [(1, 0, 0)])
    with pytest.raises(InputError):
        quotient_rep(rep, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert quotient_rep(rep, []) is rep


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_conjugated_copy_is_seeded(seed):
    rep = affine_An_Vx(2, 2)
    a, b = conjugated_copy(rep, seed=seed), conjugated_copy(rep, seed=seed)
    assert a.matrices == b.matrices and a.alphas == b.alphas
    assert a.eigenvalues == rep.eigenvalues


def test_conjugated_copy_singular():
    with pytest.raises(InputError):
        conjugated_copy(affine_An_Vx(2, 2), T=Matrix.zeros(3, 3))


@pytest.mark.parametrize(
    "text,expected",
    [
        ("affineA:n=2,x=2/1", affine_An_Vx(2, 2)),
        ("affineA: n = 3 , x = -1", affine_An_Vx(3, -1)),
        ("symmetric:n=5", symmetric_group_standard(5)),
        ("dihedral:m=6", dihedral(6)),
        ("triangle", triangle_example()),
    ],
)
def test_family_spec_parse(text, expected):
    assert FamilySpec.parse(text).build().matrices == expected.matrices


def test_family_spec_round_trips():
    spec = FamilySpec.parse("conjugate:of=symmetric,n=4,seed=3")
    assert FamilySpec.parse(spec.describe()) == spec
    assert FamilySpec.from_dict(spec.to_dict()) == spec
    rep = spec.build()
    assert rep.matrices == conjugated_copy(symmetric_group_standard(4), seed=3).matrices


def test_custom_file_family(tmp_path):
    path = tmp_path / "s.rep"
    dump_rep(triangle_example(), path)
    rep = FamilySpec("custom-file", {"path": str(path)}).build()
    assert rep.matrices == triangle_example().matrices
    with pytest.raises(ParseError):
        FamilySpec("custom-file").build()


@pytest.mark.parametrize("text", ["nosuch:n=2", "affineA:n2", "affineA:x=1/0"])
def test_family_spec_errors(text):
    with pytest.raises(ParseError):
        FamilySpec.parse(text).build()


def test_family_list():
    assert set(FAMILIES) == {"symmetric", "dihedral", "affineA", "triangle", "custom-file", "conjugate"}
    with pytest.raises(ParseError):
        FamilySpec.from_dict({"n": 2})
