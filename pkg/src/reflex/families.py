"""Built-in reflection representations and synthetic conjugated copies."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import InputError, ParseError, ReflectionError
from .field import RATIONAL, Field, QuadraticNumber, format_scalar
from .linalg import Matrix, determinant, inverse, is_independent, row_space_basis
from .modtheory import is_invariant
from .reflection import ReflectionRep, load_rep, validate_reflection


def _from_action(n, action, field=RATIONAL):
    """Matrix whose column j is the coordinate vector of ``action(j)``."""
    cols = []
    for j in range(n):
        v = [field.zero()] * n
        for i, c in action(j).items():
            v[i] = v[i] + field.coerce(c)
        cols.append(v)
    return Matrix.from_columns(cols)


def _reflection_in_root_basis(n, i, coeff, eigenvalue=-1, field=RATIONAL):
    """``s alpha_i = eigenvalue alpha_i``, ``s alpha_j = alpha_j + coeff(j) alpha_i``."""

    def action(j):
        if j == i:
            return {i: eigenvalue}
        c = coeff(j)
        return {j: 1, i: c} if c else {j: 1}

    return _from_action(n, action, field)


def affine_An_Vx(n: int, x) -> ReflectionRep:
    """The (n+1)-dimensional representation ``V_x`` of the affine Weyl group
    of type A_n in the basis alpha_0, ..., alpha_n."""
    x = RATIONAL.coerce(x) if not isinstance(x, QuadraticNumber) else x
    if n < 2:
        raise InputError("affine A_n needs n >= 2")
    if x == 0:
        raise InputError("parameter x must be nonzero")
    fld = Field(x.D) if isinstance(x, QuadraticNumber) else RATIONAL
    size = n + 1

    def coeff_for(i):
        def coeff(j):
            if {i, j} == {0, n}:
                return x if i == 0 else 1 / x
            if abs(i - j) == 1:
                return 1
            return 0

        return coeff

    mats = [_reflection_in_root_basis(size, i, coeff_for(i), field=fld) for i in range(size)]
    return ReflectionRep.from_matrices(mats, [f"s{i}" for i in range(size)], fld)


def symmetric_group_standard(n: int) -> ReflectionRep:
    """(n-1)-dimensional reflection representation of S_n, adjacent
    transpositions acting on the simple roots."""
    if n < 2:
        raise InputError("need n >= 2")
    r = n - 1
    mats = [
        _reflection_in_root_basis(r, i, lambda j, i=i: 1 if abs(i - j) == 1 else 0)
        for i in range(r)
    ]
    return ReflectionRep.from_matrices(mats, [f"s{i + 1}" for i in range(r)])


def dihedral(m: int) -> ReflectionRep:
    """Two-dimensional reflection representation of the dihedral group of
    order 2m.  The off-diagonal coefficients multiply to 4 cos^2(pi/m)."""
    if m in (3, 4, 6):
        fld = RATIONAL
        a, b = Fraction(1), Fraction({3: 1, 4: 2, 6: 3}[m])
    elif m == 5:
        fld = Field(5)
        phi = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)
        a = b = phi
    else:
        raise InputError(f"unsupported dihedral order m={m}; use 3, 4, 5 or 6")
    s1 = _reflection_in_root_basis(2, 0, lambda j: a, field=fld)
    s2 = _reflection_in_root_basis(2, 1, lambda j: b, field=fld)
    return ReflectionRep.from_matrices([s1, s2], ["s1", "s2"], fld)


def triangle_example() -> ReflectionRep:
    """Two-dimensional, three generators; reflection vectors a1, a2 and
    -a1 - a2.  Its associated digraph is a directed 3-cycle."""
    s1 = _from_action(2, lambda j: {0: -1} if j == 0 else {1: 1})
    s2 = _from_action(2, lambda j: {0: 1, 1: 2} if j == 0 else {1: -1})
    s3 = _from_action(2, lambda j: {0: 1} if j == 0 else {0: -2, 1: -1})
    rep = ReflectionRep.from_matrices([s1, s2, s3], ["s1", "s2", "s3"])
    one = Fraction(1)
    return rep.with_alphas([(one, 0 * one), (0 * one, one), (-one, -one)])


def quotient_rep(rep: ReflectionRep, subspace) -> ReflectionRep:
    """Action induced on ``V / span(subspace)``.

    Coordinates on the quotient come from completing a basis of the
    subspace with standard basis vectors.
    """
    n = rep.dim
    sub = row_space_basis(subspace)
    if not is_invariant(rep, sub):
        raise InputError("subspace is not invariant")
    if not sub:
        return rep
    if len(sub) == n:
        raise InputError("quotient by the whole space is zero-dimensional")
    basis = list(sub)
    one, zero = Fraction(1), Fraction(0)
    for e in range(n):
        cand = tuple(one if t == e else zero for t in range(n))
        if is_independent(basis + [cand]):
            basis.append(cand)
    P = Matrix.from_columns(basis)
    Pinv = inverse(P)
    m = len(sub)
    idx = list(range(m, n))
    mats, bad = [], []
    for g in rep.generators:
        block = (Pinv @ g.matrix @ P).submatrix(idx, idx)
        try:
            validate_reflection(block, g.name)
        except ReflectionError:
            bad.append(g.name)
        mats.append(block)
    if bad:
        raise ReflectionError(f"generators {bad} do not act by reflections on the quotient")
    return ReflectionRep.from_matrices(mats, rep.names, rep.field)


def random_invertible(n: int, rng: random.Random, bound: int = 3) -> Matrix:
    while True:
        T = Matrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if determinant(T) != 0:
            return T


def random_nonzero_rational(rng: random.Random, bound: int = 5) -> Fraction:
    while True:
        p = rng.randint(-bound, bound)
        if p:
            return Fraction(p, rng.randint(1, bound))


def conjugated_copy(rep: ReflectionRep, T: Matrix | None = None, scalings=None, seed=None) -> ReflectionRep:
    """``T rho(s) T^-1`` with reflection vectors ``scalings_i * T alpha_i``.

    Missing ``T`` or ``scalings`` are drawn from ``random.Random(seed)``.
    """
    rng = random.Random(seed)
    if T is None:
        T = random_invertible(rep.dim, rng)
    if determinant(T) == 0:
        raise InputError("conjugating matrix is singular")
    if scalings is None:
        scalings = [random_nonzero_rational(rng) if seed is not None else 1 for _ in range(rep.k)]
    Tinv = inverse(T)
    mats = [T @ M @ Tinv for M in rep.matrices]
    out = ReflectionRep.from_matrices(mats, rep.names, rep.field)
    alphas = [tuple(c * x for x in T @ a) for c, a in zip(scalings, rep.alphas)]
    return out.with_alphas(alphas)


# -- family specs -------------------------------------------------------------

FAMILIES = ("symmetric", "dihedral", "affineA", "triangle", "custom-file", "conjugate")


@dataclass
class FamilySpec:
    family: str
    params: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParseError(f"unknown family {self.family!r}; choose from {FAMILIES}")

    def build(self) -> ReflectionRep:
        p = self.params
        if self.family == "affineA":
            x = p.get("x", "2")
            return affine_An_Vx(int(p.get("n", 2)), RATIONAL.parse(str(x)))
        if self.family == "symmetric":
            return symmetric_group_standard(int(p.get("n", 4)))
        if self.family == "dihedral":
            return dihedral(int(p.get("m", 4)))
        if self.family == "triangle":
            return triangle_example()
        if self.family == "custom-file":
            if "path" not in p:
                raise ParseError("custom-file needs path=...")
            return load_rep(p["path"])
        base = FamilySpec(p.get("of", "affineA"), {k: v for k, v in p.items() if k not in ("of", "seed")})
        seed = int(p.get("seed", 0))
        return conjugated_copy(base.build(), seed=seed)

    def to_dict(self):
        return {"family": self.family, **{k: str(v) for k, v in self.params.items()}}

    def describe(self) -> str:
        if not self.params:
            return self.family
        return self.family + ":" + ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """``family[:key=value,...]``, e.g. ``affineA:n=2,x=2/1``."""
        family, _, rest = text.strip().partition(":")
        params = {}
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, eq, value = item.partition("=")
            if not eq:
                raise ParseError(f"bad family parameter {item!r}")
            params[key.strip()] = value.strip()
        return cls(family.strip(), params)

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        d = dict(d)
        family = d.pop("family", None)
        if family is None:
            raise ParseError("family spec needs a 'family' key")
        return cls(family, {k: str(v) for k, v in d.items()})


def scalar_list(values):
    return [format_scalar(v) for v in values]
