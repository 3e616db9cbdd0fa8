"""Module-theoretic checks: enveloping algebras, invariant subspaces,
simplicity certificates, hom spaces and the two exterior-power theorems.

A "representation" here is anything carrying a list of square generator
matrices in ``.matrices`` (reflection reps and exterior powers alike) or a
bare sequence of matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

from .errors import FieldMismatch, InputError, TheoremInapplicable
from .exterior import binom_rigidity, exterior_power
from .field import RATIONAL, QuadraticNumber, format_scalar
from .linalg import (
    EchelonBasis,
    Matrix,
    determinant,
    is_zero_vector,
    kernel_basis,
    row_space_basis,
    span_dim,
)

SIMPLE = "Simple"
NOT_SIMPLE = "NotSimple"
UNDECIDED = "Undecided"


def _mats(rep):
    mats = rep.matrices if hasattr(rep, "matrices") else rep
    mats = list(mats)
    if not mats:
        raise InputError("representation without generators")
    return mats


def _field(rep):
    return getattr(rep, "field", None)


def _dim(rep):
    return _mats(rep)[0].rows


def is_invariant(rep, subspace) -> bool:
    """True when every generator maps span(subspace) into itself."""
    subspace = [tuple(v) for v in subspace]
    if not subspace:
        return True
    r = span_dim(subspace)
    return all(span_dim(subspace + [M @ v for v in subspace]) == r for M in _mats(rep))


def enveloping_algebra(rep):
    """Basis of the unital matrix algebra generated by the generator images."""
    mats = _mats(rep)
    n = mats[0].rows
    ech = EchelonBasis(n * n)
    one = Matrix.identity(n)
    ech.add(one.flat())
    basis = [one]
    todo = [one]
    while todo:
        X = todo.pop()
        for M in mats:
            Y = M @ X
            if ech.add(Y.flat()):
                basis.append(Y)
                todo.append(Y)
                if len(basis) == n * n:
                    return basis
    return basis


def spin_up(rep, v):
    """Smallest invariant subspace containing ``v``."""
    v = tuple(v)
    if is_zero_vector(v):
        raise InputError("cannot spin up the zero vector")
    mats = _mats(rep)
    ech = EchelonBasis(len(v))
    ech.add(v)
    todo = [v]
    while todo:
        w = todo.pop()
        for M in mats:
            u = M @ w
            if ech.add(u):
                todo.append(u)
    return list(ech.vectors)


# -- hom spaces ---------------------------------------------------------------


@dataclass(frozen=True)
class HomSpace:
    """All ``X`` with ``X rho1(s) = rho2(s) X`` for every generator."""

    basis: tuple
    shape: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)


def hom_space(rep1, rep2) -> HomSpace:
    f1, f2 = _field(rep1), _field(rep2)
    if f1 is not None and f2 is not None and f1 != f2:
        raise FieldMismatch(f"{f1!r} vs {f2!r}")
    A_list, B_list = _mats(rep1), _mats(rep2)
    if len(A_list) != len(B_list):
        raise InputError("representations have different numbers of generators")
    n1, n2 = A_list[0].rows, B_list[0].rows
    N = n1 * n2
    # Solution space kept as a list of n2 x n1 matrices, cut down one
    # generator at a time.
    zero, one = Fraction(0), Fraction(1)
    current = [
        Matrix([[one if p * n1 + r == t else zero for r in range(n1)] for p in range(n2)])
        for t in range(N)
    ]
    for A, B in zip(A_list, B_list):
        if not current:
            break
        images = [(X @ A - B @ X).flat() for X in current]
        coeffs = kernel_basis(Matrix.from_columns(images))
        new = []
        for c in coeffs:
            acc = None
            for ci, X in zip(c, current):
                if ci:
                    acc = X.scale(ci) if acc is None else acc + X.scale(ci)
            new.append(acc)
        current = new
    basis = row_space_basis([X.flat() for X in current])
    mats = tuple(Matrix([b[p * n1 : (p + 1) * n1] for p in range(n2)]) for b in basis)
    return HomSpace(mats, (n2, n1))


# -- simplicity ---------------------------------------------------------------


@dataclass(frozen=True)
class SimplicityCertificate:
    verdict: str
    dim: int
    enveloping_dim: int
    subspace: tuple = ()
    endomorphism_dim: int | None = None
    method: str = ""

    @property
    def is_simple(self) -> bool:
        return self.verdict == SIMPLE

    def recheck(self, rep) -> bool:
        """Re-validate NotSimple evidence (nonzero, proper, invariant)."""
        if self.verdict != NOT_SIMPLE:
            return True
        r = span_dim(self.subspace)
        return 0 < r < self.dim and is_invariant(rep, self.subspace)

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "dim": self.dim,
            "enveloping_dim": self.enveloping_dim,
            "endomorphism_dim": self.endomorphism_dim,
            "method": self.method,
            "subspace": [[format_scalar(x) for x in v] for v in self.subspace],
        }


def charpoly(M: Matrix):
    """Coefficients ``[c_0, ..., c_n]`` of det(t I - M) (Faddeev-LeVerrier)."""
    n = M.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    I = Matrix.identity(n)
    Mk = Matrix.zeros(n, n)
    for k in range(1, n + 1):
        Mk = M @ Mk + I.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(M @ Mk).trace() / k
    return coeffs


def _poly_at(coeffs, M: Matrix):
    n = M.rows
    acc = Matrix.zeros(n, n)
    for c in reversed(coeffs):
        acc = M @ acc + Matrix.identity(n).scale(c)
    return acc


def _factor(coeffs, fld):
    """Irreducible factorization over the field (delegated to sympy)."""
    import sympy

    t = sympy.Symbol("t")
    expr = sum(_to_sympy(c) * t**i for i, c in enumerate(coeffs))
    if fld is None or fld.is_rational:
        _, factors = sympy.factor_list(expr, t)
    else:
        _, factors = sympy.factor_list(expr, t, extension=sympy.sqrt(fld.D))
    out = []
    for fac, mult in factors:
        p = sympy.Poly(fac, t)
        cs = [_from_sympy(c, fld) for c in reversed(p.all_coeffs())]
        out.append((cs, mult))
    return out


def _to_sympy(x):
    import sympy

    if isinstance(x, QuadraticNumber):
        return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(
            x.b.numerator, x.b.denominator
        ) * sympy.sqrt(x.D)
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def _from_sympy(expr, fld):
    import sympy

    expr = sympy.expand(sympy.radsimp(expr))
    if fld is None or fld.is_rational:
        q = sympy.Rational(expr)
        return Fraction(int(q.p), int(q.q))
    s = sympy.sqrt(fld.D)
    p = sympy.Poly(expr, s)
    a = sympy.Rational(p.coeff_monomial(1))
    b = sympy.Rational(p.coeff_monomial(s))
    return QuadraticNumber(Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q)), fld.D)


def _radical_subspace(mats, algebra):
    """``rad(A) * V`` for the enveloping algebra ``A`` (trace-form radical)."""
    gram = Matrix([[(X @ Y).trace() for Y in algebra] for X in algebra])
    rad = kernel_basis(gram)
    if not rad:
        return []
    n = mats[0].rows
    vectors = []
    for c in rad:
        R = Matrix.zeros(n, n)
        for ci, X in zip(c, algebra):
            if ci:
                R = R + X.scale(ci)
        vectors.extend(R.columns())
    return row_space_basis(vectors)


def _split_by_endomorphism(e: Matrix, fld):
    """Kernel of a factor of the characteristic polynomial of a commuting
    endomorphism when that kernel is a proper nonzero subspace."""
    n = e.rows
    factors = _factor(charpoly(e), fld)
    for cs, mult in factors:
        if len(cs) == 1:
            continue
        P = _poly_at(cs, e)
        K = kernel_basis(P)
        if 0 < len(K) < n:
            return K
    return None


def _min_poly_in(e: Matrix, n):
    """Minimal polynomial of ``e`` (coefficients, monic)."""
    ech = EchelonBasis(n * n)
    powers = [Matrix.identity(n)]
    ech.add(powers[0].flat())
    while True:
        nxt = e @ powers[-1]
        if not ech.add(nxt.flat()):
            basis = [P.flat() for P in powers]
            coeffs = _solve_combination(basis, nxt.flat())
            return [-c for c in coeffs] + [Fraction(1)]
        powers.append(nxt)


def _solve_combination(vectors, target):
    from .linalg import solve

    return list(solve(Matrix.from_columns(vectors), target))


def is_simple(rep, seed: int = 0) -> SimplicityCertificate:
    """Decide simplicity over the representation's own field.

    Fast path: the enveloping algebra is the full matrix algebra.  Otherwise
    the trace-form radical, then splittings by commuting endomorphisms, and
    finally a primitive-element test when the commutant is commutative.  A
    non-commutative commutant with no zero divisor found is reported as
    ``Undecided``.
    """
    mats = _mats(rep)
    fld = _field(rep) or RATIONAL
    n = mats[0].rows
    algebra = enveloping_algebra(mats)
    a_dim = len(algebra)
    if a_dim == n * n:
        end_dim = hom_space(rep, rep).dim
        return SimplicityCertificate(SIMPLE, n, a_dim, (), end_dim, "full enveloping algebra")

    rad = _radical_subspace(mats, algebra)
    if rad:
        return SimplicityCertificate(NOT_SIMPLE, n, a_dim, tuple(rad), None, "radical of enveloping algebra")

    # Semisimple module from here on.
    E = list(hom_space(rep, rep).basis)
    end_dim = len(E)
    rng = random.Random(seed)
    candidates = list(E)
    for _ in range(4):
        X = Matrix.zeros(n, n)
        for B in E:
            X = X + B.scale(rng.randint(-5, 5))
        candidates.append(X)
    for e in candidates:
        K = _split_by_endomorphism(e, fld)
        if K:
            return SimplicityCertificate(NOT_SIMPLE, n, a_dim, tuple(K), end_dim, "commuting endomorphism")

    commutative = all(X @ Y == Y @ X for X in E for Y in E)
    if commutative:
        for e in candidates:
            mp = _min_poly_in(e, n)
            if len(mp) - 1 == end_dim:
                factors = _factor(mp, fld)
                if len(factors) == 1 and factors[0][1] == 1:
                    return SimplicityCertificate(
                        SIMPLE, n, a_dim, (), end_dim, "commutant is a field"
                    )
    return SimplicityCertificate(UNDECIDED, n, a_dim, (), end_dim, "no decomposition found")


# -- theorem checks -------------------------------------------------------------


@dataclass
class Theorem1Report:
    dim: int
    certificates: dict
    hom_dims: dict
    passed: bool

    def to_dict(self):
        return {
            "dim": self.dim,
            "certificates": {str(d): c.to_dict() for d, c in self.certificates.items()},
            "hom_dims": {f"{a},{b}": v for (a, b), v in self.hom_dims.items()},
            "passed": self.passed,
        }


def check_theorem1(rep) -> Theorem1Report:
    """Every exterior power is simple and distinct degrees are non-isomorphic."""
    base = is_simple(rep)
    if not base.is_simple:
        raise TheoremInapplicable(f"base representation is {base.verdict}")
    n = rep.dim
    exts = {d: exterior_power(rep, d) for d in range(n + 1)}
    certs = {d: is_simple(ext) for d, ext in exts.items()}
    hom_dims = {}
    for a in range(n + 1):
        for b in range(a + 1, n + 1):
            hom_dims[(a, b)] = hom_space(exts[a], exts[b]).dim
    passed = all(c.is_simple for c in certs.values()) and all(v == 0 for v in hom_dims.values())
    return Theorem1Report(n, certs, hom_dims, passed)


@dataclass
class Theorem2Report:
    n1: int
    d1: int
    n2: int
    d2: int
    hom_dim: int
    isomorphic: bool
    base_hom_dim: int
    eigenvalues_agree: bool | None = None
    psi: Matrix | None = None
    lift: object = None
    consistent: bool = True
    notes: list = dc_field(default_factory=list)

    def to_dict(self):
        out = {
            "n1": self.n1,
            "d1": self.d1,
            "n2": self.n2,
            "d2": self.d2,
            "hom_dim": self.hom_dim,
            "isomorphic": self.isomorphic,
            "base_hom_dim": self.base_hom_dim,
            "eigenvalues_agree": self.eigenvalues_agree,
            "consistent": self.consistent,
            "notes": list(self.notes),
        }
        if self.psi is not None:
            out["psi"] = [[format_scalar(x) for x in r] for r in self.psi.tolist()]
        if self.lift is not None:
            out["lift"] = self.lift.to_dict()
        return out


def check_theorem2(rep1, d1: int, rep2, d2: int, i0=None) -> Theorem2Report:
    """Compare two exterior powers; when isomorphic, lift to degree one."""
    from .lifting import lift_isomorphism

    n1, n2 = rep1.dim, rep2.dim
    for n, d in ((n1, d1), (n2, d2)):
        if not (1 <= d <= n - 1):
            raise InputError(f"need 1 <= d <= n - 1, got n={n}, d={d}")
    if rep1.k != rep2.k:
        raise InputError("representations must have the same generators")
    for r in (rep1, rep2):
        c = is_simple(r)
        if not c.is_simple:
            raise TheoremInapplicable(f"a base representation is {c.verdict}")
    base_hom = hom_space(rep1, rep2).dim
    H = hom_space(exterior_power(rep1, d1), exterior_power(rep2, d2))
    rep = Theorem2Report(n1, d1, n2, d2, H.dim, H.dim > 0, base_hom)
    if H.dim == 0:
        if binom_rigidity(n1, d1, n2, d2) is False:
            rep.notes.append("eigenspace dimensions differ; no isomorphism possible")
        if base_hom == 0:
            rep.notes.append("base representations are not isomorphic")
        # Theorem: iso bases and d1 = d2 would force an isomorphism.
        rep.consistent = not (base_hom > 0 and d1 == d2)
        return rep
    psi = H.basis[0]
    rep.psi = psi
    ok = H.dim == 1 and psi.is_square and determinant(psi) != 0 and d1 == d2 and n1 == n2
    rep.eigenvalues_agree = list(rep1.eigenvalues) == list(rep2.eigenvalues)
    if not ok or not rep.eigenvalues_agree:
        rep.consistent = False
        rep.notes.append("nonzero hom space violates the rigidity statement")
        return rep
    rep.lift = lift_isomorphism(rep1, rep2, d1, d2, psi, i0=i0)
    rep.consistent = base_hom == 1
    return rep


# -- finite group oracle ------------------------------------------------------


@dataclass
class OracleReport:
    status: str  # "complete" or "Inconclusive"
    order: int | None = None
    norms: list = dc_field(default_factory=list)
    inner: dict = dc_field(default_factory=dict)
    linalg_absolutely_simple: list = dc_field(default_factory=list)
    linalg_hom_dims: dict = dc_field(default_factory=dict)
    agree: bool | None = None

    def to_dict(self):
        return {
            "status": self.status,
            "order": self.order,
            "norms": [format_scalar(x) for x in self.norms],
            "inner": {f"{a},{b}": format_scalar(v) for (a, b), v in self.inner.items()},
            "linalg_absolutely_simple": self.linalg_absolutely_simple,
            "linalg_hom_dims": {f"{a},{b}": v for (a, b), v in self.linalg_hom_dims.items()},
            "agree": self.agree,
        }


def enumerate_group(mats, cap: int):
    """Elements of the generated matrix group, or ``None`` past ``cap``."""
    n = mats[0].rows
    one = Matrix.identity(n)
    seen = {one}
    order = [one]
    todo = [one]
    while todo:
        g = todo.pop()
        for M in mats:
            h = g @ M
            if h not in seen:
                seen.add(h)
                order.append(h)
                if len(order) > cap:
                    return None
                todo.append(h)
    return order


def finite_group_character_oracle(rep, cap: int = 1000) -> OracleReport:
    """Character inner products of all exterior powers, by full enumeration.

    ``chi_d(g)`` is the d-th elementary symmetric function of the
    eigenvalues of ``g``, read off the characteristic polynomial.
    """
    mats = _mats(rep)
    group = enumerate_group(mats, cap)
    if group is None:
        return OracleReport("Inconclusive")
    n = mats[0].rows
    index = {g: i for i, g in enumerate(group)}
    inv = [index[g.inverse()] for g in group]
    chars = []
    for g in group:
        c = charpoly(g)
        chars.append([(-1) ** d * c[n - d] for d in range(n + 1)])
    G = len(group)

    def inner(a, b):
        return sum((chars[i][a] * chars[inv[i]][b] for i in range(G)), Fraction(0)) / G

    norms = [inner(d, d) for d in range(n + 1)]
    cross = {(a, b): inner(a, b) for a in range(n + 1) for b in range(a + 1, n + 1)}
    exts = [exterior_power(rep, d) for d in range(n + 1)]
    abs_simple = [len(enveloping_algebra(e)) == comb(n, d) ** 2 for d, e in enumerate(exts)]
    homs = {(a, b): hom_space(exts[a], exts[b]).dim for (a, b) in cross}
    agree = all((norms[d] == 1) == abs_simple[d] for d in range(n + 1)) and all(
        cross[p] == homs[p] for p in cross
    )
    return OracleReport("complete", G, norms, cross, abs_simple, homs, agree)
