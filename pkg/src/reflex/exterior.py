"""Exterior powers of reflection representations via compound matrices.

The basis of the d-th exterior power is indexed by strictly increasing
d-tuples in lexicographic order; the matrix of ``w`` on it has the d x d
minors of ``w`` as entries, so signs need no separate bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import InputError
from .linalg import Matrix, determinant, eigenspace, kernel_basis
from .reflection import ReflectionRep


def subsets(n: int, d: int):
    """All d-subsets of range(n), lexicographically ordered."""
    return list(combinations(range(n), d))


def subset_rank(t, n: int) -> int:
    """Position of the increasing tuple ``t`` among the ``len(t)``-subsets of range(n)."""
    d = len(t)
    if any(b <= a for a, b in zip(t, t[1:])) or (t and not (0 <= t[0] and t[-1] < n)):
        raise InputError(f"{t} is not an increasing tuple in range({n})")
    r = 0
    prev = -1
    for pos, x in enumerate(t):
        for y in range(prev + 1, x):
            r += comb(n - 1 - y, d - 1 - pos)
        prev = x
    return r


def subset_unrank(r: int, n: int, d: int):
    if not 0 <= r < comb(n, d):
        raise InputError(f"rank {r} out of range for C({n},{d})")
    out = []
    x = 0
    for pos in range(d):
        while True:
            block = comb(n - 1 - x, d - 1 - pos)
            if r < block:
                break
            r -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def compound_matrix(m: Matrix, d: int) -> Matrix:
    """The d-th compound: entry (R, C) is the minor on rows R, columns C."""
    if not m.is_square:
        raise InputError("compound of a non-square matrix")
    n = m.rows
    if not 0 <= d <= n:
        raise InputError(f"degree {d} outside 0..{n}")
    idx = subsets(n, d)
    if d == 1:
        return m
    return Matrix([[determinant(m.submatrix(R, C)) for C in idx] for R in idx])


def wedge_vector(vectors, n: int | None = None):
    """Coordinates of ``v_1 ^ ... ^ v_d`` in the subset basis."""
    vectors = [tuple(v) for v in vectors]
    if n is None:
        if not vectors:
            raise InputError("empty wedge needs an explicit ambient dimension")
        n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise InputError("wedge factors have different lengths")
    d = len(vectors)
    if d > n:
        return ()
    if d == 0:
        return (Fraction(1),)
    stacked = Matrix.from_columns(vectors)
    cols = tuple(range(d))
    return tuple(determinant(stacked.submatrix(R, cols)) for R in subsets(n, d))


@dataclass(frozen=True)
class ExteriorRep:
    base: ReflectionRep
    d: int
    matrices: tuple

    @property
    def dim(self) -> int:
        return comb(self.base.dim, self.d)

    @property
    def k(self) -> int:
        return len(self.matrices)

    @property
    def eigenvalues(self):
        return self.base.eigenvalues

    @property
    def field(self):
        return self.base.field


def exterior_power(rep: ReflectionRep, d: int) -> ExteriorRep:
    n = rep.dim
    if not 0 <= d <= n:
        raise InputError(f"degree {d} outside 0..{n}")
    return ExteriorRep(rep, d, tuple(compound_matrix(m, d) for m in rep.matrices))


def _check_index(ext, i):
    if not 0 <= i < ext.k:
        raise InputError(f"generator index {i} out of range")


def eigenspace_plus(ext: ExteriorRep, i: int):
    """Fixed space of generator ``i`` on the exterior power."""
    _check_index(ext, i)
    return eigenspace(ext.matrices[i], 1)


def eigenspace_minus(ext: ExteriorRep, i: int):
    """Eigenspace of generator ``i`` for its reflection eigenvalue."""
    _check_index(ext, i)
    return eigenspace(ext.matrices[i], ext.eigenvalues[i])


def intersect_minus(ext: ExteriorRep, indices):
    """Common eigenspace of several generators, each for its own eigenvalue."""
    indices = list(indices)
    if len(set(indices)) != len(indices):
        raise InputError("indices must be distinct")
    for i in indices:
        _check_index(ext, i)
    N = ext.dim
    if not indices:
        return [tuple(Fraction(int(r == c)) for c in range(N)) for r in range(N)]
    rows = []
    for i in indices:
        M = ext.matrices[i]
        lam = ext.eigenvalues[i]
        for r in range(N):
            rows.append([x - lam if r == c else x for c, x in enumerate(M.row(r))])
    return kernel_basis(Matrix(rows))


# -- binomial bookkeeping -----------------------------------------------------


def _check_nd(n, d):
    if not (isinstance(n, int) and isinstance(d, int) and 1 <= d <= n - 1):
        raise InputError(f"need 1 <= d <= n - 1, got n={n}, d={d}")


def binom_rigidity(n1: int, d1: int, n2: int, d2: int) -> bool:
    """True iff the plus- and minus-eigenspace dimensions of a reflection on
    the two exterior powers coincide."""
    _check_nd(n1, d1)
    _check_nd(n2, d2)
    return comb(n1 - 1, d1) == comb(n2 - 1, d2) and comb(n1 - 1, d1 - 1) == comb(n2 - 1, d2 - 1)


def binom_search(n: int, d: int, n_max: int):
    """All ``(n', d')`` with ``n' <= n_max`` matching ``(n, d)`` on each
    binomial equality separately and on both together."""
    _check_nd(n, d)
    plus, minus = comb(n - 1, d), comb(n - 1, d - 1)
    out = {"plus": [], "minus": [], "both": []}
    for n2 in range(2, n_max + 1):
        for d2 in range(1, n2):
            p = comb(n2 - 1, d2) == plus
            m = comb(n2 - 1, d2 - 1) == minus
            if p:
                out["plus"].append((n2, d2))
            if m:
                out["minus"].append((n2, d2))
            if p and m:
                out["both"].append((n2, d2))
    return out


def binom_difference_identity(n: int, d: int) -> bool:
    """Check C(n-1,d) - C(n-1,d-1) == C(n,d) (1 - 2d/n) in exact rationals."""
    if not (1 <= d <= n):
        raise InputError(f"need 1 <= d <= n, got n={n}, d={d}")
    lhs = Fraction(comb(n - 1, d) - comb(n - 1, d - 1))
    return lhs == comb(n, d) * (1 - Fraction(2 * d, n))


def eigen_dimension_table(ext: ExteriorRep):
    """Per generator: (dim plus, dim minus) computed from the matrices."""
    return [
        (len(eigenspace_plus(ext, i)), len(eigenspace_minus(ext, i)))
        for i in range(ext.k)
    ]


def satisfies_eigenvalue_dichotomy(ext: ExteriorRep, i: int) -> bool:
    """(M - I)(M - lambda I) == 0 for generator ``i``."""
    M = ext.matrices[i]
    I = Matrix.identity(M.rows)
    lam = ext.eigenvalues[i]
    return ((M - I) @ (M - I.scale(lam))).is_zero()
