"""Dense exact linear algebra over the scalars of :mod:`reflex.field`.

Vectors are tuples of scalars; :class:`Matrix` is an immutable row-major
matrix.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import InputError
from .field import QuadraticNumber


def _exact(x):
    if isinstance(x, QuadraticNumber) or isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"inexact entry {x!r}")
    if isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"unsupported matrix entry {x!r}")


class Matrix:
    """Immutable matrix of exact scalars."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data, cols: int | None = None):
        data = [tuple(_exact(x) for x in row) for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise InputError("ragged matrix rows")
        self.rows = len(data)
        self.cols = cols
        self._data = tuple(data)
        self._hash = None

    @classmethod
    def _raw(cls, data, rows, cols):
        m = object.__new__(cls)
        m.rows, m.cols, m._data, m._hash = rows, cols, data, None
        return m

    @classmethod
    def identity(cls, n, one=Fraction(1)):
        zero = one - one
        return cls._raw(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def zeros(cls, rows, cols, zero=Fraction(0)):
        return cls._raw(tuple((zero,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def from_columns(cls, columns, rows: int | None = None):
        columns = [tuple(c) for c in columns]
        if not columns:
            return cls([[]] * (rows or 0), 0) if rows else cls._raw((), 0, 0)
        return cls([list(r) for r in zip(*columns)])

    @classmethod
    def diagonal(cls, entries):
        entries = [_exact(e) for e in entries]
        zero = entries[0] - entries[0] if entries else Fraction(0)
        n = len(entries)
        return cls._raw(
            tuple(tuple(entries[i] if i == j else zero for j in range(n)) for i in range(n)), n, n
        )

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def col(self, j):
        return tuple(r[j] for r in self._data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def tolist(self):
        return [list(r) for r in self._data]

    def flat(self):
        return tuple(x for r in self._data for x in r)

    def transpose(self):
        return Matrix._raw(tuple(zip(*self._data)) if self.rows else (), self.cols, self.rows)

    T = property(transpose)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Matrix([{body}])"

    def __add__(self, other):
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows,
            self.cols,
        )

    def __sub__(self, other):
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows,
            self.cols,
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.rows, self.cols)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.transpose()._data
            zero = Fraction(0)
            data = tuple(
                tuple(sum((a * b for a, b in zip(r, c) if a and b), zero) for c in cols)
                for r in self._data
            )
            return Matrix._raw(data, self.rows, other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise InputError(f"vector of length {len(v)} for {self.shape} matrix")
        zero = Fraction(0)
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), zero) for r in self._data)

    def submatrix(self, rows, cols):
        return Matrix._raw(
            tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(rows), len(cols)
        )

    def is_zero(self):
        return not any(x for r in self._data for x in r)

    def trace(self):
        return sum((self._data[i][i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def det(self):
        return determinant(self)

    def inverse(self):
        return inverse(self)

    def __pow__(self, e: int):
        if not self.is_square:
            raise InputError("power of a non-square matrix")
        if e < 0:
            return inverse(self) ** (-e)
        result = Matrix.identity(self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result


def vector(entries):
    return tuple(_exact(x) for x in entries)


def is_zero_vector(v) -> bool:
    return not any(v)


def add_vectors(u, v):
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c, v):
    return tuple(c * a for a in v)


def _rref_rows(rows, ncols):
    """In-place Gauss-Jordan elimination on a list of lists; returns pivots."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c] if not isinstance(pr[c], Fraction) else Fraction(pr[c].denominator, pr[c].numerator)
        if pr[c] != 1:
            rows[r] = pr = [x * inv for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    rows[i] = [a - f * b if b else a for a, b in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix):
    """Reduced row-echelon form.  Returns ``(R, rank, pivot_columns)``."""
    rows = [list(r) for r in m._data]
    pivots = _rref_rows(rows, m.cols)
    return Matrix._raw(tuple(tuple(r) for r in rows), m.rows, m.cols), len(pivots), pivots


def rank(m: Matrix) -> int:
    return rref(m)[1]


def kernel_basis(m: Matrix):
    """Basis of ``{v : m v = 0}`` as a list of tuples."""
    R, rk, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    zero, one = Fraction(0), Fraction(1)
    basis = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -R[r, f]
        basis.append(tuple(v))
    return basis


def solve(a: Matrix, b):
    """One solution ``x`` of ``a x = b``, or ``None`` when inconsistent."""
    b = vector(b)
    if len(b) != a.rows:
        raise InputError(f"right-hand side of length {len(b)} for {a.rows} rows")
    rows = [list(r) + [bi] for r, bi in zip(a._data, b)]
    pivots = _rref_rows(rows, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [Fraction(0)] * a.cols
    for r, p in enumerate(pivots):
        x[p] = rows[r][a.cols]
    return tuple(x)


def eigenspace(m: Matrix, lam):
    """Basis of ``ker(m - lam I)``."""
    if not m.is_square:
        raise InputError("eigenspace of a non-square matrix")
    shifted = Matrix._raw(
        tuple(tuple(x - lam if i == j else x for j, x in enumerate(r)) for i, r in enumerate(m._data)),
        m.rows,
        m.cols,
    )
    return kernel_basis(shifted)


def determinant(m: Matrix):
    if not m.is_square:
        raise InputError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m._data[0][0]
    if n == 2:
        (a, b), (c, d) = m._data
        return a * d - b * c
    rows = [list(r) for r in m._data]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        pc = rows[c]
        piv = pc[c]
        det = det * piv
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                q = f / piv
                rows[i] = [a - q * b for a, b in zip(rows[i], pc)]
    return det


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raise InputError("inverse of a non-square matrix")
    n = m.rows
    one, zero = Fraction(1), Fraction(0)
    rows = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(m._data)]
    pivots = _rref_rows(rows, n)
    if len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return Matrix._raw(tuple(tuple(r[n:]) for r in rows), n, n)


# -- subspaces, always given by (possibly redundant) spanning lists of vectors --


def row_space_basis(vectors, n: int | None = None):
    """Canonical basis (nonzero rref rows) of the span of ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    rows = [list(v) for v in vectors]
    pivots = _rref_rows(rows, len(rows[0]))
    return [tuple(rows[i]) for i in range(len(pivots))]


def span_dim(vectors) -> int:
    return len(row_space_basis(vectors))


def is_independent(vectors) -> bool:
    vectors = list(vectors)
    return span_dim(vectors) == len(vectors)


def same_span(u, v) -> bool:
    return row_space_basis(u) == row_space_basis(v)


def in_span(v, basis) -> bool:
    basis = list(basis)
    if not basis:
        return is_zero_vector(v)
    return span_dim(basis + [tuple(v)]) == span_dim(basis)


def coordinates(v, basis):
    """Coefficients ``c`` with ``sum c_i basis_i = v`` (``basis`` independent)."""
    a = Matrix.from_columns(basis)
    return solve(a, v)


def intersect_spaces(u, v):
    """Basis of the intersection of span(u) and span(v)."""
    u, v = list(u), list(v)
    if not u or not v:
        return []
    a = Matrix.from_columns(u + [scale_vector(-1, w) for w in v])
    sols = kernel_basis(a)
    out = []
    for s in sols:
        w = [Fraction(0)] * len(u[0])
        for c, b in zip(s[: len(u)], u):
            if c:
                w = [x + c * y for x, y in zip(w, b)]
        out.append(tuple(w))
    return row_space_basis(out)


def proportionality(u, v):
    """Return ``c`` with ``u = c * v`` when it exists, else ``None``.

    ``v`` must be nonzero.
    """
    k = next(i for i, x in enumerate(v) if x)
    c = u[k] / v[k]
    if all(a == c * b for a, b in zip(u, v)):
        return c
    return None


def matrix_proportionality(a: Matrix, b: Matrix):
    """``c`` with ``a = c * b``, or ``None``; ``b`` must be nonzero."""
    if a.shape != b.shape:
        return None
    return proportionality(a.flat(), b.flat())


class EchelonBasis:
    """Incrementally maintained echelon basis, used for spin-up closures.

    ``add`` reduces a vector against the stored rows and keeps it when a
    nonzero remainder survives.
    """

    def __init__(self, length: int):
        self.length = length
        self._rows = {}  # pivot column -> row normalized to 1 at the pivot
        self.vectors = []  # original vectors accepted, in insertion order

    def __len__(self):
        return len(self.vectors)

    def reduce(self, v):
        w = list(v)
        for p, row in self._rows.items():
            c = w[p]
            if c:
                w = [a - c * b if b else a for a, b in zip(w, row)]
        return w

    def add(self, v) -> bool:
        w = self.reduce(v)
        p = next((i for i, x in enumerate(w) if x), None)
        if p is None:
            return False
        inv = 1 / w[p]
        w = [x * inv for x in w]
        for q, row in self._rows.items():
            c = row[p]
            if c:
                self._rows[q] = [a - c * b if b else a for a, b in zip(row, w)]
        self._rows[p] = w
        self.vectors.append(tuple(v))
        return True

    def __contains__(self, v):
        return not any(self.reduce(v))
