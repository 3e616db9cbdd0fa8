"""Generalized reflections and reflection representations.

A generalized reflection is a diagonalizable ``s`` with ``rank(s - I) = 1``.
Writing ``s v = v + f(v) alpha`` pins down the reflection vector ``alpha``
(up to scale), the linear functional ``f`` and the eigenvalue
``lambda = 1 + f(alpha)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    FieldMismatch,
    InputError,
    NotDiagonalizable,
    NotInvertible,
    NotRankOne,
    ParseError,
)
from .field import RATIONAL, Field, QuadraticNumber
from .linalg import Matrix, determinant, kernel_basis, rank

FILE_HEADER = "reflex-rep v1"


@dataclass(frozen=True)
class ReflectionGenerator:
    name: str
    matrix: Matrix
    alpha: tuple
    eigenvalue: object
    functional: tuple
    hyperplane: tuple = dc_field(repr=False)

    @property
    def dim(self):
        return self.matrix.rows

    def f(self, v):
        """Evaluate the functional on ``v``."""
        return sum((a * b for a, b in zip(self.functional, v) if a and b), Fraction(0))

    def act(self, v):
        return self.matrix @ v


def _first_nonzero(v):
    return next(i for i, x in enumerate(v) if x)


def validate_reflection(m: Matrix, name: str = "s") -> ReflectionGenerator:
    """Check that ``m`` is an invertible generalized reflection and extract
    its data.  ``alpha`` is normalized to have first nonzero entry 1."""
    if not m.is_square:
        raise InputError(f"{name}: matrix is {m.rows}x{m.cols}, not square")
    n = m.rows
    if determinant(m) == 0:
        raise NotInvertible(f"{name}: matrix is singular")
    a = m - Matrix.identity(n)
    r = rank(a)
    if r != 1:
        raise NotRankOne(f"{name}: rank(s - I) = {r}")
    col = next(c for c in a.columns() if any(c))
    p = _first_nonzero(col)
    alpha = tuple(x / col[p] for x in col)
    # s - I = alpha (x) f, and alpha[p] = 1, so f is row p of s - I.
    functional = a.row(p)
    lam_minus_1 = sum((x * y for x, y in zip(functional, alpha)), Fraction(0))
    if lam_minus_1 == 0:
        raise NotDiagonalizable(f"{name}: transvection (f(alpha) = 0)")
    return ReflectionGenerator(
        name=name,
        matrix=m,
        alpha=alpha,
        eigenvalue=1 + lam_minus_1,
        functional=tuple(functional),
        hyperplane=tuple(kernel_basis(a)),
    )


def rescale_reflection_vector(g: ReflectionGenerator, c) -> ReflectionGenerator:
    if not c:
        raise InputError("rescaling factor must be nonzero")
    return ReflectionGenerator(
        name=g.name,
        matrix=g.matrix,
        alpha=tuple(c * x for x in g.alpha),
        eigenvalue=g.eigenvalue,
        functional=tuple(x / c for x in g.functional),
        hyperplane=g.hyperplane,
    )


def with_reflection_vector(g: ReflectionGenerator, alpha) -> ReflectionGenerator:
    """Same generator with ``alpha`` replaced by a proportional vector."""
    p = _first_nonzero(g.alpha)
    c = alpha[p] / g.alpha[p]
    out = rescale_reflection_vector(g, c)
    if out.alpha != tuple(alpha):
        raise InputError(f"{g.name}: vector is not a reflection vector")
    return out


@dataclass(frozen=True)
class ReflectionRep:
    """``k >= 1`` reflection generators acting on the same exact space.

    Group relations are not stored: everything downstream uses only the
    generator matrices.
    """

    generators: tuple
    field: Field = RATIONAL

    def __post_init__(self):
        if not self.generators:
            raise InputError("a reflection representation needs at least one generator")
        n = self.generators[0].dim
        if any(g.dim != n for g in self.generators):
            raise InputError("generator matrices have different sizes")

    @classmethod
    def from_matrices(cls, matrices, names=None, field: Field | None = None):
        matrices = list(matrices)
        if field is None:
            field = _infer_field(matrices)
        if names is None:
            names = [f"s{i}" for i in range(len(matrices))]
        gens = []
        for name, m in zip(names, matrices):
            if not isinstance(m, Matrix):
                m = Matrix([[field.coerce(x) for x in row] for row in m])
            else:
                m = Matrix([[field.coerce(x) for x in row] for row in m.tolist()])
            gens.append(validate_reflection(m, name))
        return cls(tuple(gens), field)

    @property
    def dim(self) -> int:
        return self.generators[0].dim

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def matrices(self):
        return [g.matrix for g in self.generators]

    @property
    def alphas(self):
        return [g.alpha for g in self.generators]

    @property
    def eigenvalues(self):
        return [g.eigenvalue for g in self.generators]

    @property
    def names(self):
        return [g.name for g in self.generators]

    def rescaled(self, scalings) -> "ReflectionRep":
        """Rescale every reflection vector; the matrices do not change."""
        gens = tuple(rescale_reflection_vector(g, c) for g, c in zip(self.generators, scalings))
        return ReflectionRep(gens, self.field)

    def with_alphas(self, alphas) -> "ReflectionRep":
        gens = tuple(with_reflection_vector(g, a) for g, a in zip(self.generators, alphas))
        return ReflectionRep(gens, self.field)


def _infer_field(matrices) -> Field:
    D = None
    for m in matrices:
        rows = m.tolist() if isinstance(m, Matrix) else m
        for row in rows:
            for x in row:
                if isinstance(x, QuadraticNumber):
                    if D is not None and D != x.D:
                        raise FieldMismatch("generators use different quadratic fields")
                    D = x.D
    return Field(D)


def interaction_coefficient(rep: ReflectionRep, j: int, i: int):
    """``x_ji`` in ``s_i alpha_j = alpha_j + x_ji alpha_i``, i.e. ``f_i(alpha_j)``."""
    if i == j:
        raise InputError("interaction coefficient needs distinct indices")
    k = rep.k
    if not (0 <= i < k and 0 <= j < k):
        raise InputError(f"generator index out of range 0..{k - 1}")
    return rep.generators[i].f(rep.generators[j].alpha)


def interaction_table(rep: ReflectionRep):
    """Dict ``(j, i) -> x_ji`` over all ordered pairs of distinct indices."""
    return {
        (j, i): interaction_coefficient(rep, j, i)
        for j in range(rep.k)
        for i in range(rep.k)
        if i != j
    }


# -- text file format --------------------------------------------------------


def dumps_rep(rep: ReflectionRep) -> str:
    lines = [FILE_HEADER, f"field {rep.field.describe()}", f"dim {rep.dim}"]
    for g in rep.generators:
        lines.append(f"gen {g.name}")
        for row in g.matrix.tolist():
            lines.append(" ".join(rep.field.format(x) for x in row))
    return "\n".join(lines) + "\n"


def loads_rep(text: str) -> ReflectionRep:
    """Parse the ``reflex-rep v1`` format.  Blank lines and ``#`` comments are
    ignored; scalar tokens must match the declared field."""
    names, matrices, fld = loads_matrices(text)
    return ReflectionRep.from_matrices(matrices, names, fld)


def loads_matrices(text: str):
    """Parse a representation file without validating the generators.

    Returns ``(names, matrices, field)``.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != FILE_HEADER:
        raise ParseError(f"missing header {FILE_HEADER!r}")
    if len(lines) < 3:
        raise ParseError("truncated representation file")
    parts = lines[1].split()
    if parts == ["field", "rational"]:
        fld = RATIONAL
    elif len(parts) == 3 and parts[:2] == ["field", "quadratic"] and parts[2].isdigit():
        fld = Field(int(parts[2]))
    else:
        raise ParseError(f"bad field line {lines[1]!r}")
    parts = lines[2].split()
    if len(parts) != 2 or parts[0] != "dim" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise ParseError(f"bad dim line {lines[2]!r}")
    n = int(parts[1])
    names, matrices = [], []
    pos = 3
    while pos < len(lines):
        head = lines[pos].split()
        if len(head) != 2 or head[0] != "gen":
            raise ParseError(f"expected 'gen <name>', got {lines[pos]!r}")
        block = lines[pos + 1 : pos + 1 + n]
        if len(block) != n:
            raise ParseError(f"generator {head[1]} has fewer than {n} rows")
        rows = []
        for line in block:
            tokens = _split_tokens(line)
            if len(tokens) != n:
                raise ParseError(f"row {line!r} of {head[1]} does not have {n} entries")
            rows.append([fld.parse(t, strict=True) for t in tokens])
        names.append(head[1])
        matrices.append(Matrix(rows))
        pos += 1 + n
    if not matrices:
        raise ParseError("no generators")
    return names, matrices, fld


_TOKEN_RE = re.compile(
    r"\s*([+-]?\s*\d+(?:\s*/\s*\d+)?\s*[+-]\s*\d+(?:\s*/\s*\d+)?\s*\*\s*sqrt\s*\(\s*\d+\s*\)"
    r"|[+-]?\d+(?:\s*/\s*\d+)?)"
)


def _split_tokens(line: str):
    """Split a matrix row into scalar tokens, allowing spaces inside tokens."""
    tokens, pos = [], 0
    line = line.rstrip()
    while pos < len(line):
        m = _TOKEN_RE.match(line, pos)
        if not m:
            raise ParseError(f"malformed scalar near {line[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def load_rep(path) -> ReflectionRep:
    with open(path) as fh:
        return loads_rep(fh.read())


def dump_rep(rep: ReflectionRep, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_rep(rep))
