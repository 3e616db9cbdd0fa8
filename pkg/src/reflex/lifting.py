"""Recover a degree-one isomorphism from an isomorphism of exterior powers.

Given ``psi`` intertwining the d-th exterior powers of two reflection
representations (same generators), every wedge of independent reflection
vectors ``alpha_S`` is sent to a multiple ``zeta_S`` of the matching wedge
``beta_S``.  Ratios of those multiples along arrows of the associated
digraph give edge weights ``z_ij``; multiplying them along walks from a base
vertex gives ``z_i``, and ``f(alpha_i) = z_i beta_i`` on a connected basis
subset ``I`` is the answer.  Every identity the construction relies on is
re-checked at runtime and a failure raises :class:`StructureViolation`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

from .digraph import (
    Digraph,
    associated_digraph,
    connected_basis_subset,
    undirected_path,
)
from .errors import InputError, PsiNotIntertwining, StructureViolation
from .exterior import (
    binom_rigidity,
    compound_matrix,
    exterior_power,
    intersect_minus,
    wedge_vector,
)
from .field import format_scalar
from .linalg import (
    Matrix,
    coordinates,
    determinant,
    eigenspace,
    inverse,
    is_zero_vector,
    matrix_proportionality,
    proportionality,
    span_dim,
)
from .reflection import ReflectionRep, interaction_coefficient


@dataclass
class LiftingContext:
    d: int
    n: int
    I: tuple
    i0: int
    digraph: Digraph
    zeta: dict
    x_table: dict
    y_table: dict
    z_edge: dict = dc_field(default_factory=dict)
    z_vertex: dict = dc_field(default_factory=dict)
    a_coords: dict = dc_field(default_factory=dict)
    b_coords: dict = dc_field(default_factory=dict)

    def to_dict(self):
        fs = format_scalar
        return {
            "d": self.d,
            "n": self.n,
            "I": list(self.I),
            "i0": self.i0,
            "zeta": {",".join(map(str, S)): fs(v) for S, v in sorted(self.zeta.items())},
            "x": {f"{i},{j}": fs(v) for (i, j), v in sorted(self.x_table.items())},
            "y": {f"{i},{j}": fs(v) for (i, j), v in sorted(self.y_table.items())},
            "z_edge": {f"{i},{j}": fs(v) for (i, j), v in sorted(self.z_edge.items())},
            "z_vertex": {str(i): fs(v) for i, v in sorted(self.z_vertex.items())},
            "a": {str(h): [fs(c) for c in v] for h, v in sorted(self.a_coords.items())},
            "b": {str(h): [fs(c) for c in v] for h, v in sorted(self.b_coords.items())},
        }


@dataclass
class LiftResult:
    f: Matrix
    d: int
    context: LiftingContext | None
    scale_to_psi: object
    transcript: list

    def to_dict(self):
        return {
            "d": self.d,
            "f": [[format_scalar(x) for x in r] for r in self.f.tolist()],
            "compound_f_over_psi": format_scalar(self.scale_to_psi),
            "context": None if self.context is None else self.context.to_dict(),
            "transcript": list(self.transcript),
        }


def _intertwines(X: Matrix, mats1, mats2) -> bool:
    return all(X @ A == B @ X for A, B in zip(mats1, mats2))


def precheck(rep1: ReflectionRep, d1: int, rep2: ReflectionRep, d2: int, psi: Matrix):
    """Validate ``psi`` and derive ``d1 == d2``, ``n1 == n2`` and equal
    eigenvalues.  Returns ``(d, n)``."""
    n1, n2 = rep1.dim, rep2.dim
    for n, d in ((n1, d1), (n2, d2)):
        if not (1 <= d <= n - 1):
            raise InputError(f"need 1 <= d <= n - 1, got n={n}, d={d}")
    if rep1.k != rep2.k:
        raise InputError("representations must share the generating set")
    e1, e2 = exterior_power(rep1, d1), exterior_power(rep2, d2)
    if psi.shape != (e2.dim, e1.dim):
        raise PsiNotIntertwining(f"psi has shape {psi.shape}, expected {(e2.dim, e1.dim)}")
    if not _intertwines(psi, e1.matrices, e2.matrices):
        raise PsiNotIntertwining("psi does not commute with the generators")
    if determinant(psi) == 0:
        raise PsiNotIntertwining("psi is singular")
    for i in range(rep1.k):
        dims1 = (len(eigenspace(e1.matrices[i], 1)), len(eigenspace(e1.matrices[i], rep1.eigenvalues[i])))
        dims2 = (len(eigenspace(e2.matrices[i], 1)), len(eigenspace(e2.matrices[i], rep2.eigenvalues[i])))
        if dims1 != dims2:
            raise PsiNotIntertwining(f"eigenspace dimensions differ for generator {i}: {dims1} vs {dims2}")
    if not binom_rigidity(n1, d1, n2, d2) or (n1, d1) != (n2, d2):
        raise PsiNotIntertwining(f"(n, d) profiles differ: {(n1, d1)} vs {(n2, d2)}")
    for i, (lam, mu) in enumerate(zip(rep1.eigenvalues, rep2.eigenvalues)):
        if lam != mu:
            raise PsiNotIntertwining(f"eigenvalues differ at generator {i}: {lam} vs {mu}")
    return d1, n1


def zeta_coefficients(rep1: ReflectionRep, rep2: ReflectionRep, d: int, psi: Matrix):
    """``zeta_S`` with ``psi(alpha_S) = zeta_S beta_S`` for every d-subset S of
    generator indices (0 when the alpha wedge vanishes)."""
    n = rep1.dim
    alphas, betas = rep1.alphas, rep2.alphas
    zeta = {}
    for S in combinations(range(rep1.k), d):
        wa = wedge_vector([alphas[i] for i in S], n)
        wb = wedge_vector([betas[i] for i in S], n)
        if is_zero_vector(wa) != is_zero_vector(wb):
            raise StructureViolation(
                "linear independence of reflection vectors differs between the two sides", subset=S
            )
        if is_zero_vector(wa):
            zeta[S] = wa[0] * 0
            continue
        c = proportionality(psi @ wa, wb)
        if c is None or c == 0:
            raise StructureViolation("psi(alpha wedge) is not a nonzero multiple of beta wedge", subset=S)
        zeta[S] = c
    return zeta


def _zeta(ctx: LiftingContext, indices):
    return ctx.zeta[tuple(sorted(indices))]


def z_edge(ctx: LiftingContext, i: int, j: int):
    """Edge weight for an (undirected) edge of the digraph on ``I``."""
    fwd = (i, j) in ctx.digraph.arrows
    back = (j, i) in ctx.digraph.arrows
    if not (fwd or back):
        raise InputError(f"{i} and {j} are not adjacent")
    x, y = ctx.x_table, ctx.y_table
    vals = []
    if fwd:
        if y[(i, j)] == 0:
            raise StructureViolation("arrow present on one side only", pair=(i, j), x=x[(i, j)], y=y[(i, j)])
        vals.append(y[(i, j)] / x[(i, j)])
    if back:
        if y[(j, i)] == 0:
            raise StructureViolation("arrow present on one side only", pair=(j, i), x=x[(j, i)], y=y[(j, i)])
        vals.append(x[(j, i)] / y[(j, i)])
    if len(vals) == 2 and vals[0] != vals[1]:
        raise StructureViolation("edge weight depends on the arrow used", pair=(i, j), values=vals)
    return vals[0]


def walk_product(ctx: LiftingContext, walk):
    prod = Fraction(1)
    for u, v in zip(walk, walk[1:]):
        prod = prod * z_edge(ctx, u, v)
    return prod


def z_vertex(ctx: LiftingContext, i: int):
    """Product of edge weights along a shortest undirected walk from ``i0``;
    compared against a second walk avoiding one edge of the first when the
    digraph offers one."""
    path = undirected_path(ctx.digraph, ctx.i0, i)
    if path is None:
        raise InputError(f"{i} is not reachable from {ctx.i0}")
    value = walk_product(ctx, path)
    for u, v in zip(path, path[1:]):
        other = undirected_path(ctx.digraph, ctx.i0, i, banned_edge=(u, v))
        if other is not None:
            alt = walk_product(ctx, other)
            if alt != value:
                raise StructureViolation("z value depends on the walk", vertex=i, walks=(path, other))
            break
    return value


def check_walk_lemma(ctx: LiftingContext, walk, js) -> bool:
    """Edge-weight product along ``walk`` equals the zeta ratio for the
    complementary indices ``js`` (distinct, outside both endpoints)."""
    start, end = walk[0], walk[-1]
    return walk_product(ctx, walk) == _zeta(ctx, [end, *js]) / _zeta(ctx, [start, *js])


def build_context(rep1, rep2, d, psi, I=None, i0=None) -> LiftingContext:
    n = rep1.dim
    k = rep1.k
    if I is None:
        I = connected_basis_subset(rep1)
    I = tuple(I)
    if i0 is None:
        i0 = I[0]
    if i0 not in I:
        raise InputError(f"base vertex {i0} not in {I}")
    x = {(i, j): interaction_coefficient(rep1, i, j) for i in range(k) for j in range(k) if i != j}
    y = {(i, j): interaction_coefficient(rep2, i, j) for i in range(k) for j in range(k) if i != j}
    zeta = zeta_coefficients(rep1, rep2, d, psi)
    ctx = LiftingContext(d, n, I, i0, associated_digraph(rep1, I), zeta, x, y)
    for i, j in ctx.digraph.arrows:
        ctx.z_edge[(i, j)] = z_edge(ctx, i, j)
        ctx.z_edge[(j, i)] = 1 / ctx.z_edge[(i, j)]
    for i in I:
        ctx.z_vertex[i] = z_vertex(ctx, i)
    # Consistency around every edge is walk independence in full.
    for (i, j), z in ctx.z_edge.items():
        if ctx.z_vertex[j] != ctx.z_vertex[i] * z:
            raise StructureViolation("z values inconsistent around a cycle", edge=(i, j))
    B = Matrix.from_columns([rep2.alphas[i] for i in I])
    if determinant(B) == 0:
        raise StructureViolation("beta vectors on I are not a basis", I=I)
    for h in range(k):
        if h not in I:
            ctx.a_coords[h] = coordinates(rep1.alphas[h], [rep1.alphas[i] for i in I])
            ctx.b_coords[h] = coordinates(rep2.alphas[h], [rep2.alphas[i] for i in I])
    return ctx


def _check_generator_equations(ctx: LiftingContext, k: int, transcript):
    I, z, x, y = ctx.I, ctx.z_vertex, ctx.x_table, ctx.y_table
    for h in I:
        for i in I:
            if i != h and x[(i, h)] * z[h] != z[i] * y[(i, h)]:
                raise StructureViolation("in-I equation fails", h=h, i=i)
    transcript.append(f"x_ih z_h = z_i y_ih holds for all h, i in I ({len(I)} vertices)")
    for h in range(k):
        if h in I:
            continue
        a, b = ctx.a_coords[h], ctx.b_coords[h]
        for i in I:
            for pos, j in enumerate(I):
                if x[(i, h)] * a[pos] * z[j] != y[(i, h)] * b[pos] * z[i]:
                    raise StructureViolation("out-of-I equation fails", h=h, i=i, j=j)
        transcript.append(f"x_ih a_j z_j = y_ih b_j z_i holds for h = {h}")


def _matrix_from_context(ctx, rep1, rep2):
    A = Matrix.from_columns([rep1.alphas[i] for i in ctx.I])
    B = Matrix.from_columns([tuple(ctx.z_vertex[i] * c for c in rep2.alphas[i]) for i in ctx.I])
    return B @ inverse(A)


def decomposition_spans(rep2: ReflectionRep, d: int, I) -> bool:
    """The common eigenspaces indexed by d-subsets of ``I`` span the whole
    d-th exterior power of the second representation."""
    ext = exterior_power(rep2, d)
    vectors = []
    for S in combinations(I, d):
        sp = intersect_minus(ext, S)
        if len(sp) != 1:
            return False
        vectors.extend(sp)
    return span_dim(vectors) == ext.dim


def lift_isomorphism(rep1, rep2, d1, d2, psi, i0=None) -> LiftResult:
    transcript = []
    d, n = precheck(rep1, d1, rep2, d2, psi)
    transcript.append(f"precheck: d = {d}, n = {n}, eigenvalues agree")
    mats1, mats2 = rep1.matrices, rep2.matrices
    if d == 1:
        f = psi
        if not _intertwines(f, mats1, mats2):
            raise StructureViolation("degree-one psi does not intertwine")
        transcript.append("d = 1: f = psi")
        return LiftResult(f, d, None, 1, transcript)

    ctx = build_context(rep1, rep2, d, psi, i0=i0)
    transcript.append(f"connected basis subset I = {list(ctx.I)}, base vertex {ctx.i0}")
    digraph_coincidence(rep1, rep2, psi, d, checked=True)
    transcript.append("associated digraphs coincide")
    if not decomposition_spans(rep2, d, ctx.I):
        raise StructureViolation("common eigenspaces do not decompose the target", I=ctx.I)
    transcript.append("target exterior power decomposes into one-dimensional common eigenspaces")
    _check_generator_equations(ctx, rep1.k, transcript)
    f = _matrix_from_context(ctx, rep1, rep2)
    if determinant(f) == 0 or not _intertwines(f, mats1, mats2):
        raise StructureViolation("lifted map is not an isomorphism of representations", f=f)
    transcript.append(f"f intertwines all {rep1.k} generators")
    c = matrix_proportionality(compound_matrix(f, d), psi)
    if c is None:
        raise StructureViolation("compound of f is not proportional to psi")
    transcript.append(f"compound(f, {d}) = {format_scalar(c)} * psi")

    if len(ctx.I) > 1:
        other = ctx.I[-1] if ctx.i0 != ctx.I[-1] else ctx.I[0]
        ctx2 = build_context(rep1, rep2, d, psi, I=ctx.I, i0=other)
        f2 = _matrix_from_context(ctx2, rep1, rep2)
        r = matrix_proportionality(f2, f)
        if r is None:
            raise StructureViolation("f depends on the base vertex beyond a scalar", i0=(ctx.i0, other))
        transcript.append(f"base vertex {other} gives {format_scalar(r)} * f")
    return LiftResult(f, d, ctx, c, transcript)


def digraph_coincidence(rep1, rep2, psi, d, checked: bool = False) -> bool:
    """The two associated digraphs on all generators are equal."""
    if not checked:
        precheck(rep1, d, rep2, d, psi)
    g1 = associated_digraph(rep1)
    g2 = associated_digraph(rep2)
    if g1.arrows != g2.arrows:
        raise StructureViolation(
            "associated digraphs differ",
            only_first=sorted(g1.arrows - g2.arrows),
            only_second=sorted(g2.arrows - g1.arrows),
        )
    return True
