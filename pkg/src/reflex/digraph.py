"""Associated digraphs, connectivity and the move calculus on vertex subsets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InputError, NotIrreducibleEvidence
from .linalg import in_span, is_independent
from .reflection import ReflectionRep, interaction_coefficient


@dataclass(frozen=True)
class Digraph:
    vertices: tuple
    arrows: frozenset
    labels: tuple = ()

    def __post_init__(self):
        vs = set(self.vertices)
        for i, j in self.arrows:
            if i == j:
                raise InputError(f"loop at {i}")
            if i not in vs or j not in vs:
                raise InputError(f"arrow {i}->{j} leaves the vertex set")

    def label(self, v) -> str:
        if self.labels:
            return self.labels[self.vertices.index(v)]
        return str(v)

    def successors(self, v):
        return sorted(j for i, j in self.arrows if i == v)

    def neighbours(self, v):
        """Undirected neighbours."""
        return sorted({j for i, j in self.arrows if i == v} | {i for i, j in self.arrows if j == v})

    def spanned(self, J) -> "Digraph":
        J = sorted(J)
        arrows = frozenset((i, j) for i, j in self.arrows if i in J and j in J)
        labels = tuple(self.label(v) for v in J) if self.labels else ()
        return Digraph(tuple(J), arrows, labels)


@dataclass(frozen=True)
class Move:
    source: frozenset
    arrow: tuple
    target: frozenset
    forward: bool = True


def associated_digraph(rep: ReflectionRep, I=None) -> Digraph:
    """Arrow ``i -> j`` iff ``s_j`` moves ``alpha_i``."""
    I = sorted(range(rep.k) if I is None else set(I))
    if not I:
        raise InputError("vertex set must be nonempty")
    arrows = frozenset(
        (i, j) for i in I for j in I if i != j and interaction_coefficient(rep, i, j) != 0
    )
    return Digraph(tuple(I), arrows, tuple(rep.names[i] for i in I))


def _reach(g: Digraph, start, step):
    seen = {start}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        for w in step(v):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def is_weakly_connected(g: Digraph) -> bool:
    if not g.vertices:
        return False
    return len(_reach(g, g.vertices[0], g.neighbours)) == len(g.vertices)


def is_strongly_connected(g: Digraph) -> bool:
    if not g.vertices:
        return False
    v0 = g.vertices[0]
    if len(_reach(g, v0, g.successors)) != len(g.vertices):
        return False
    preds = lambda v: [i for i, j in g.arrows if j == v]
    return len(_reach(g, v0, preds)) == len(g.vertices)


def undirected_path(g: Digraph, start, end, banned_edge=None):
    """Shortest undirected walk ``[start, ..., end]`` or ``None``.

    ``banned_edge`` (an unordered pair) is skipped, which lets callers look
    for a second, different walk.
    """
    banned = frozenset(banned_edge) if banned_edge else None
    parent = {start: None}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        if v == end:
            break
        for w in g.neighbours(v):
            if banned is not None and frozenset((v, w)) == banned:
                continue
            if w not in parent:
                parent[w] = v
                todo.append(w)
    if end not in parent:
        return None
    path = [end]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def connected_basis_subset(rep: ReflectionRep):
    """Indices ``I`` with ``{alpha_i}`` a basis and ``G_I`` weakly connected.

    Greedy growth from the lowest index: adjoin the first ``i0`` (scanning
    ``(j, i0)`` lexicographically) with ``s_i0 alpha_j`` outside the current
    span.  A stall means the span is a proper invariant subspace, which is
    raised as :class:`NotIrreducibleEvidence`.
    """
    n = rep.dim
    alphas = rep.alphas
    J = [0]
    while len(J) < n:
        span = [alphas[j] for j in J]
        for j in sorted(J):
            adj = next(
                (i0 for i0 in range(rep.k) if not in_span(rep.matrices[i0] @ alphas[j], span)),
                None,
            )
            if adj is not None:
                J.append(adj)
                break
        else:
            raise NotIrreducibleEvidence(
                f"span of reflection vectors {sorted(J)} is a proper invariant subspace", span
            )
    I = tuple(sorted(J))
    assert is_independent([alphas[i] for i in I])
    assert is_weakly_connected(associated_digraph(rep, I))
    return I


def apply_move(J, arrow, g: Digraph | None = None):
    """Move vertex ``i`` of ``J`` to ``j`` along the arrow ``i -> j``."""
    J = frozenset(J)
    i, j = arrow
    if i not in J:
        raise InputError(f"{i} is not in {sorted(J)}")
    if j in J:
        raise InputError(f"target {j} already in {sorted(J)}")
    if g is not None and (i, j) not in g.arrows:
        raise InputError(f"{i}->{j} is not an arrow")
    return (J - {i}) | {j}


def _neighbour_states(g: Digraph, S):
    for i, j in sorted(g.arrows):
        if i in S and j not in S:
            yield Move(S, (i, j), (S - {i}) | {j}, True)
        elif j in S and i not in S:
            yield Move(S, (i, j), (S - {j}) | {i}, False)


def move_sequence(g: Digraph, J, J_target):
    """Shortest list of moves turning ``J`` into ``J_target`` (BFS over subsets)."""
    J, J_target = frozenset(J), frozenset(J_target)
    if len(J) != len(J_target):
        raise InputError("subsets must have the same cardinality")
    vs = set(g.vertices)
    if not (J <= vs and J_target <= vs):
        raise InputError("subsets must consist of vertices of the digraph")
    if not is_weakly_connected(g):
        raise InputError("digraph is not weakly connected")
    parent = {J: None}
    todo = deque([J])
    while todo:
        S = todo.popleft()
        if S == J_target:
            break
        for mv in _neighbour_states(g, S):
            if mv.target not in parent:
                parent[mv.target] = mv
                todo.append(mv.target)
    moves = []
    S = J_target
    while parent[S] is not None:
        moves.append(parent[S])
        S = parent[S].source
    return moves[::-1]


def replay(J, moves):
    S = frozenset(J)
    for mv in moves:
        if mv.source != S:
            raise InputError("move sequence is not contiguous")
        i, j = mv.arrow
        S = (S - {i}) | {j} if mv.forward else (S - {j}) | {i}
        if S != mv.target:
            raise InputError("move does not land on its recorded target")
    return S


def to_dot(g: Digraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{g.label(v)}";')
    for i, j in sorted(g.arrows):
        lines.append(f'  "{g.label(i)}" -> "{g.label(j)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
