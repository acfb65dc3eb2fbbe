"""Abstract (undirected, simple) graphs and the standard small families.

Vertex and edge ids are strings throughout; builders choose deterministic
ids so that drawings, searches, and serialized files are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import DomainError, StructureError
from .surface import natural_key

VertexId = str
EdgeId = str


@dataclass(frozen=True)
class AbstractGraph:
    """Simple undirected graph with named edges.

    ``edges`` maps each edge id to an ordered endpoint pair; the order is
    meaningful to drawings (crossing sequences run from the first endpoint)
    but the graph itself is undirected: no loops, and at most one edge per
    unordered vertex pair.
    """

    vertices: frozenset[VertexId]
    edges: Mapping[EdgeId, tuple[VertexId, VertexId]]

    def __post_init__(self):
        pairs_seen: dict[frozenset[VertexId], EdgeId] = {}
        for eid, (a, b) in self.edges.items():
            if a == b:
                raise StructureError(f"edge {eid!r} is a loop at {a!r}")
            for v in (a, b):
                if v not in self.vertices:
                    raise StructureError(f"edge {eid!r} uses unknown vertex {v!r}")
            key = frozenset((a, b))
            if key in pairs_seen:
                raise StructureError(
                    f"edges {pairs_seen[key]!r} and {eid!r} join the same vertices"
                )
            pairs_seen[key] = eid

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: VertexId) -> int:
        return sum(1 for a, b in self.edges.values() if v in (a, b))

    def edges_at(self, v: VertexId) -> tuple[EdgeId, ...]:
        return tuple(
            sorted(
                (eid for eid, (a, b) in self.edges.items() if v in (a, b)),
                key=natural_key,
            )
        )

    def adjacent(self, e1: EdgeId, e2: EdgeId) -> bool:
        """Whether two distinct edges share an endpoint."""
        if e1 == e2:
            raise DomainError("adjacency is between two distinct edges")
        a = set(self.edges[e1])
        return bool(a & set(self.edges[e2]))

    def isolated_vertices(self) -> frozenset[VertexId]:
        used = {v for pair in self.edges.values() for v in pair}
        return self.vertices - used

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        if self.isolated_vertices() and len(self.vertices) > 1:
            return False
        adjacency: dict[VertexId, set[VertexId]] = {v: set() for v in self.vertices}
        for a, b in self.edges.values():
            adjacency[a].add(b)
            adjacency[b].add(a)
        start = next(iter(self.vertices))
        seen = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == len(self.vertices)

    def is_complete(self) -> bool:
        n = len(self.vertices)
        return len(self.edges) == n * (n - 1) // 2


def independent_pairs(graph: AbstractGraph) -> int:
    """Number of unordered pairs of edges sharing no endpoint.

    In a simple graph two distinct edges share at most one vertex, so the
    count is C(m,2) minus sum over vertices of C(deg,2).
    """
    m = graph.num_edges
    total = m * (m - 1) // 2
    for v in graph.vertices:
        d = graph.degree(v)
        total -= d * (d - 1) // 2
    return total


def _graph(vertices: Iterable[VertexId], edges: dict[EdgeId, tuple[VertexId, VertexId]]) -> AbstractGraph:
    return AbstractGraph(vertices=frozenset(vertices), edges=edges)


def cycle(k: int) -> AbstractGraph:
    """Cycle on vertices 1..k with edges e1..ek (ei joins i to i+1)."""
    if k < 3:
        raise DomainError(f"a cycle needs at least 3 vertices, got {k}")
    edges = {f"e{i}": (str(i), str(i % k + 1)) for i in range(1, k + 1)}
    return _graph((str(i) for i in range(1, k + 1)), edges)


def path(n: int) -> AbstractGraph:
    """Path on vertices 1..n with edges e1..e(n-1)."""
    if n < 2:
        raise DomainError(f"a path needs at least 2 vertices, got {n}")
    edges = {f"e{i}": (str(i), str(i + 1)) for i in range(1, n)}
    return _graph((str(i) for i in range(1, n + 1)), edges)


def star(n: int) -> AbstractGraph:
    """Star with hub h and leaves 1..n; edge ei joins h to leaf i."""
    if n < 1:
        raise DomainError(f"a star needs at least 1 leaf, got {n}")
    edges = {f"e{i}": ("h", str(i)) for i in range(1, n + 1)}
    return _graph(["h"] + [str(i) for i in range(1, n + 1)], edges)


def complete(n: int) -> AbstractGraph:
    """Complete graph on vertices 1..n; edge ei-j joins i to j for i < j."""
    if n < 1:
        raise DomainError(f"a complete graph needs at least 1 vertex, got {n}")
    edges = {
        f"e{i}-{j}": (str(i), str(j)) for i, j in combinations(range(1, n + 1), 2)
    }
    return _graph((str(i) for i in range(1, n + 1)), edges)


def complete_bipartite(m: int, n: int) -> AbstractGraph:
    """Complete bipartite graph on parts a1..am and b1..bn."""
    if m < 1 or n < 1:
        raise DomainError(f"both parts must be nonempty, got {m} and {n}")
    edges = {
        f"a{i}b{j}": (f"a{i}", f"b{j}")
        for i in range(1, m + 1)
        for j in range(1, n + 1)
    }
    verts = [f"a{i}" for i in range(1, m + 1)] + [f"b{j}" for j in range(1, n + 1)]
    return _graph(verts, edges)


def wheel(k: int) -> AbstractGraph:
    """Wheel: rim cycle 1..k (edges r1..rk) plus hub h with spokes s1..sk."""
    if k < 3:
        raise DomainError(f"a wheel needs a rim of at least 3 vertices, got {k}")
    edges: dict[EdgeId, tuple[VertexId, VertexId]] = {
        f"r{i}": (str(i), str(i % k + 1)) for i in range(1, k + 1)
    }
    for i in range(1, k + 1):
        edges[f"s{i}"] = ("h", str(i))
    return _graph(["h"] + [str(i) for i in range(1, k + 1)], edges)


def double_fan(k: int) -> AbstractGraph:
    """Path 1..2k plus hub a over the odd vertices and hub b over the evens.

    Path edges are p1..p(2k-1); hub edges a1, a3, ... and b2, b4, ....
    The graph has 2k + 2 vertices and 4k - 1 edges.
    """
    if k < 1:
        raise DomainError(f"double fan needs k >= 1, got {k}")
    edges: dict[EdgeId, tuple[VertexId, VertexId]] = {
        f"p{i}": (str(i), str(i + 1)) for i in range(1, 2 * k)
    }
    for i in range(1, 2 * k + 1, 2):
        edges[f"a{i}"] = ("a", str(i))
    for i in range(2, 2 * k + 1, 2):
        edges[f"b{i}"] = ("b", str(i))
    verts = [str(i) for i in range(1, 2 * k + 1)] + ["a", "b"]
    return _graph(verts, edges)
