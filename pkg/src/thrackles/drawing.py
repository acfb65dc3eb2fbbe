"""Combinatorial drawings of graphs on surfaces.

A drawing records, per vertex, the clockwise cyclic order of incident
edges; per edge, the sequence of crossings met while travelling from the
edge's first declared endpoint; per crossing, the two edges involved and a
bit fixing the local over-under-free crossing chart (clockwise around the
crossing point, bit 0 reads first-in, second-in, first-out, second-out;
bit 1 reads first-in, second-out, first-out, second-in); and per edge, the
set of its arc pieces carrying sign -1.

Planarizing the drawing (one node per vertex and per crossing, one segment
per arc piece) yields an embedding scheme whose surface is where the
drawing lives. Thrackle verification counts crossings between edge pairs:
a thrackle needs adjacent pairs never to cross and independent pairs to
cross exactly once; the generalized form needs even and odd counts
respectively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DomainError, StructureError
from .graphs import AbstractGraph, EdgeId, VertexId
from .surface import (
    EmbeddingScheme,
    SegEnd,
    SurfaceClass,
    euler_genus_sum,
    natural_key,
)

CrossingId = str


@dataclass(frozen=True)
class Crossing:
    """One transversal crossing between two distinct edges.

    ``bit`` fixes which way the second edge runs relative to the first in
    the local chart; swapping the roles of the two edges flips it.
    """

    edge_a: EdgeId
    edge_b: EdgeId
    bit: int

    def __post_init__(self):
        if self.edge_a == self.edge_b:
            raise StructureError(f"edge {self.edge_a!r} cannot cross itself")
        if self.bit not in (0, 1):
            raise StructureError(f"crossing bit must be 0 or 1, got {self.bit!r}")

    def other(self, eid: EdgeId) -> EdgeId:
        if eid == self.edge_a:
            return self.edge_b
        if eid == self.edge_b:
            return self.edge_a
        raise DomainError(f"edge {eid!r} is not part of this crossing")


def seg_id(eid: EdgeId, index: int) -> str:
    """Segment id of an edge's arc pieces: edge id, dot, piece index."""
    return f"{eid}.{index}"


@dataclass(frozen=True)
class Drawing:
    """A graph drawn on a surface, given combinatorially.

    ``rotations`` must list every vertex of positive degree with exactly
    its incident edges in clockwise order. ``orders`` lists each edge's
    crossings from the edge's first declared endpoint; edges that cross
    nothing may be omitted. ``negative`` holds, per edge, the indices of
    arc pieces with sign -1 (piece i lies between crossings i-1 and i).
    Isolated vertices are carried by the graph but take no part in the
    planarized map.
    """

    graph: AbstractGraph
    rotations: Mapping[VertexId, tuple[EdgeId, ...]]
    crossings: Mapping[CrossingId, Crossing]
    orders: Mapping[EdgeId, tuple[CrossingId, ...]]
    negative: Mapping[EdgeId, frozenset[int]]

    def __post_init__(self):
        if not self.graph.edges:
            raise StructureError("a drawing needs at least one edge")
        isolated = self.graph.isolated_vertices()
        for v in self.graph.vertices:
            rot = self.rotations.get(v)
            if v in isolated:
                if rot:
                    raise StructureError(f"isolated vertex {v!r} has a rotation")
                continue
            if rot is None:
                raise StructureError(f"vertex {v!r} is missing its rotation")
            expected = set(self.graph.edges_at(v))
            if len(rot) != len(expected) or set(rot) != expected:
                raise StructureError(
                    f"rotation at {v!r} must list exactly its incident edges once; "
                    f"got {rot!r}"
                )
        for v in self.rotations:
            if v not in self.graph.vertices:
                raise StructureError(f"rotation given for unknown vertex {v!r}")

        for xid, x in self.crossings.items():
            if not isinstance(xid, str):
                raise StructureError(f"crossing id {xid!r} must be a string")
            if xid in self.graph.vertices:
                raise StructureError(f"crossing id {xid!r} collides with a vertex id")
            for eid in (x.edge_a, x.edge_b):
                if eid not in self.graph.edges:
                    raise StructureError(f"crossing {xid!r} uses unknown edge {eid!r}")

        placed: dict[CrossingId, list[EdgeId]] = {xid: [] for xid in self.crossings}
        for eid, order in self.orders.items():
            if eid not in self.graph.edges:
                raise StructureError(f"order given for unknown edge {eid!r}")
            seen: set[CrossingId] = set()
            for xid in order:
                if xid not in self.crossings:
                    raise StructureError(f"edge {eid!r} order names unknown crossing {xid!r}")
                if xid in seen:
                    raise StructureError(f"edge {eid!r} meets crossing {xid!r} twice in its order")
                seen.add(xid)
                x = self.crossings[xid]
                if eid not in (x.edge_a, x.edge_b):
                    raise StructureError(
                        f"crossing {xid!r} appears on edge {eid!r} but involves "
                        f"{x.edge_a!r} and {x.edge_b!r}"
                    )
                placed[xid].append(eid)
        for xid, on in placed.items():
            x = self.crossings[xid]
            if sorted(on) != sorted((x.edge_a, x.edge_b)):
                raise StructureError(
                    f"crossing {xid!r} must appear in the orders of exactly "
                    f"{x.edge_a!r} and {x.edge_b!r}; found it on {on!r}"
                )

        for eid, pieces in self.negative.items():
            if eid not in self.graph.edges:
                raise StructureError(f"signs given for unknown edge {eid!r}")
            top = len(self.orders.get(eid, ()))
            for i in pieces:
                if not (0 <= i <= top):
                    raise StructureError(
                        f"edge {eid!r} has no arc piece {i} (it has {top + 1} pieces)"
                    )

    # -- accessors -------------------------------------------------------

    def order_of(self, eid: EdgeId) -> tuple[CrossingId, ...]:
        return self.orders.get(eid, ())

    def negatives_of(self, eid: EdgeId) -> frozenset[int]:
        return self.negative.get(eid, frozenset())

    def piece_count(self, eid: EdgeId) -> int:
        return len(self.order_of(eid)) + 1

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    def pair_crossing_counts(self) -> dict[frozenset[EdgeId], int]:
        counts: dict[frozenset[EdgeId], int] = {}
        for x in self.crossings.values():
            key = frozenset((x.edge_a, x.edge_b))
            counts[key] = counts.get(key, 0) + 1
        return counts

    # -- planarization ---------------------------------------------------

    def scheme(self) -> EmbeddingScheme:
        """Planarized map: vertices and crossings become nodes, arc pieces
        become signed segments."""
        segments: dict[str, tuple[str, str]] = {}
        sign: dict[str, int] = {}
        waypoints: dict[EdgeId, list[str]] = {}
        for eid, (v1, v2) in self.graph.edges.items():
            stops = [v1, *self.order_of(eid), v2]
            waypoints[eid] = stops
            negs = self.negatives_of(eid)
            for i in range(len(stops) - 1):
                sid = seg_id(eid, i)
                segments[sid] = (stops[i], stops[i + 1])
                sign[sid] = -1 if i in negs else 1

        rotation: dict[str, tuple[SegEnd, ...]] = {}
        for v, rot in self.rotations.items():
            if not rot:
                continue
            darts: list[SegEnd] = []
            for eid in rot:
                v1, v2 = self.graph.edges[eid]
                if v == v1:
                    darts.append((seg_id(eid, 0), 0))
                else:
                    darts.append((seg_id(eid, len(self.order_of(eid))), 1))
            rotation[v] = tuple(darts)

        for xid, x in self.crossings.items():
            pa = self.order_of(x.edge_a).index(xid)
            pb = self.order_of(x.edge_b).index(xid)
            a_in: SegEnd = (seg_id(x.edge_a, pa), 1)
            a_out: SegEnd = (seg_id(x.edge_a, pa + 1), 0)
            b_in: SegEnd = (seg_id(x.edge_b, pb), 1)
            b_out: SegEnd = (seg_id(x.edge_b, pb + 1), 0)
            if x.bit == 0:
                rotation[xid] = (a_in, b_in, a_out, b_out)
            else:
                rotation[xid] = (a_in, b_out, a_out, b_in)

        return EmbeddingScheme(segments=segments, rotation=rotation, sign=sign)

    def surface(self) -> SurfaceClass:
        """Surface the drawing lives on (connected sum over components)."""
        return euler_genus_sum(self.scheme())


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking the thrackle conditions on a drawing."""

    is_thrackle: bool
    is_generalized_thrackle: bool
    violations: tuple[str, ...]
    surface: SurfaceClass


def verify_thrackle(drawing: Drawing) -> VerificationReport:
    """Check both thrackle conditions on every edge pair.

    Violations describe failures of the strict condition (adjacent pairs
    crossing at all, independent pairs not crossing exactly once); the
    generalized parity condition is reported alongside. Mismatches are
    reported, never raised.
    """
    counts = drawing.pair_crossing_counts()
    eids = sorted(drawing.graph.edges, key=natural_key)
    violations: list[str] = []
    strict = True
    generalized = True
    for i, e1 in enumerate(eids):
        for e2 in eids[i + 1 :]:
            c = counts.get(frozenset((e1, e2)), 0)
            if drawing.graph.adjacent(e1, e2):
                if c != 0:
                    strict = False
                    violations.append(f"adjacent edges {e1}, {e2} cross {c} time(s)")
                if c % 2 != 0:
                    generalized = False
            else:
                if c != 1:
                    strict = False
                    violations.append(f"independent edges {e1}, {e2} cross {c} time(s)")
                if c % 2 != 1:
                    generalized = False
    return VerificationReport(
        is_thrackle=strict,
        is_generalized_thrackle=generalized,
        violations=tuple(violations),
        surface=drawing.surface(),
    )


def restrict(
    drawing: Drawing,
    keep_edges: Iterable[EdgeId],
    drop_isolated: bool = False,
) -> Drawing:
    """Sub-drawing induced by a set of edges.

    Crossings between a kept and a dropped edge are smoothed away: the kept
    edge's arc pieces on either side merge, and the merged piece is
    negative exactly when an odd number of the merged pieces were. Vertex
    rotations keep their cyclic order. With ``drop_isolated`` vertices left
    without incident kept edges are removed from the graph as well.
    """
    keep = set(keep_edges)
    if not keep:
        raise DomainError("restriction needs at least one edge")
    unknown = keep - set(drawing.graph.edges)
    if unknown:
        raise DomainError(f"unknown edges in restriction: {sorted(unknown)}")

    new_edges = {eid: drawing.graph.edges[eid] for eid in keep}
    used = {v for pair in new_edges.values() for v in pair}
    if drop_isolated:
        new_vertices = frozenset(used)
    else:
        new_vertices = drawing.graph.vertices
    graph = AbstractGraph(vertices=new_vertices, edges=new_edges)

    crossings = {
        xid: x
        for xid, x in drawing.crossings.items()
        if x.edge_a in keep and x.edge_b in keep
    }

    orders: dict[EdgeId, tuple[CrossingId, ...]] = {}
    negative: dict[EdgeId, frozenset[int]] = {}
    for eid in keep:
        old_order = drawing.order_of(eid)
        kept_positions = [i for i, xid in enumerate(old_order) if xid in crossings]
        if kept_positions:
            orders[eid] = tuple(old_order[i] for i in kept_positions)
        negs = drawing.negatives_of(eid)
        # merged piece j spans old pieces bounds[j]+1 .. bounds[j+1]
        bounds = [-1] + kept_positions + [len(old_order)]
        new_negs = set()
        for j in range(len(bounds) - 1):
            span = range(bounds[j] + 1, bounds[j + 1] + 1)
            if sum(1 for i in span if i in negs) % 2:
                new_negs.add(j)
        if new_negs:
            negative[eid] = frozenset(new_negs)

    rotations = {
        v: tuple(e for e in rot if e in keep)
        for v, rot in drawing.rotations.items()
        if v in new_vertices and any(e in keep for e in rot)
    }

    return Drawing(
        graph=graph,
        rotations=rotations,
        crossings=crossings,
        orders=orders,
        negative=negative,
    )
