"""Exhaustive minimum-genus search over thrackle structures of a small graph.

A structure fixes, for each vertex, a cyclic rotation; for each edge, the
order of its crossings; for each independent pair, an interleaving bit; and
(in ``all`` mode) a sign pattern normalized so that a spanning tree of the
planarized map is all-positive. Every structure encodes one crossing per
independent pair and none on adjacent pairs, so each yielded drawing is a
thrackle by construction; the verifier is run against it in tests as a
consistency check, not here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Iterator

from .drawing import Crossing, Drawing
from .errors import BudgetExceeded, DomainError
from .fileformat import serialize_drawing
from .graphs import AbstractGraph
from .surface import SurfaceClass, natural_key

DEFAULT_BUDGET = 12

_MODES = ("orientable", "all")


def _independent_pairs(graph: AbstractGraph) -> tuple[tuple[str, str], ...]:
    eids = sorted(graph.edges, key=natural_key)
    out = []
    for i, ea in enumerate(eids):
        for eb in eids[i + 1 :]:
            if not graph.adjacent(ea, eb):
                out.append((ea, eb))
    return tuple(out)


@dataclass(frozen=True)
class SearchSpace:
    """The choice sets enumerated for one graph.

    ``rotation_choices`` lists the (deg-1)! cyclic orders per vertex (first
    incident edge pinned); ``order_choices`` lists the permutations of each
    edge's crossing ids; one bit per pair; ``free_signs`` counts the
    segments left free after forcing a spanning tree to +.
    """

    graph: AbstractGraph
    pairs: tuple[tuple[str, str], ...]
    rotation_choices: dict[str, tuple[tuple[str, ...], ...]]
    order_choices: dict[str, tuple[tuple[str, ...], ...]]
    mode: str

    @property
    def free_signs(self) -> int:
        if self.mode == "orientable":
            return 0
        n = self.graph.num_vertices - len(self.graph.isolated_vertices())
        m = self.graph.num_edges
        c = len(self.pairs)
        comp = len(_edge_components(self.graph))
        return m + c - n + comp

    @property
    def size(self) -> int:
        total = 1
        for choices in self.rotation_choices.values():
            total *= len(choices)
        for choices in self.order_choices.values():
            total *= len(choices)
        total *= 2 ** len(self.pairs)
        total *= 2**self.free_signs
        return total


def _edge_components(graph: AbstractGraph) -> list[frozenset[str]]:
    seen: set[str] = set()
    comps = []
    for v in sorted(graph.vertices, key=natural_key):
        if v in seen or graph.degree(v) == 0:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for eid in graph.edges_at(x):
                v1, v2 = graph.edges[eid]
                y = v2 if x == v1 else v1
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def build_space(
    graph: AbstractGraph, mode: str = "orientable", budget: int = DEFAULT_BUDGET
) -> SearchSpace:
    """Choice sets for ``graph``, refusing when the pair count exceeds ``budget``."""
    if mode not in _MODES:
        raise DomainError(f"mode must be one of {_MODES}, got {mode!r}")
    if graph.num_edges == 0:
        raise DomainError("search needs a graph with at least one edge")
    pairs = _independent_pairs(graph)

    rotation_choices: dict[str, tuple[tuple[str, ...], ...]] = {}
    for v in sorted(graph.vertices, key=natural_key):
        incident = graph.edges_at(v)
        if not incident:
            continue
        head, rest = incident[0], incident[1:]
        rotation_choices[v] = tuple(
            (head,) + tail for tail in permutations(rest)
        )

    per_edge: dict[str, list[str]] = {e: [] for e in graph.edges}
    for ea, eb in pairs:
        xid = f"{ea}x{eb}"
        per_edge[ea].append(xid)
        per_edge[eb].append(xid)
    order_choices = {
        e: tuple(permutations(xids))
        for e, xids in per_edge.items()
        if xids
    }

    space = SearchSpace(
        graph=graph,
        pairs=pairs,
        rotation_choices=rotation_choices,
        order_choices=order_choices,
        mode=mode,
    )
    if len(pairs) > budget:
        raise BudgetExceeded(
            f"{len(pairs)} independent pairs exceed the budget of {budget}; "
            f"the full space holds {space.size} structures",
            estimate=space.size,
        )
    return space


def _segments_of(graph: AbstractGraph, orders: dict[str, tuple[str, ...]]):
    """Planarized map: (node, node, edge, piece index) per segment."""
    segments = []
    for eid in sorted(graph.edges, key=natural_key):
        v1, v2 = graph.edges[eid]
        stops = [v1, *orders.get(eid, ()), v2]
        for i, (a, b) in enumerate(zip(stops, stops[1:])):
            segments.append((a, b, eid, i))
    return segments


def _free_segment_slots(graph, orders) -> list[tuple[str, int]]:
    """Segments outside a BFS spanning forest of the planarized map, in
    deterministic order; signs are enumerated over exactly these."""
    segments = _segments_of(graph, orders)
    adjacency: dict[str, list[tuple[str, str, int]]] = {}
    for a, b, eid, i in segments:
        adjacency.setdefault(a, []).append((b, eid, i))
        adjacency.setdefault(b, []).append((a, eid, i))
    in_tree: set[tuple[str, int]] = set()
    seen: set[str] = set()
    for root in sorted(adjacency, key=natural_key):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, eid, i in sorted(adjacency[x], key=lambda r: (natural_key(r[0]), natural_key(r[1]), r[2])):
                if y not in seen:
                    seen.add(y)
                    in_tree.add((eid, i))
                    queue.append(y)
    return [(eid, i) for _, _, eid, i in segments if (eid, i) not in in_tree]


def enumerate_structures(
    graph: AbstractGraph, mode: str = "orientable", budget: int = DEFAULT_BUDGET
) -> Iterator[Drawing]:
    """Every thrackle structure of ``graph`` exactly once, deterministically."""
    space = build_space(graph, mode, budget)
    yield from _enumerate(space)


def _enumerate(space: SearchSpace) -> Iterator[Drawing]:
    graph = space.graph
    vertices = sorted(space.rotation_choices, key=natural_key)
    ordered_edges = sorted(space.order_choices, key=natural_key)
    crossing_template = {
        f"{ea}x{eb}": (ea, eb) for ea, eb in space.pairs
    }
    xids = sorted(crossing_template, key=natural_key)

    for rot_pick in product(*(space.rotation_choices[v] for v in vertices)):
        rotations = dict(zip(vertices, rot_pick))
        for order_pick in product(*(space.order_choices[e] for e in ordered_edges)):
            orders = dict(zip(ordered_edges, order_pick))
            sign_slots = (
                _free_segment_slots(graph, orders) if space.mode == "all" else []
            )
            for bits in product((0, 1), repeat=len(xids)):
                crossings = {
                    xid: Crossing(*crossing_template[xid], bit)
                    for xid, bit in zip(xids, bits)
                }
                for signs in product((False, True), repeat=len(sign_slots)):
                    negative: dict[str, set[int]] = {}
                    for (eid, i), neg in zip(sign_slots, signs):
                        if neg:
                            negative.setdefault(eid, set()).add(i)
                    yield Drawing(
                        graph=graph,
                        rotations=rotations,
                        crossings=crossings,
                        orders=orders,
                        negative={e: frozenset(s) for e, s in negative.items()},
                    )


@dataclass(frozen=True)
class SearchResult:
    """Per-orientability-class minima over the enumerated space."""

    orientable_min: int | None
    orientable_witness: Drawing | None
    nonorientable_min: int | None
    nonorientable_witness: Drawing | None
    structures: int
    exhausted: bool

    def best(self) -> tuple[SurfaceClass, Drawing]:
        """The overall best (surface, witness), preferring lower euler genus
        and orientable on ties."""
        candidates = []
        if self.orientable_min is not None:
            candidates.append(
                (self.orientable_min, 0, self.orientable_witness, True)
            )
        if self.nonorientable_min is not None:
            candidates.append(
                (self.nonorientable_min, 1, self.nonorientable_witness, False)
            )
        if not candidates:
            raise DomainError("search found no structures")
        eps, _, witness, orientable = min(candidates, key=lambda c: (c[0], c[1]))
        return SurfaceClass.from_euler(orientable, eps), witness


def min_euler_genus(
    graph: AbstractGraph, mode: str = "orientable", budget: int = DEFAULT_BUDGET
) -> SearchResult:
    """Scan the whole space and report minimal euler genus per class.

    Ties on genus are broken toward the lexicographically least serialized
    witness, making the result independent of enumeration chunking.
    """
    space = build_space(graph, mode, budget)
    best: dict[bool, tuple[int, str, Drawing]] = {}
    count = 0
    for drawing in _enumerate(space):
        count += 1
        surface = drawing.surface()
        key = surface.orientable
        eps = surface.euler_genus
        if key in best and best[key][0] < eps:
            continue
        text = serialize_drawing(drawing)
        if key not in best or (eps, text) < (best[key][0], best[key][1]):
            best[key] = (eps, text, drawing)
    o = best.get(True)
    n = best.get(False)
    return SearchResult(
        orientable_min=o[0] if o else None,
        orientable_witness=o[2] if o else None,
        nonorientable_min=n[0] if n else None,
        nonorientable_witness=n[2] if n else None,
        structures=count,
        exhausted=True,
    )
