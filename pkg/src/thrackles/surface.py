"""Embedding schemes and their surfaces.

An embedding scheme is a rotation system with edge signatures on the
planarized map: for every node a clockwise cyclic order of incident
segment-ends, and for every segment a sign in {+1, -1}. A connected scheme
determines a unique cellular embedding on a closed surface; this module
computes its faces, Euler genus, orientability, and evenness, and decides
containment between surfaces.

Face tracing works on *blades* (segment, end, side): the darts of the
orientation double cover. Every geometric face is traced by exactly two
blade orbits (its two lifts), so the face count is half the orbit count and
the two lifts are matched through the rotation gaps they consume.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import DomainError, StructureError

NodeId = str
SegmentId = str
SegEnd = tuple[SegmentId, int]

_NATURAL_RE = re.compile(r"(\d+)")


def natural_key(s: str) -> tuple:
    """Sort key that orders embedded integers numerically ('x2' < 'x10')."""
    return tuple(int(tok) if tok.isdigit() else tok for tok in _NATURAL_RE.split(s))


@dataclass(frozen=True)
class SurfaceClass:
    """A closed surface named by orientability and genus.

    Euler genus is 2*genus for orientable surfaces and genus for
    nonorientable ones; the sphere is the orientable surface of genus 0.
    """

    orientable: bool
    genus: int
    euler_genus: int

    def __post_init__(self):
        expected = 2 * self.genus if self.orientable else self.genus
        if self.euler_genus != expected:
            raise DomainError(
                f"euler genus {self.euler_genus} inconsistent with "
                f"{'orientable' if self.orientable else 'nonorientable'} genus {self.genus}"
            )
        if not self.orientable and self.genus < 1:
            raise DomainError("nonorientable surfaces have genus >= 1")
        if self.genus < 0:
            raise DomainError("genus must be nonnegative")

    @staticmethod
    def orientable_surface(g: int) -> "SurfaceClass":
        return SurfaceClass(True, g, 2 * g)

    @staticmethod
    def nonorientable_surface(g: int) -> "SurfaceClass":
        return SurfaceClass(False, g, g)

    @staticmethod
    def sphere() -> "SurfaceClass":
        return SurfaceClass(True, 0, 0)

    @staticmethod
    def from_euler(orientable: bool, euler_genus: int) -> "SurfaceClass":
        if orientable:
            if euler_genus % 2:
                raise DomainError(f"orientable surfaces have even euler genus, got {euler_genus}")
            return SurfaceClass(True, euler_genus // 2, euler_genus)
        return SurfaceClass(False, euler_genus, euler_genus)

    @property
    def label(self) -> str:
        """Conventional name: S_g for orientable, N_g for nonorientable."""
        return f"S_{self.genus}" if self.orientable else f"N_{self.genus}"


@dataclass(frozen=True)
class EmbeddingScheme:
    """Planarized map with clockwise rotations and segment signs.

    ``segments`` maps each segment id to its ordered endpoint pair
    (end 0, end 1); endpoints must be distinct. ``rotation`` gives, per
    node, the clockwise cyclic order of incident segment-ends; every
    segment-end must appear in exactly one rotation, exactly once.
    ``sign`` maps segment ids to +1 or -1.
    """

    segments: Mapping[SegmentId, tuple[NodeId, NodeId]]
    rotation: Mapping[NodeId, tuple[SegEnd, ...]]
    sign: Mapping[SegmentId, int]

    def __post_init__(self):
        seen: dict[SegEnd, NodeId] = {}
        for node, rot in self.rotation.items():
            if not rot:
                raise StructureError(f"node {node!r} has no incident segment-ends")
            for se in rot:
                if se in seen:
                    raise StructureError(
                        f"segment-end {se} appears at both node {seen[se]!r} and node {node!r}"
                    )
                seen[se] = node
        for sid, (a, b) in self.segments.items():
            if a == b:
                raise StructureError(f"segment {sid!r} is a loop at node {a!r}")
            for end, node in ((0, a), (1, b)):
                at = seen.pop((sid, end), None)
                if at is None:
                    raise StructureError(f"segment {sid!r} end {end} missing from every rotation")
                if at != node:
                    raise StructureError(
                        f"segment {sid!r} end {end} listed at node {at!r}, expected {node!r}"
                    )
            if self.sign.get(sid) not in (1, -1):
                raise StructureError(f"segment {sid!r} needs a sign of +1 or -1")
        if seen:
            se, node = next(iter(seen.items()))
            raise StructureError(f"rotation at node {node!r} names unknown segment-end {se}")
        if set(self.sign) != set(self.segments):
            extra = set(self.sign) - set(self.segments)
            raise StructureError(f"signs given for unknown segments {sorted(extra)}")

    @property
    def nodes(self) -> tuple[NodeId, ...]:
        return tuple(sorted(self.rotation, key=natural_key))

    def degree(self, node: NodeId) -> int:
        return len(self.rotation[node])

    def other_end(self, sid: SegmentId, node: NodeId) -> NodeId:
        a, b = self.segments[sid]
        if node == a:
            return b
        if node == b:
            return a
        raise StructureError(f"node {node!r} is not an endpoint of segment {sid!r}")

    def node_components(self) -> list[frozenset[NodeId]]:
        """Connected components of the underlying node/segment multigraph."""
        adjacency: dict[NodeId, set[NodeId]] = {n: set() for n in self.rotation}
        for a, b in self.segments.values():
            adjacency[a].add(b)
            adjacency[b].add(a)
        seen: set[NodeId] = set()
        out = []
        for start in self.nodes:
            if start in seen:
                continue
            comp = {start}
            frontier = [start]
            while frontier:
                n = frontier.pop()
                for m in adjacency[n]:
                    if m not in comp:
                        comp.add(m)
                        frontier.append(m)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.rotation) > 0 and len(self.node_components()) == 1

    def restricted_to_nodes(self, nodes: frozenset[NodeId]) -> "EmbeddingScheme":
        segs = {
            sid: ends for sid, ends in self.segments.items() if ends[0] in nodes
        }
        return EmbeddingScheme(
            segments=segs,
            rotation={n: self.rotation[n] for n in nodes},
            sign={sid: self.sign[sid] for sid in segs},
        )


@dataclass(frozen=True)
class FaceSet:
    """Facial walks of a scheme.

    Each face is a closed walk given as the sequence of segment-ends it
    departs from; its length is the number of segment traversals. Every
    segment is traversed exactly twice in total across all faces.
    """

    faces: tuple[tuple[SegEnd, ...], ...]
    lengths: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.faces)


def trace_faces(scheme: EmbeddingScheme) -> FaceSet:
    """Trace all facial walks of ``scheme``.

    Deterministic: blades are visited in ascending (segment, end, side)
    order and each face is reported starting from its least blade.
    """
    seg_ids = sorted(scheme.segments, key=natural_key)
    seg_index = {sid: i for i, sid in enumerate(seg_ids)}
    nseg = len(seg_ids)
    endpoint: list[tuple[NodeId, NodeId]] = [scheme.segments[sid] for sid in seg_ids]
    signs = [scheme.sign[sid] for sid in seg_ids]

    # position of each dart (segment-end) within its node's rotation
    rot_at: dict[NodeId, list[tuple[int, int]]] = {}
    pos: dict[tuple[int, int], tuple[NodeId, int]] = {}
    for node in scheme.nodes:
        darts = [(seg_index[sid], end) for sid, end in scheme.rotation[node]]
        rot_at[node] = darts
        for i, dart in enumerate(darts):
            pos[dart] = (node, i)

    # blade encoding: (seg, end, side) -> seg*4 + end*2 + (0 if side>0 else 1)
    def step(blade: int) -> tuple[int, tuple[NodeId, int]]:
        s, rem = divmod(blade, 4)
        e, neg = divmod(rem, 2)
        side = -1 if neg else 1
        arrive_end = 1 - e
        node = endpoint[s][arrive_end]
        tau = side * signs[s]
        darts = rot_at[node]
        d = len(darts)
        i = pos[(s, arrive_end)][1]
        if tau > 0:
            j = (i + 1) % d
            gap = i
        else:
            j = (i - 1) % d
            gap = (i - 1) % d
        s2, e2 = darts[j]
        nxt = s2 * 4 + e2 * 2 + (0 if tau > 0 else 1)
        return nxt, (node, gap)

    visited = [False] * (4 * nseg)
    orbits: list[list[int]] = []
    orbit_gaps: list[list[tuple[NodeId, int]]] = []
    for start in range(4 * nseg):
        if visited[start]:
            continue
        orbit = []
        gaps = []
        b = start
        while not visited[b]:
            visited[b] = True
            orbit.append(b)
            b, gap = step(b)
            gaps.append(gap)
        if b != start:
            raise StructureError("face tracing left its orbit; scheme is malformed")
        orbits.append(orbit)
        orbit_gaps.append(gaps)

    # Match the two lifts of each face through the rotation gaps they use:
    # every gap is consumed exactly twice, once per lift.
    gap_users: dict[tuple[NodeId, int], list[int]] = {}
    for oi, gaps in enumerate(orbit_gaps):
        for gap in gaps:
            gap_users.setdefault(gap, []).append(oi)
    partner = [-1] * len(orbits)
    for gap, users in gap_users.items():
        if len(users) != 2 or users[0] == users[1]:
            raise StructureError(f"rotation gap {gap} consumed {len(users)} times; scheme is malformed")
        a, b = users
        for x, y in ((a, b), (b, a)):
            if partner[x] not in (-1, y):
                raise StructureError("face lift matching is inconsistent; scheme is malformed")
            partner[x] = y

    faces = []
    lengths = []
    reported = set()
    for oi, orbit in enumerate(orbits):
        if oi in reported:
            continue
        reported.add(oi)
        reported.add(partner[oi])
        walk = tuple((seg_ids[b // 4], (b % 4) // 2) for b in orbit)
        faces.append(walk)
        lengths.append(len(orbit))

    total = sum(lengths)
    if total != 2 * nseg:
        raise StructureError(f"face lengths sum to {total}, expected {2 * nseg}")
    per_seg: dict[str, int] = {}
    for walk in faces:
        for sid, _ in walk:
            per_seg[sid] = per_seg.get(sid, 0) + 1
    if any(c != 2 for c in per_seg.values()):
        raise StructureError("some segment is not traversed exactly twice")
    return FaceSet(faces=tuple(faces), lengths=tuple(lengths))


def is_orientable(scheme: EmbeddingScheme) -> bool:
    """Whether the signature is normalizable to all-positive.

    True iff nodes admit a +-1 labelling with every segment's sign equal to
    the product of its endpoint labels, i.e. no closed walk has odd total
    sign. Checked by spanning-tree propagation per component.
    """
    label: dict[NodeId, int] = {}
    adjacency: dict[NodeId, list[tuple[NodeId, int]]] = {n: [] for n in scheme.rotation}
    for sid, (a, b) in scheme.segments.items():
        adjacency[a].append((b, scheme.sign[sid]))
        adjacency[b].append((a, scheme.sign[sid]))
    for start in scheme.nodes:
        if start in label:
            continue
        label[start] = 1
        frontier = [start]
        while frontier:
            n = frontier.pop()
            for m, sgn in adjacency[n]:
                want = label[n] * sgn
                if m not in label:
                    label[m] = want
                    frontier.append(m)
                elif label[m] != want:
                    return False
    return True


def euler_genus(scheme: EmbeddingScheme) -> SurfaceClass:
    """Surface of the cellular embedding: euler genus 2 - V + E - F.

    Rejects disconnected schemes; split into components first (Euler's
    formula is per component) or use :func:`euler_genus_components`.
    """
    if not scheme.rotation:
        raise DomainError("empty scheme has no surface")
    if not scheme.is_connected():
        raise DomainError(
            "scheme is disconnected; compute per-component genus and combine"
        )
    v = len(scheme.rotation)
    e = len(scheme.segments)
    f = len(trace_faces(scheme))
    eps = 2 - v + e - f
    orientable = is_orientable(scheme)
    if eps < 0:
        raise StructureError(f"negative euler genus {eps}; scheme is malformed")
    if orientable and eps % 2:
        raise StructureError(f"orientable scheme with odd euler genus {eps}")
    return SurfaceClass.from_euler(orientable, eps)


def euler_genus_components(scheme: EmbeddingScheme) -> tuple[SurfaceClass, ...]:
    """Per-component surfaces, ordered by each component's least node."""
    comps = sorted(scheme.node_components(), key=lambda c: natural_key(min(c, key=natural_key)))
    return tuple(euler_genus(scheme.restricted_to_nodes(c)) for c in comps)


def euler_genus_sum(scheme: EmbeddingScheme) -> SurfaceClass:
    """Connected-sum surface of all components (euler genera add)."""
    parts = euler_genus_components(scheme)
    eps = sum(p.euler_genus for p in parts)
    orientable = all(p.orientable for p in parts)
    return SurfaceClass.from_euler(orientable, eps)


def is_even_embedding(scheme: EmbeddingScheme) -> bool:
    """Whether every facial walk has even length."""
    return all(length % 2 == 0 for length in trace_faces(scheme).lengths)


def embeds_in(scheme: EmbeddingScheme, target: SurfaceClass) -> bool:
    """Whether the scheme's drawing fits on ``target``.

    The scheme's own surface is cellular and minimal for its data; adding
    handles, or a crosscap to an orientable drawing, hosts it on any larger
    surface of the right kind. A nonorientable scheme never embeds in an
    orientable surface.
    """
    own = euler_genus(scheme)
    if own.orientable:
        if target.orientable:
            return target.euler_genus >= own.euler_genus
        return target.euler_genus >= own.euler_genus + 1
    if target.orientable:
        return False
    return target.euler_genus >= own.euler_genus
