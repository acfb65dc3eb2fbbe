"""Surgeries that grow a thrackle drawing while tracking the surface.

Star cloning adds a twin of an anchor vertex: the new vertex ``v`` copies
part of the anchor's star, and each new edge is routed as a *sweep* around
the anchor followed by a *shadow* run alongside the copied edge.  The three
flavors trade edge count against the surface change:

* :func:`clone_star_nonorientable` copies ``t`` neighbors plus one shadow
  edge, adds ``t`` crosscaps, and always lands on a nonorientable surface.
* :func:`clone_star_orientable` copies ``2t`` neighbors plus one shadow
  edge, adds ``t`` handles, and preserves orientability.
* :func:`clone_star_full` copies the whole star (an unrestricted twin).

:func:`clone_star_full_edge` additionally joins the twin to the anchor,
and :func:`cn_handle` doubles an edge's endpoints across a fresh handle.

Every operation demands a verified thrackle as input and re-verifies its
output, checking the exact vertex, edge, and euler-genus deltas.  A failed
postcondition raises :class:`~thrackles.errors.InternalInvariantError`;
bad anchors or degrees raise :class:`~thrackles.errors.DomainError`.
"""

from __future__ import annotations

from .drawing import Crossing, Drawing, verify_thrackle
from .errors import DomainError, InternalInvariantError
from .graphs import AbstractGraph, EdgeId, VertexId
from .surface import SurfaceClass, natural_key

__all__ = [
    "clone_star_full",
    "clone_star_full_edge",
    "clone_star_nonorientable",
    "clone_star_orientable",
    "cn_handle",
]

# Orientation conventions fixed by the euler-genus postconditions (see
# tests): flipping any of these produces drawings on the wrong surface.
_SHADOW_BIT_RHO = False
_CLONE_V_REVERSED = {"orientable": False, "nonorientable": False}
_ARRIVAL_AFTER = True
_UV_LEFT = True
_UV_V_ANCHOR_LAST = True
_UV_V_AFTER = False
_FAN_CW = True
_FAN_BIT_FLIP = False


class _Builder:
    """Mutable copy of a drawing that supports crossing insertion.

    Negative piece indices are reindexed on every insertion so that signs
    stay attached to the same geometric piece of the edge.
    """

    def __init__(self, drawing: Drawing):
        graph = drawing.graph
        self.vertices: set[VertexId] = set(graph.vertices)
        self.edges: dict[EdgeId, tuple[VertexId, VertexId]] = dict(graph.edges)
        self.rotations: dict[VertexId, list[EdgeId]] = {
            v: list(rot) for v, rot in drawing.rotations.items()
        }
        self.crossings: dict[str, Crossing] = dict(drawing.crossings)
        self.orders: dict[EdgeId, list[str]] = {
            e: list(drawing.order_of(e)) for e in graph.edges
        }
        self.negative: dict[EdgeId, set[int]] = {
            e: set(drawing.negatives_of(e)) for e in graph.edges
        }
        self._flank: dict[tuple[EdgeId, str, bool], int] = {}

    def fresh_vertex(self, stem: str) -> VertexId:
        if stem not in self.vertices:
            return stem
        n = 2
        while f"{stem}{n}" in self.vertices:
            n += 1
        return f"{stem}{n}"

    def fresh_edge(self, stem: str) -> EdgeId:
        if stem not in self.edges:
            return stem
        n = 2
        while f"{stem}{n}" in self.edges:
            n += 1
        return f"{stem}{n}"

    def add_edge(self, eid: EdgeId, a: VertexId, b: VertexId) -> None:
        self.edges[eid] = (a, b)
        self.orders[eid] = []
        self.negative[eid] = set()
        self.vertices.add(a)
        self.vertices.add(b)

    def cross(self, over: EdgeId, strand: EdgeId, bit: int) -> str:
        xid = f"{over}x{strand}"
        if xid in self.crossings:
            raise InternalInvariantError(f"crossing id collision: {xid!r}")
        self.crossings[xid] = Crossing(edge_a=over, edge_b=strand, bit=bit)
        return xid

    def insert_block(
        self, eid: EdgeId, pos: int, xids: list[str], keep_low: bool
    ) -> None:
        """Splice ``xids`` into ``eid``'s order at ``pos``.

        A sign on the split piece stays at ``pos`` when ``keep_low`` is
        true and moves past the block otherwise; later signs always shift.
        """
        self.orders[eid][pos:pos] = xids
        width = len(xids)
        self.negative[eid] = {
            g if g < pos or (g == pos and keep_low) else g + width
            for g in self.negative[eid]
        }

    def end_insert(self, eid: EdgeId, near: VertexId, nearest_first: list[str]) -> None:
        """Insert a block at the ``near`` end, ordered nearest crossing first.

        The block lands between ``near`` and everything already on the
        edge, so an existing sign on the end piece keeps its crossers.
        """
        if not nearest_first:
            return
        if self.edges[eid][0] == near:
            self.insert_block(eid, 0, nearest_first, keep_low=False)
        else:
            block = list(reversed(nearest_first))
            self.insert_block(eid, len(self.orders[eid]), block, keep_low=True)

    def flank_insert(self, eid: EdgeId, anchor_xid: str, before: bool, xid: str) -> None:
        """Place ``xid`` adjacent to ``anchor_xid`` on ``eid``.

        Repeated inserts on the same flank stack outward, so earlier calls
        stay closest to the anchor crossing.
        """
        ix = self.orders[eid].index(anchor_xid)
        key = (eid, anchor_xid, before)
        depth = self._flank.get(key, 0)
        pos = (ix - depth) if before else (ix + 1 + depth)
        self.insert_block(eid, pos, [xid], keep_low=before)
        self._flank[key] = depth + 1

    def finish(self) -> Drawing:
        graph = AbstractGraph(vertices=frozenset(self.vertices), edges=dict(self.edges))
        return Drawing(
            graph=graph,
            rotations={v: tuple(r) for v, r in self.rotations.items() if r},
            crossings=dict(self.crossings),
            orders={e: tuple(o) for e, o in self.orders.items() if o},
            negative={e: frozenset(s) for e, s in self.negative.items() if s},
        )


def _require_thrackle(drawing: Drawing, what: str) -> SurfaceClass:
    report = verify_thrackle(drawing)
    if not report.is_thrackle:
        raise DomainError(f"{what} requires a thrackle drawing as input")
    return report.surface


def _star_edges(drawing: Drawing, anchor: VertexId) -> list[EdgeId]:
    """Anchor's clockwise rotation, rotated to start at the least edge id."""
    if anchor not in drawing.graph.vertices:
        raise DomainError(f"unknown anchor vertex {anchor!r}")
    rot = drawing.rotations.get(anchor)
    if not rot:
        raise DomainError(f"anchor vertex {anchor!r} has no incident edges")
    start = min(range(len(rot)), key=lambda i: natural_key(rot[i]))
    return list(rot[start:]) + list(rot[:start])


def _check(
    old: Drawing,
    new: Drawing,
    dv: int,
    de: int,
    deps: int,
    orientable: bool,
    what: str,
) -> Drawing:
    if len(new.graph.vertices) != len(old.graph.vertices) + dv:
        raise InternalInvariantError(f"{what}: vertex count off (expected +{dv})")
    if len(new.graph.edges) != len(old.graph.edges) + de:
        raise InternalInvariantError(f"{what}: edge count off (expected +{de})")
    report = verify_thrackle(new)
    if not report.is_thrackle:
        raise InternalInvariantError(
            f"{what} broke the thrackle property: {report.violations[:3]}"
        )
    want = old.surface().euler_genus + deps
    got = report.surface
    if got.euler_genus != want or got.orientable != orientable:
        raise InternalInvariantError(
            f"{what}: landed on {got.label}, expected euler genus {want} "
            f"({'orientable' if orientable else 'nonorientable'})"
        )
    return new


def _shadow(
    bld: _Builder,
    shadowed: EdgeId,
    old_order: list[str],
    old_negative: set[int],
    from_v: VertexId,
    strand: EdgeId,
    left: bool,
) -> tuple[list[str], set[int]]:
    """Run ``strand`` alongside ``shadowed`` starting at ``from_v``.

    The strand crosses every old crosser of ``shadowed`` exactly once,
    immediately next to the shadowed crossing.  Which flank it lands on
    follows the crossing's stored roles and sign, flipped once per sign
    change the strand has walked through.  Returns the new crossing ids in
    travel order plus the shadowed edge's sign positions, as piece indices
    counted from ``from_v``, for the caller to copy onto the strand.
    """
    u_first = bld.edges[shadowed][0] == from_v
    total = len(old_order)
    olds = list(old_order) if u_first else list(reversed(old_order))
    neg_from = {g if u_first else total - g for g in old_negative}
    out: list[str] = []
    rho = 0
    for h, old_xid in enumerate(olds):
        if h in neg_from:
            rho ^= 1
        old = bld.crossings[old_xid]
        crosser = old.other(shadowed)
        role = 1 if old.edge_a == shadowed else 0
        alpha = (role + (0 if u_first else 1) + old.bit) % 2
        before = (alpha if left else 1 - alpha) ^ rho
        bit = alpha ^ (rho if _SHADOW_BIT_RHO else 0)
        xid = bld.cross(crosser, strand, bit)
        bld.flank_insert(crosser, old_xid, before=bool(before), xid=xid)
        out.append(xid)
    return out, neg_from


def _sweep_bit(bld: _Builder, over: EdgeId, center: VertexId, clockwise: bool) -> int:
    near_first = bld.edges[over][0] == center
    bit = 0 if near_first else 1
    return bit if clockwise else 1 - bit


def _clone_core(
    drawing: Drawing,
    anchor: VertexId,
    idxs: list[int],
    rot_t: int,
    include_mid: bool,
    pair_swap: int,
    kind: str,
) -> tuple[_Builder, dict]:
    """Shared sweep-and-shadow worker for the star-cloning operations.

    ``idxs`` lists which star edges get copies (1-based; the last entry is
    the shadow-family edge).  ``rot_t`` and ``include_mid`` shape the new
    vertex's rotation; ``pair_swap`` transposes that many leading pairs of
    the anchor's rotation.
    """
    star = _star_edges(drawing, anchor)
    s = len(star)
    bld = _Builder(drawing)
    vname = bld.fresh_vertex("v")
    stem = "f"
    while any(f"{stem}{i}" in bld.edges for i in idxs):
        stem += "f"
    fname = {i: f"{stem}{i}" for i in idxs}
    old_orders = {e: list(bld.orders[e]) for e in star}
    old_negative = {e: set(bld.negative[e]) for e in star}

    for i in idxs:
        other = bld.edges[star[i - 1]]
        w = other[1] if other[0] == anchor else other[0]
        bld.add_edge(fname[i], vname, w)

    # Sweep: copy i of the star crosses every other star edge once, fanning
    # outward from the anchor; on each crossed edge the copies stack by how
    # far around the star they have traveled.
    sweep_seq: dict[int, list[str]] = {i: [] for i in idxs}
    for j, ej in enumerate(star, start=1):
        bit = _sweep_bit(bld, ej, anchor, clockwise=True)
        block = sorted(
            ((j - i - 1) % s, i) for i in idxs if i != j
        )
        xids = [bld.cross(ej, fname[i], bit) for _, i in block]
        bld.end_insert(ej, anchor, xids)
    for i in idxs:
        for d in range(1, s):
            j = (i - 1 + d) % s + 1
            if j != i:
                sweep_seq[i].append(f"{star[j - 1]}x{fname[i]}")

    # Shadow: copy i then runs alongside star edge i, crossing its old
    # crossers, and finally enters w_i next to the shadowed edge.
    for i in idxs:
        ei = star[i - 1]
        shadow_xids, neg_from = _shadow(
            bld, ei, old_orders[ei], old_negative[ei], anchor, fname[i], left=True
        )
        bld.orders[fname[i]] = sweep_seq[i] + shadow_xids
        offset = len(sweep_seq[i])
        bld.negative[fname[i]] |= {offset + h for h in neg_from}
        pair = bld.edges[ei]
        w = pair[1] if pair[0] == anchor else pair[0]
        rho_total = len(old_negative[ei]) % 2
        rot = bld.rotations[w]
        ix = rot.index(ei)
        after = (rho_total == 0) == _ARRIVAL_AFTER
        rot.insert(ix + 1 if after else ix, fname[i])

    if pair_swap:
        tail = star[2 * pair_swap :]
        swapped: list[EdgeId] = []
        for r in range(pair_swap):
            swapped += [star[2 * r + 1], star[2 * r]]
        bld.rotations[anchor] = swapped + tail

    mid = rot_t if include_mid and rot_t >= 1 else None
    evens = [fname[i] for i in range(2, rot_t, 2)]
    first_odd = rot_t - 1 if rot_t % 2 == 0 else rot_t - 2
    odds = [fname[i] for i in range(first_odd, 0, -2)]
    vrot = evens + ([fname[mid]] if mid else []) + odds
    if idxs[-1] != mid:
        vrot.append(fname[idxs[-1]])
    if _CLONE_V_REVERSED[kind]:
        vrot.reverse()
    bld.rotations[vname] = vrot

    meta = {"star": star, "s": s, "v": vname, "fname": fname}
    return bld, meta


def clone_star_nonorientable(drawing: Drawing, anchor: VertexId, t: int) -> Drawing:
    """Twin ``t`` neighbors of ``anchor`` across ``t`` fresh crosscaps.

    Adds one vertex and ``t + 1`` edges.  The anchor must have degree at
    least ``t + 1``.  The euler genus grows by exactly ``t`` and the result
    is nonorientable, whatever the input surface was.
    """
    if t < 1:
        raise DomainError(f"cloning needs t \\ge 1, got t = {t}")
    _require_thrackle(drawing, "nonorientable cloning")
    star = _star_edges(drawing, anchor)
    if len(star) < t + 1:
        raise DomainError(
            f"cloning t = {t} neighbors needs anchor degree k \\ge t+1 = {t + 1}, "
            f"got k = {len(star)}"
        )
    s = len(star)
    idxs = list(range(1, t + 1)) + [s]
    bld, meta = _clone_core(
        drawing, anchor, idxs, rot_t=t, include_mid=True, pair_swap=0,
        kind="nonorientable",
    )
    for j in range(1, t + 1):
        ej = meta["star"][j - 1]
        if bld.edges[ej][0] == anchor:
            bld.negative[ej].add(0)
        else:
            bld.negative[ej].add(len(bld.orders[ej]))
    for i in idxs[:-1]:
        if i % 2 == 1:
            bld.negative[meta["fname"][i]].add(0)
    return _check(
        drawing, bld.finish(), dv=1, de=t + 1, deps=t, orientable=False,
        what="nonorientable cloning",
    )


def clone_star_orientable(drawing: Drawing, anchor: VertexId, t: int) -> Drawing:
    """Twin ``2t`` neighbors of ``anchor`` across ``t`` fresh handles.

    Adds one vertex and ``2t + 1`` edges.  The anchor must have degree at
    least ``2t + 1``.  The euler genus grows by exactly ``2t`` and the
    orientability class of the input is preserved.
    """
    if t < 1:
        raise DomainError(f"cloning needs t \\ge 1, got t = {t}")
    _require_thrackle(drawing, "orientable cloning")
    star = _star_edges(drawing, anchor)
    if len(star) < 2 * t + 1:
        raise DomainError(
            f"cloning 2t = {2 * t} neighbors needs anchor degree "
            f"k \\ge 2t+1 = {2 * t + 1}, got k = {len(star)}"
        )
    s = len(star)
    idxs = list(range(1, 2 * t + 1)) + [s]
    bld, _ = _clone_core(
        drawing, anchor, idxs, rot_t=2 * t, include_mid=True, pair_swap=t,
        kind="orientable",
    )
    return _check(
        drawing, bld.finish(), dv=1, de=2 * t + 1, deps=2 * t,
        orientable=drawing.surface().orientable, what="orientable cloning",
    )


def _full_core(drawing: Drawing, anchor: VertexId) -> tuple[_Builder, dict, int]:
    star = _star_edges(drawing, anchor)
    s = len(star)
    if s == 1:
        idxs = [1]
        bld, meta = _clone_core(
            drawing, anchor, idxs, rot_t=0, include_mid=False, pair_swap=0,
            kind="orientable",
        )
        return bld, meta, 0
    if s % 2 == 1:
        t = (s - 1) // 2
        idxs = list(range(1, 2 * t + 1)) + [s]
        bld, meta = _clone_core(
            drawing, anchor, idxs, rot_t=2 * t, include_mid=True, pair_swap=t,
            kind="orientable",
        )
        return bld, meta, 2 * t
    t = s // 2
    idxs = list(range(1, 2 * t))  # f_{2t} takes the shadow-family role
    idxs.append(s)
    bld, meta = _clone_core(
        drawing, anchor, idxs, rot_t=2 * t, include_mid=False, pair_swap=t,
        kind="orientable",
    )
    return bld, meta, 2 * t


def clone_star_full(drawing: Drawing, anchor: VertexId) -> Drawing:
    """Twin the anchor's whole star: the new vertex copies every neighbor.

    Adds one vertex and ``deg(anchor)`` edges; the euler genus grows by
    ``2 * ceil((deg(anchor) - 1) / 2)`` and orientability is preserved.
    """
    _require_thrackle(drawing, "full cloning")
    bld, meta, deps = _full_core(drawing, anchor)
    return _check(
        drawing, bld.finish(), dv=1, de=meta["s"], deps=deps,
        orientable=drawing.surface().orientable, what="full cloning",
    )


def clone_star_full_edge(drawing: Drawing, anchor: VertexId) -> Drawing:
    """Twin the anchor's whole star and join the twin to the anchor.

    Like :func:`clone_star_full` plus an edge between the anchor and its
    twin, routed alongside the anchor's least edge and fanned across the
    far endpoint's other edges.  Adds one vertex and ``deg(anchor) + 1``
    edges; the euler genus grows by ``2 * ceil((deg(anchor) - 1) / 2) + 4``
    and orientability is preserved.
    """
    _require_thrackle(drawing, "full cloning with twin edge")
    old_rotations = {v: list(r) for v, r in drawing.rotations.items()}
    bld, meta, deps = _full_core(drawing, anchor)
    star, vname, fname = meta["star"], meta["v"], meta["fname"]
    e1 = star[0]
    pair = bld.edges[e1]
    w1 = pair[1] if pair[0] == anchor else pair[0]
    uv = bld.fresh_edge("uv")
    bld.add_edge(uv, anchor, vname)

    old_e1_order = [x for x in drawing.order_of(e1)]
    shadow_xids, neg_from = _shadow(
        bld, e1, old_e1_order, set(drawing.negatives_of(e1)), anchor, uv,
        left=_UV_LEFT,
    )
    bld.negative[uv] |= set(neg_from)

    # Fan: after shadowing e_1 the twin edge crosses every other old edge
    # at w_1 right next to w_1, sweeping once around it.
    rot_w1 = old_rotations[w1]
    at = rot_w1.index(e1)
    targets = rot_w1[at + 1 :] + rot_w1[:at]
    if not _FAN_CW:
        targets = list(reversed(targets))
    fan_xids = []
    for k in targets:
        bit = _sweep_bit(bld, k, w1, clockwise=_FAN_CW) ^ (1 if _FAN_BIT_FLIP else 0)
        xid = bld.cross(k, uv, bit)
        bld.end_insert(k, w1, [xid])
        fan_xids.append(xid)
    bld.orders[uv] = shadow_xids + fan_xids

    rot_u = bld.rotations[anchor]
    ix = rot_u.index(e1)
    rot_u.insert(ix if _UV_LEFT else ix + 1, uv)
    rot_v = bld.rotations[vname]
    anchor_edge = fname[meta["s"] if _UV_V_ANCHOR_LAST else 1]
    iv = rot_v.index(anchor_edge)
    rot_v.insert(iv + 1 if _UV_V_AFTER else iv, uv)

    return _check(
        drawing, bld.finish(), dv=1, de=meta["s"] + 1, deps=deps + 4,
        orientable=drawing.surface().orientable, what="full cloning with twin edge",
    )


def cn_handle(drawing: Drawing, edge: EdgeId) -> Drawing:
    """Double the endpoints of ``edge`` across a fresh handle.

    New vertices ``p`` and ``q`` sit beside the edge ``st``: ``p`` joins
    both endpoints and ``q``, ``q`` joins the far endpoint.  The four new
    edges run in the two corridors flanking ``st``, arc across the two
    endpoint fans, and ``ps`` and ``qt`` return through a fresh handle,
    crossing once inside it, so that every independent pair crosses
    exactly once.  Adds two vertices and four edges; the euler genus grows
    by exactly 2 and orientability is preserved.
    """
    _require_thrackle(drawing, "handle doubling")
    if edge not in drawing.graph.edges:
        raise DomainError(f"unknown edge {edge!r}")
    sv, tv = drawing.graph.edges[edge]
    bld = _Builder(drawing)
    p = bld.fresh_vertex("p")
    q = bld.fresh_vertex("q")
    name = {
        "pq": bld.fresh_edge("pq"),
        "pt": bld.fresh_edge("pt"),
        "ps": bld.fresh_edge("ps"),
        "qt": bld.fresh_edge("qt"),
    }
    bld.add_edge(name["pq"], p, q)
    bld.add_edge(name["pt"], p, tv)
    bld.add_edge(name["ps"], p, sv)
    bld.add_edge(name["qt"], q, tv)

    rot_s = bld.rotations[sv]
    ix = rot_s.index(edge)
    gs = rot_s[ix + 1 :] + rot_s[:ix]
    rot_t = bld.rotations[tv]
    ix = rot_t.index(edge)
    hs = rot_t[ix + 1 :] + rot_t[:ix]
    st_order = list(bld.orders[edge])
    st_neg = set(bld.negative[edge])
    total = len(st_order)
    mirror = len(st_neg) % 2 == 1

    # Arcs over the s fan: pt, pq and qt all sweep g_1..g_a the same way at
    # nested radii, pq innermost and qt outermost; qt joins them straight
    # out of the handle.
    for g in gs:
        s_first = 0 if bld.edges[g][0] == sv else 1
        bld.end_insert(
            g, sv, [bld.cross(g, name[k], s_first) for k in ("pq", "pt", "qt")]
        )
    arcs = {k: [f"{g}x{name[k]}" for g in gs] for k in ("pt", "pq", "qt")}

    # Sweeps under the t fan: pq and ps cross h_b..h_1 side by side, pq
    # closer to t, mirrored when ``st`` reverses orientation along the way.
    for h in hs:
        t_first = 0 if bld.edges[h][0] == tv else 1
        bit_under = (1 - t_first) ^ mirror
        bld.end_insert(
            h, tv, [bld.cross(h, name[k], bit_under) for k in ("pq", "ps")]
        )
    under_seq = hs if mirror else list(reversed(hs))
    under_ps = [f"{h}x{name['ps']}" for h in under_seq]
    under_pq = [f"{h}x{name['pq']}" for h in under_seq]

    # Corridor crossings: each crosser of st meets ps alone on one flank of
    # its old crossing and pq, pt, qt stacked on the other, all heading the
    # same way.  The flank swaps with the signs walked so far; the bits
    # follow the crosser's local orientation only, a half twist never
    # flips up and down.
    rho = 0
    for j, old_xid in enumerate(st_order):
        if j in st_neg:
            rho ^= 1
        old = bld.crossings[old_xid]
        w = old.other(edge)
        flip = old.bit ^ (0 if old.edge_a == w else 1)
        rightward = flip == 0
        left_before = rightward ^ (rho == 1)
        bit_down = 0 if rightward else 1
        xid = bld.cross(w, name["ps"], bit_down)
        bld.flank_insert(w, old_xid, before=left_before, xid=xid)
        for strand in ("pq", "pt", "qt"):
            xid = bld.cross(w, name[strand], bit_down)
            bld.flank_insert(w, old_xid, before=not left_before, xid=xid)
    down = {
        k: [f"{bld.crossings[x].other(edge)}x{name[k]}" for x in st_order]
        for k in ("ps", "pq", "pt", "qt")
    }

    # ps and qt meet once inside the handle; pq cuts across st right at the
    # t end on its way from the corridor to the sweep under the fan.
    x_psqt = bld.cross(name["ps"], name["qt"], 0)
    x_stpq = bld.cross(edge, name["pq"], 1 if mirror else 0)
    bld.end_insert(edge, tv, [x_stpq])

    bld.orders[name["pt"]] = arcs["pt"] + down["pt"]
    bld.orders[name["pq"]] = arcs["pq"] + down["pq"] + [x_stpq] + under_pq
    bld.orders[name["ps"]] = [x_psqt] + down["ps"] + under_ps
    bld.orders[name["qt"]] = [x_psqt] + arcs["qt"] + down["qt"]
    a = len(gs)
    bld.negative[name["pt"]] |= {a + j for j in st_neg}
    bld.negative[name["pq"]] |= {a + j for j in st_neg}
    bld.negative[name["ps"]] |= {1 + j for j in st_neg}
    bld.negative[name["qt"]] |= {1 + a + j for j in st_neg}

    rot_s.insert(rot_s.index(edge) + 1, name["ps"])
    pos = rot_t.index(edge) + (0 if mirror else 1)
    pair_t = [name["pt"], name["qt"]]
    if mirror:
        pair_t.reverse()
    rot_t[pos:pos] = pair_t
    bld.rotations[p] = [name["ps"], name["pt"], name["pq"]]
    bld.rotations[q] = [name["pq"], name["qt"]]

    return _check(
        drawing, bld.finish(), dv=2, de=4, deps=2,
        orientable=drawing.surface().orientable, what="handle doubling",
    )
