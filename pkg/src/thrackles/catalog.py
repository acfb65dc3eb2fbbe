"""Verified generator catalog of base thrackle drawings.

Every generator returns a Drawing that has already been checked: the
thrackle verifier must pass and the surface must match the advertised one,
otherwise an :class:`InternalInvariantError` escapes (a bug in the
construction, never in the caller's input).

The plane constructions (odd cycles as star polygons, wheels with one
crosscap) are produced from exact rational pictures; the torus double-fan
family and the three fixed drawings load from data files shipped with the
package and are re-verified on load.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable

from . import _geometry as geo
from .drawing import Crossing, Drawing, verify_thrackle
from .errors import DomainError, InternalInvariantError
from .fileformat import parse_drawing
from .graphs import AbstractGraph, cycle, double_fan, independent_pairs, wheel
from .surface import SurfaceClass, natural_key


@dataclass(frozen=True)
class CatalogEntry:
    """A named, parameterized, verified drawing.

    Construction re-checks the two catalog invariants: the drawing is a
    thrackle and it fits on the claimed surface.
    """

    family: str
    parameters: dict
    drawing: Drawing
    claimed_surface: SurfaceClass
    citation: str

    def __post_init__(self):
        report = verify_thrackle(self.drawing)
        if not report.is_thrackle:
            raise InternalInvariantError(
                f"catalog entry {self.family} {self.parameters} is not a thrackle: "
                f"{report.violations[:3]}"
            )
        own = report.surface
        if own.orientable:
            fits = (
                self.claimed_surface.euler_genus >= own.euler_genus
                if self.claimed_surface.orientable
                else self.claimed_surface.euler_genus >= own.euler_genus + 1
            )
        else:
            fits = (
                not self.claimed_surface.orientable
                and self.claimed_surface.euler_genus >= own.euler_genus
            )
        if not fits:
            raise InternalInvariantError(
                f"catalog entry {self.family} {self.parameters} lives on {own.label}, "
                f"not within claimed {self.claimed_surface.label}"
            )


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InternalInvariantError(message)


def _checked(drawing: Drawing, surface: SurfaceClass, what: str) -> Drawing:
    report = verify_thrackle(drawing)
    if not report.is_thrackle:
        raise InternalInvariantError(
            f"{what}: construction is not a thrackle: {report.violations[:3]}"
        )
    if report.surface != surface:
        raise InternalInvariantError(
            f"{what}: construction lives on {report.surface.label}, expected {surface.label}"
        )
    if drawing.num_crossings != independent_pairs(drawing.graph):
        raise InternalInvariantError(
            f"{what}: {drawing.num_crossings} crossings, expected "
            f"{independent_pairs(drawing.graph)}"
        )
    return drawing


# -- star polygon geometry -------------------------------------------------


def _star_positions(k: int) -> list[geo.Vec]:
    """Position of cycle vertex j (1-based): near-regular circle point at
    slot (j-1)(k-1)/2 mod k, so consecutive cycle vertices sit almost
    opposite each other."""
    pts = geo.circle_points(k)
    q = (k - 1) // 2
    return [pts[((j - 1) * q) % k] for j in range(1, k + 1)]


class _PlanarPieces:
    """Accumulates straight segments of edges and extracts the drawing data.

    Each edge is a chain of directed segments from its first declared
    endpoint; crossings between pieces of different edges are computed
    exactly and merged into per-edge crossing orders.
    """

    def __init__(self, graph: AbstractGraph):
        self.graph = graph
        self.pieces: dict[str, list[tuple[geo.Vec, geo.Vec]]] = {}

    def add_piece(self, eid: str, a: geo.Vec, b: geo.Vec) -> None:
        self.pieces.setdefault(eid, []).append((a, b))

    def extract(self) -> tuple[dict[str, Crossing], dict[str, tuple[str, ...]]]:
        eids = sorted(self.pieces, key=natural_key)
        # per edge: list of (position along edge, other edge, bit) later named
        hits: dict[str, list[tuple[tuple[int, Fraction], str, str]]] = {e: [] for e in eids}
        crossings: dict[str, Crossing] = {}
        for i, ea in enumerate(eids):
            for eb in eids[i + 1 :]:
                if self.graph.adjacent(ea, eb):
                    continue
                found: list[tuple[tuple[int, Fraction], tuple[int, Fraction], int]] = []
                for pa, (a1, a2) in enumerate(self.pieces[ea]):
                    for pb, (b1, b2) in enumerate(self.pieces[eb]):
                        got = geo.segment_crossing(a1, a2, b1, b2)
                        if got is None:
                            continue
                        t, u = got
                        da = geo.vsub(a2, a1)
                        db = geo.vsub(b2, b1)
                        c = geo.cross(db, da)
                        _require(c != 0, "crossing of parallel pieces")
                        found.append(((pa, t), (pb, u), 0 if c > 0 else 1))
                for pos_a, pos_b, bit in found:
                    xid = f"{ea}x{eb}"
                    if len(found) > 1:
                        xid = f"{xid}.{sorted(found).index((pos_a, pos_b, bit))}"
                    crossings[xid] = Crossing(ea, eb, bit)
                    hits[ea].append((pos_a, eb, xid))
                    hits[eb].append((pos_b, ea, xid))
        orders: dict[str, tuple[str, ...]] = {}
        for eid in eids:
            ranked = sorted(hits[eid], key=lambda h: h[0])
            for first, second in zip(ranked, ranked[1:]):
                _require(first[0] != second[0], f"two crossings coincide on {eid}")
            if ranked:
                orders[eid] = tuple(xid for _, _, xid in ranked)
        return crossings, orders


def odd_cycle_sphere(k: int) -> Drawing:
    """Thrackle drawing of the odd cycle C_k in the plane.

    Vertices sit on a circle with consecutive cycle vertices nearly
    antipodal; straight chords then cross pairwise exactly when independent,
    giving k(k-3)/2 crossings and euler genus 0.
    """
    if k < 3 or k % 2 == 0:
        raise DomainError(f"only odd cycles of length >= 3 can be drawn this way, got {k}")
    graph = cycle(k)
    position = {str(j + 1): p for j, p in enumerate(_star_positions(k))}

    pieces = _PlanarPieces(graph)
    for eid, (v1, v2) in graph.edges.items():
        pieces.add_piece(eid, position[v1], position[v2])
    crossings, orders = pieces.extract()

    rotations: dict[str, tuple[str, ...]] = {}
    for v in graph.vertices:
        incident = graph.edges_at(v)
        rays = []
        for eid in incident:
            v1, v2 = graph.edges[eid]
            other = v2 if v == v1 else v1
            rays.append(geo.vsub(position[other], position[v]))
        order = geo.clockwise_order(rays)
        rotations[v] = tuple(incident[i] for i in order)

    drawing = Drawing(
        graph=graph, rotations=rotations, crossings=crossings, orders=orders, negative={}
    )
    return _checked(drawing, SurfaceClass.sphere(), f"odd_cycle_sphere({k})")


def wheel_projective(k: int) -> Drawing:
    """Thrackle drawing of the wheel W_k on the projective plane.

    The rim is the star-polygon odd cycle. Each spoke leaves the hub (far
    outside the circle), wraps around to the point antipodal to its rim
    vertex, dives straight toward the center, passes through one shared
    crosscap there (a -1 segment), and exits straight to its vertex. The
    dive and exit together cross exactly the k-2 rim chords the spoke is
    independent from.
    """
    if k < 3 or k % 2 == 0:
        raise DomainError(f"wheels need an odd rim of length >= 3, got {k}")
    graph = wheel(k)
    star = _star_positions(k)
    position = {str(j + 1): p for j, p in enumerate(star)}
    rho = Fraction(1, 4 * k)

    pieces = _PlanarPieces(graph)
    for j in range(1, k + 1):
        rid = f"r{j}"
        v1, v2 = graph.edges[rid]
        pieces.add_piece(rid, position[v1], position[v2])
    # spokes contribute their dive and exit pieces; the hub fan and the
    # crosscap hop cross nothing and are handled combinatorially
    for j in range(1, k + 1):
        u = position[str(j)]
        entry = geo.vneg(u)
        pieces.add_piece(f"s{j}", entry, geo.vscale(entry, rho))
        pieces.add_piece(f"s{j}", geo.vscale(u, rho), u)

    for j in range(1, k + 1):
        u = position[str(j)]
        for i in range(1, k + 1):
            if u == position.get(str(i)) and i != j:
                raise InternalInvariantError("two rim vertices coincide")
        if geo.vneg(u) in star:
            raise InternalInvariantError("a spoke entry point hits a rim vertex")

    # rim chords must clear the teleport disk of radius rho
    for rid in (f"r{j}" for j in range(1, k + 1)):
        v1, v2 = graph.edges[rid]
        a, b = position[v1], position[v2]
        d = geo.vsub(b, a)
        num = geo.cross(d, geo.vneg(a)) ** 2
        if num <= rho * rho * geo.dot(d, d):
            raise InternalInvariantError(f"rim chord {rid} passes through the crosscap zone")

    crossings, orders = pieces.extract()

    rotations: dict[str, tuple[str, ...]] = {}
    for j in range(1, k + 1):
        v = str(j)
        incident = graph.edges_at(v)
        rays = []
        for eid in incident:
            if eid.startswith("s"):
                rays.append(geo.vneg(position[v]))
            else:
                v1, v2 = graph.edges[eid]
                other = v2 if v == v1 else v1
                rays.append(geo.vsub(position[other], position[v]))
        order = geo.clockwise_order(rays)
        rotations[v] = tuple(incident[i] for i in order)

    # hub fan: arcs wrap counterclockwise from the hub's viewing angle (the
    # direction of vertex 1) to each spoke's entry point; clockwise rotation
    # at the hub lists spokes by increasing wrap distance
    entries = [geo.vneg(position[str(j)]) for j in range(1, k + 1)]
    sweep = geo.sweep_order_from(position["1"], entries)
    rotations["h"] = tuple(f"s{i + 1}" for i in sweep)

    negative = {}
    for j in range(1, k + 1):
        sid = f"s{j}"
        dive_end = geo.vscale(geo.vneg(position[str(j)]), rho)
        dive_count = 0
        for xid in orders.get(sid, ()):
            # crossings on the dive piece precede the crosscap hop
            other = crossings[xid].other(sid)
            v1, v2 = graph.edges[other]
            got = geo.segment_crossing(
                geo.vneg(position[str(j)]), dive_end, position[v1], position[v2]
            )
            if got is not None:
                dive_count += 1
        negative[sid] = frozenset({dive_count})

    drawing = Drawing(
        graph=graph, rotations=rotations, crossings=crossings, orders=orders,
        negative=negative,
    )
    return _checked(
        drawing, SurfaceClass.nonorientable_surface(1), f"wheel_projective({k})"
    )


# -- stored drawings -------------------------------------------------------

_FIXED = {
    "k33_torus": (SurfaceClass.orientable_surface(1), 18),
    "k4_torus": (SurfaceClass.orientable_surface(1), 3),
    "k5_triple_torus": (SurfaceClass.orientable_surface(3), 15),
}

GK_STORED_MAX = 15


def _load_data(filename: str) -> Drawing:
    path = resources.files("thrackles") / "data" / filename
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise InternalInvariantError(f"missing packaged drawing {filename}") from exc
    return parse_drawing(text)


def fixed_drawing(name: str) -> Drawing:
    """One of the hand-built drawings shipped with the package.

    Known names: k33_torus, k4_torus, k5_triple_torus.
    """
    if name not in _FIXED:
        raise DomainError(
            f"unknown fixed drawing {name!r}; known: {', '.join(sorted(_FIXED))}"
        )
    surface, crossings = _FIXED[name]
    drawing = _load_data(f"{name}.thr")
    if drawing.num_crossings != crossings:
        raise InternalInvariantError(
            f"{name}: stored file has {drawing.num_crossings} crossings, expected {crossings}"
        )
    return _checked(drawing, surface, name)


def gk_torus(k: int) -> Drawing:
    """Thrackle drawing of the double fan on the torus.

    The graph is a path 1..2k with a hub a over the odd vertices and a hub
    b over the evens (2k+2 vertices, 4k-1 edges). Structures are shipped as
    verified data files for k up to 15.
    """
    if k < 1:
        raise DomainError(f"double fan needs k >= 1, got {k}")
    if k > GK_STORED_MAX:
        raise DomainError(
            f"no stored double-fan structure for k = {k}; available up to {GK_STORED_MAX}"
        )
    drawing = _load_data(f"double_fan_{k:02d}.thr")
    if drawing.graph != double_fan(k):
        raise InternalInvariantError(f"stored double-fan file for k={k} has the wrong graph")
    report = verify_thrackle(drawing)
    if not report.is_thrackle:
        raise InternalInvariantError(f"stored double-fan k={k} is not a thrackle")
    surface = report.surface
    if not surface.orientable or surface.euler_genus > 2:
        raise InternalInvariantError(
            f"stored double-fan k={k} lives on {surface.label}, not within S_1"
        )
    if drawing.num_crossings != independent_pairs(drawing.graph):
        raise InternalInvariantError(f"stored double-fan k={k} has a wrong crossing count")
    return drawing


double_fan_torus = gk_torus


# -- parametric families ---------------------------------------------------


def mainor_family(g: int, k: int) -> Drawing:
    """Main orientable family: double fan plus a cloned hub star.

    For g = 1 this is the double fan itself; for g >= 2 the hub a of
    gk_torus(k) is star-cloned with t = g-1, which needs deg(a) = k at
    least 2t+1. Result: n = 2k+3, m = 4k+2g-2 = 2n+2g-8, orientable with
    euler genus exactly 2g.
    """
    if g < 1:
        raise DomainError(f"genus parameter must be >= 1, got {g}")
    if g == 1:
        return gk_torus(k)
    t = g - 1
    if k < 2 * t + 1:
        raise DomainError(
            f"cloning t = {t} needs hub degree k \\ge 2t+1 = {2 * t + 1}, got k = {k}"
        )
    from .surgery import clone_star_orientable

    drawing = clone_star_orientable(gk_torus(k), "a", t)
    expected = SurfaceClass.orientable_surface(g)
    n, m = drawing.graph.num_vertices, drawing.graph.num_edges
    if (n, m) != (2 * k + 3, 4 * k + 2 * g - 2):
        raise InternalInvariantError(
            f"main orientable family ({g}, {k}) has (n, m) = ({n}, {m})"
        )
    return _checked(drawing, expected, f"mainor_family({g}, {k})")


def mainnon_family(g: int, k: int) -> Drawing:
    """Main nonorientable family: wheel plus a cloned hub star.

    For g = 1 this is the projective wheel; for g >= 2 the hub of
    wheel_projective(k) is star-cloned (nonorientable version) with
    t = g-1, which needs k >= t+1. Result: n = k+2, m = 2k+g = 2n+g-4,
    nonorientable with euler genus exactly g.
    """
    if g < 1:
        raise DomainError(f"genus parameter must be >= 1, got {g}")
    if k % 2 == 0:
        raise DomainError(f"wheel rims must be odd, got k = {k}")
    if g == 1:
        return wheel_projective(k)
    t = g - 1
    if k < t + 1:
        raise DomainError(
            f"cloning t = {t} needs hub degree k \\ge t+1 = {t + 1}, got k = {k}"
        )
    from .surgery import clone_star_nonorientable

    drawing = clone_star_nonorientable(wheel_projective(k), "h", t)
    expected = SurfaceClass.nonorientable_surface(g)
    n, m = drawing.graph.num_vertices, drawing.graph.num_edges
    if (n, m) != (k + 2, 2 * k + g):
        raise InternalInvariantError(
            f"main nonorientable family ({g}, {k}) has (n, m) = ({n}, {m})"
        )
    return _checked(drawing, expected, f"mainnon_family({g}, {k})")


# -- catalog index ---------------------------------------------------------


def entry(family: str, **params: int) -> CatalogEntry:
    """Verified catalog entry for a family name and its parameters."""
    makers: dict[str, tuple[Callable[..., Drawing], str]] = {
        "odd_cycle": (odd_cycle_sphere, "star-polygon"),
        "wheel": (wheel_projective, "wheel-crosscap"),
        "double_fan": (gk_torus, "double-fan-torus"),
        "mainor": (mainor_family, "cloned-double-fan"),
        "mainnon": (mainnon_family, "cloned-wheel"),
        "fixed": (fixed_drawing, "hand-built"),
    }
    if family not in makers:
        raise DomainError(f"unknown family {family!r}; known: {', '.join(sorted(makers))}")
    maker, citation = makers[family]
    drawing = maker(**params)
    surface = drawing.surface()
    return CatalogEntry(
        family=family,
        parameters=dict(params),
        drawing=drawing,
        claimed_surface=surface,
        citation=citation,
    )
