"""Plain-text drawing files.

A file holds one drawing:

    thrackle v1
    vertex <vid>
    edge <eid> <vid> <vid>
    rot <vid> <eid> ...          clockwise order of incident edges
    cross <xid> <eidA> <eidB> <bit>
    order <eid> <xid> ...        crossings from the edge's first endpoint
    sign <eid> <piece> -         arc piece carrying sign -1

``#`` starts a comment; blank lines are ignored; declarations may appear
in any order. Serialization is canonical: ids in natural order, each
rotation started at its least edge, each cross line with its edges in
natural order (flipping the bit when the two swap roles), empty rot and
order lines omitted. Parsing a canonical file and serializing the result
reproduces it byte for byte.
"""

from __future__ import annotations

from .drawing import Crossing, Drawing
from .errors import ParseError, StructureError
from .graphs import AbstractGraph
from .surface import natural_key

HEADER = "thrackle v1"


def parse_drawing(text: str) -> Drawing:
    """Parse a drawing file; raise :class:`ParseError` naming the bad line."""
    vertices: dict[str, int] = {}
    edges: dict[str, tuple[tuple[str, str], int]] = {}
    rots: dict[str, tuple[tuple[str, ...], int]] = {}
    crosses: dict[str, tuple[str, str, int, int]] = {}
    orders: dict[str, tuple[tuple[str, ...], int]] = {}
    signs: dict[str, set[int]] = {}
    sign_lines: dict[tuple[str, int], int] = {}

    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line != HEADER:
                raise ParseError(f"expected header {HEADER!r}, got {line!r}", lineno)
            header_seen = True
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        if kind == "vertex":
            if len(args) != 1:
                raise ParseError("vertex takes exactly one id", lineno)
            if args[0] in vertices:
                raise ParseError(f"vertex {args[0]!r} declared twice", lineno)
            vertices[args[0]] = lineno
        elif kind == "edge":
            if len(args) != 3:
                raise ParseError("edge takes an id and two vertex ids", lineno)
            eid, v1, v2 = args
            if eid in edges:
                raise ParseError(f"edge {eid!r} declared twice", lineno)
            edges[eid] = ((v1, v2), lineno)
        elif kind == "rot":
            if len(args) < 2:
                raise ParseError("rot takes a vertex id and at least one edge id", lineno)
            vid = args[0]
            if vid in rots:
                raise ParseError(f"rotation for {vid!r} declared twice", lineno)
            rots[vid] = (tuple(args[1:]), lineno)
        elif kind == "cross":
            if len(args) != 4:
                raise ParseError("cross takes an id, two edge ids, and a bit", lineno)
            xid, ea, eb, bit_s = args
            if xid in crosses:
                raise ParseError(f"crossing {xid!r} declared twice", lineno)
            if bit_s not in ("0", "1"):
                raise ParseError(f"crossing bit must be 0 or 1, got {bit_s!r}", lineno)
            if ea == eb:
                raise ParseError(f"crossing {xid!r} names edge {ea!r} twice", lineno)
            crosses[xid] = (ea, eb, int(bit_s), lineno)
        elif kind == "order":
            if len(args) < 2:
                raise ParseError("order takes an edge id and at least one crossing id", lineno)
            eid = args[0]
            if eid in orders:
                raise ParseError(f"order for {eid!r} declared twice", lineno)
            orders[eid] = (tuple(args[1:]), lineno)
        elif kind == "sign":
            if len(args) != 3 or args[2] != "-":
                raise ParseError("sign takes an edge id, a piece index, and '-'", lineno)
            eid, piece_s = args[0], args[1]
            if not piece_s.isdigit():
                raise ParseError(f"piece index must be a nonnegative integer, got {piece_s!r}", lineno)
            piece = int(piece_s)
            if (eid, piece) in sign_lines:
                raise ParseError(f"sign for piece {piece} of {eid!r} declared twice", lineno)
            sign_lines[(eid, piece)] = lineno
            signs.setdefault(eid, set()).add(piece)
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)

    if not header_seen:
        raise ParseError(f"missing header {HEADER!r}", 1)

    for eid, ((v1, v2), lineno) in edges.items():
        for v in (v1, v2):
            if v not in vertices:
                raise ParseError(f"edge {eid!r} uses undeclared vertex {v!r}", lineno)
    for vid, (rot, lineno) in rots.items():
        if vid not in vertices:
            raise ParseError(f"rotation for undeclared vertex {vid!r}", lineno)
        for eid in rot:
            if eid not in edges:
                raise ParseError(f"rotation at {vid!r} names undeclared edge {eid!r}", lineno)
        incident = sorted(
            eid for eid, ((v1, v2), _) in edges.items() if vid in (v1, v2)
        )
        if sorted(rot) != incident:
            raise ParseError(
                f"rotation at {vid!r} must list exactly its incident edges once", lineno
            )
    for xid, (ea, eb, _bit, lineno) in crosses.items():
        for eid in (ea, eb):
            if eid not in edges:
                raise ParseError(f"crossing {xid!r} uses undeclared edge {eid!r}", lineno)
    placements: dict[str, list[str]] = {xid: [] for xid in crosses}
    for eid, (order, lineno) in orders.items():
        if eid not in edges:
            raise ParseError(f"order for undeclared edge {eid!r}", lineno)
        seen: set[str] = set()
        for xid in order:
            if xid not in crosses:
                raise ParseError(f"order for {eid!r} names undeclared crossing {xid!r}", lineno)
            if xid in seen:
                raise ParseError(f"order for {eid!r} repeats crossing {xid!r}", lineno)
            seen.add(xid)
            ea, eb, _bit, _ln = crosses[xid]
            if eid not in (ea, eb):
                raise ParseError(
                    f"crossing {xid!r} involves {ea!r} and {eb!r}, not {eid!r}", lineno
                )
            placements[xid].append(eid)
    for xid, on in placements.items():
        ea, eb, _bit, lineno = crosses[xid]
        if sorted(on) != sorted((ea, eb)):
            raise ParseError(
                f"crossing {xid!r} must appear in the orders of both {ea!r} and {eb!r}",
                lineno,
            )
    for (eid, piece), lineno in sign_lines.items():
        if eid not in edges:
            raise ParseError(f"sign for undeclared edge {eid!r}", lineno)
        top = len(orders.get(eid, ((), 0))[0])
        if piece > top:
            raise ParseError(
                f"edge {eid!r} has pieces 0..{top}, no piece {piece}", lineno
            )

    try:
        graph = AbstractGraph(
            vertices=frozenset(vertices),
            edges={eid: pair for eid, (pair, _) in edges.items()},
        )
        return Drawing(
            graph=graph,
            rotations={vid: rot for vid, (rot, _) in rots.items()},
            crossings={
                xid: Crossing(ea, eb, bit) for xid, (ea, eb, bit, _) in crosses.items()
            },
            orders={eid: order for eid, (order, _) in orders.items()},
            negative={eid: frozenset(pieces) for eid, pieces in signs.items()},
        )
    except StructureError as exc:
        raise ParseError(str(exc)) from exc


def _check_id(kind: str, value: str) -> str:
    if not value or any(c.isspace() for c in value) or "#" in value:
        raise StructureError(f"{kind} id {value!r} cannot be written to a file")
    return value


def serialize_drawing(drawing: Drawing) -> str:
    """Canonical text form of a drawing; ends with a newline."""
    lines = [HEADER]
    for vid in sorted(drawing.graph.vertices, key=natural_key):
        lines.append(f"vertex {_check_id('vertex', vid)}")
    eids = sorted(drawing.graph.edges, key=natural_key)
    for eid in eids:
        v1, v2 = drawing.graph.edges[eid]
        lines.append(f"edge {_check_id('edge', eid)} {v1} {v2}")
    for vid in sorted(drawing.rotations, key=natural_key):
        rot = drawing.rotations[vid]
        if not rot:
            continue
        least = min(range(len(rot)), key=lambda i: natural_key(rot[i]))
        turned = rot[least:] + rot[:least]
        lines.append(f"rot {vid} " + " ".join(turned))
    for xid in sorted(drawing.crossings, key=natural_key):
        x = drawing.crossings[xid]
        ea, eb, bit = x.edge_a, x.edge_b, x.bit
        if natural_key(eb) < natural_key(ea):
            ea, eb, bit = eb, ea, 1 - bit
        lines.append(f"cross {_check_id('crossing', xid)} {ea} {eb} {bit}")
    for eid in eids:
        order = drawing.order_of(eid)
        if order:
            lines.append(f"order {eid} " + " ".join(order))
    for eid in eids:
        for piece in sorted(drawing.negatives_of(eid)):
            lines.append(f"sign {eid} {piece} -")
    return "\n".join(lines) + "\n"


def load_drawing(path: str) -> Drawing:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_drawing(fh.read())


def save_drawing(drawing: Drawing, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_drawing(drawing))
