#!/usr/bin/env python3
"""Generate the packaged drawing data files in src/thrackles/data/.

Artifacts:
  k4_torus.thr          exhaustive-search witness (lexicographically least)
  k33_torus.thr         seeded annealing, euler genus 2, orientable
  k5_triple_torus.thr   seeded annealing, euler genus 6, orientable
  double_fan_01.thr     exhaustive-search witness
  double_fan_02..15     seeded annealing, euler genus 2, orientable,
                        warm-started from the previous size

Everything is deterministic (fixed seeds, fixed tie-breaks), and every
artifact is re-verified through the public stack (thrackle verification,
exact surface, crossing count) before it is written.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
import time
from pathlib import Path

from thrackles.catalog import odd_cycle_sphere
from thrackles.drawing import Crossing, Drawing, verify_thrackle
from thrackles.fileformat import load_drawing, save_drawing
from thrackles.graphs import AbstractGraph, complete, complete_bipartite, cycle, double_fan
from thrackles.search import _independent_pairs, enumerate_structures, min_euler_genus
from thrackles.surface import SurfaceClass, natural_key

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "thrackles" / "data"


def xid_of(ea: str, eb: str) -> str:
    return f"{ea}x{eb}"


class AnnealState:
    """Mutable all-positive drawing structure with an O(segments) face count.

    Rotations, crossing orders, and crossing bits are held in int-indexed
    arrays; each elementary move touches one or two planarized nodes, whose
    clockwise dart cycles are rebuilt in place. Every move is its own
    inverse, so rejection undo is a re-apply.
    """

    def __init__(self, graph: AbstractGraph):
        self.graph = graph
        self.edge_ids = sorted(graph.edges, key=natural_key)
        self.eidx = {e: i for i, e in enumerate(self.edge_ids)}
        self.vert_ids = sorted(graph.vertices, key=natural_key)
        self.vidx = {v: i for i, v in enumerate(self.vert_ids)}
        self.einc = [
            (self.vidx[graph.edges[e][0]], self.vidx[graph.edges[e][1]])
            for e in self.edge_ids
        ]

        pairs = _independent_pairs(graph)
        self.pair_names = list(pairs)
        self.xa = [self.eidx[a] for a, _ in pairs]
        self.xb = [self.eidx[b] for _, b in pairs]
        self.nx = len(pairs)

        # crossings per edge, natural initial order
        per_edge: list[list[int]] = [[] for _ in self.edge_ids]
        for x in range(self.nx):
            per_edge[self.xa[x]].append(x)
            per_edge[self.xb[x]].append(x)
        self.orders = per_edge
        self.posa = [0] * self.nx
        self.posb = [0] * self.nx
        self._reindex_positions()
        self.bits = [0] * self.nx

        self.rot: list[list[int]] = []
        for v in self.vert_ids:
            inc = [self.eidx[e] for e in self.edge_ids if v in graph.edges[e]]
            self.rot.append(inc)

        # segment layout is fixed: edge e owns pieces base[e]..base[e]+len
        self.base = []
        s = 0
        for e in range(len(self.edge_ids)):
            self.base.append(s)
            s += len(self.orders[e]) + 1
        self.nseg = s
        self.cw = [0] * (2 * s)
        self._rebuild_all()

    # -- bookkeeping ------------------------------------------------------

    def _reindex_positions(self) -> None:
        for e, order in enumerate(self.orders):
            for i, x in enumerate(order):
                if self.xa[x] == e:
                    self.posa[x] = i
                else:
                    self.posb[x] = i

    def _vertex_darts(self, vi: int) -> list[int]:
        darts = []
        for e in self.rot[vi]:
            if self.einc[e][0] == vi:
                darts.append(2 * self.base[e])
            else:
                darts.append(2 * (self.base[e] + len(self.orders[e])) + 1)
        return darts

    def _crossing_darts(self, x: int) -> list[int]:
        ea, eb = self.xa[x], self.xb[x]
        pa, pb = self.posa[x], self.posb[x]
        a_in = 2 * (self.base[ea] + pa) + 1
        a_out = 2 * (self.base[ea] + pa + 1)
        b_in = 2 * (self.base[eb] + pb) + 1
        b_out = 2 * (self.base[eb] + pb + 1)
        if self.bits[x] == 0:
            return [a_in, b_in, a_out, b_out]
        return [a_in, b_out, a_out, b_in]

    def _install(self, darts: list[int]) -> None:
        cw = self.cw
        n = len(darts)
        for i, d in enumerate(darts):
            cw[d] = darts[(i + 1) % n]

    def _rebuild_all(self) -> None:
        for vi in range(len(self.vert_ids)):
            if self.rot[vi]:
                self._install(self._vertex_darts(vi))
        for x in range(self.nx):
            self._install(self._crossing_darts(x))

    # -- evaluation ---------------------------------------------------------

    def faces(self) -> int:
        cw = self.cw
        visited = bytearray(2 * self.nseg)
        count = 0
        for start in range(2 * self.nseg):
            if visited[start]:
                continue
            count += 1
            b = start
            while not visited[b]:
                visited[b] = 1
                b = cw[b ^ 1]
        return count

    def eps(self) -> int:
        nv = sum(1 for r in self.rot if r)
        return 2 - (nv + self.nx) + (self.nseg) - self.faces()

    # -- moves ---------------------------------------------------------------

    def menu(self) -> list[tuple]:
        """Move slots: reinsertions within rotations and crossing orders,
        plus crossing-bit flips."""
        moves: list[tuple] = []
        for vi, r in enumerate(self.rot):
            if len(r) >= 3:
                moves.append(("r", vi))
        for e, order in enumerate(self.orders):
            if len(order) >= 2:
                moves.append(("o", e))
        for x in range(self.nx):
            moves.append(("b", x))
        return moves

    def menu_restricted(self, new_edges: set[str]) -> list[tuple]:
        """Moves that only disturb structure involving ``new_edges``: the
        rest of the drawing stays frozen up to whole-list shifts."""
        new_eidx = {self.eidx[e] for e in new_edges}
        moves: list[tuple] = []
        for x in range(self.nx):
            if self.xa[x] in new_eidx or self.xb[x] in new_eidx:
                moves.append(("b", x))
                for e in (self.xa[x], self.xb[x]):
                    if e not in new_eidx and len(self.orders[e]) >= 2:
                        moves.append(("o2", e, x))
        for e in new_eidx:
            if len(self.orders[e]) >= 2:
                moves.append(("o", e))
        for vi, r in enumerate(self.rot):
            if len(r) < 3:
                continue
            news = [e for e in r if e in new_eidx]
            if len(news) == len(r):
                moves.append(("r", vi))
            else:
                for e in news:
                    moves.append(("r2", vi, e))
        return moves

    def _refresh_edge(self, e: int, lo: int, hi: int) -> None:
        order = self.orders[e]
        for i in range(lo, hi + 1):
            x = order[i]
            if self.xa[x] == e:
                self.posa[x] = i
            else:
                self.posb[x] = i
            self._install(self._crossing_darts(x))

    def apply(self, mv: tuple, rng: random.Random) -> tuple:
        """Apply one randomized move; return the spec that undoes it."""
        kind = mv[0]
        if kind == "r":
            _, vi = mv
            r = self.rot[vi]
            i = rng.randrange(len(r))
            j = rng.randrange(len(r))
            r.insert(j, r.pop(i))
            self._install(self._vertex_darts(vi))
            return ("R", vi, j, i)
        if kind == "o":
            _, e = mv
            order = self.orders[e]
            i = rng.randrange(len(order))
            j = rng.randrange(len(order))
            order.insert(j, order.pop(i))
            if i != j:
                self._refresh_edge(e, min(i, j), max(i, j))
            return ("O", e, j, i)
        if kind == "o2":
            _, e, x = mv
            order = self.orders[e]
            i = order.index(x)
            j = rng.randrange(len(order))
            order.insert(j, order.pop(i))
            if i != j:
                self._refresh_edge(e, min(i, j), max(i, j))
            return ("O", e, j, i)
        if kind == "r2":
            _, vi, e = mv
            r = self.rot[vi]
            i = r.index(e)
            j = rng.randrange(len(r))
            r.insert(j, r.pop(i))
            self._install(self._vertex_darts(vi))
            return ("R", vi, j, i)
        _, x = mv
        self.bits[x] ^= 1
        self._install(self._crossing_darts(x))
        return ("b", x)

    def undo(self, spec: tuple) -> None:
        kind = spec[0]
        if kind == "R":
            _, vi, j, i = spec
            r = self.rot[vi]
            r.insert(i, r.pop(j))
            self._install(self._vertex_darts(vi))
        elif kind == "O":
            _, e, j, i = spec
            order = self.orders[e]
            order.insert(i, order.pop(j))
            if i != j:
                self._refresh_edge(e, min(i, j), max(i, j))
        else:
            _, x = spec
            self.bits[x] ^= 1
            self._install(self._crossing_darts(x))

    # -- state I/O ------------------------------------------------------------

    def randomize(self, rng: random.Random) -> None:
        for r in self.rot:
            rng.shuffle(r)
        for order in self.orders:
            rng.shuffle(order)
        self._reindex_positions()
        for x in range(self.nx):
            self.bits[x] = rng.randrange(2)
        self._rebuild_all()

    def load(
        self,
        rotations: dict[str, list[str]],
        orders: dict[str, list[str]],
        bits: dict[str, int],
    ) -> None:
        name_to_x = {xid_of(a, b): i for i, (a, b) in enumerate(self.pair_names)}
        for v, rot in rotations.items():
            self.rot[self.vidx[v]] = [self.eidx[e] for e in rot]
        for e, order in orders.items():
            self.orders[self.eidx[e]] = [name_to_x[xid] for xid in order]
        self._reindex_positions()
        for xid, bit in bits.items():
            self.bits[name_to_x[xid]] = bit
        self._rebuild_all()

    @classmethod
    def from_drawing(cls, drawing: Drawing) -> "AnnealState":
        if any(drawing.negatives_of(e) for e in drawing.graph.edges):
            raise ValueError("fast evaluator handles all-positive drawings only")
        st = cls(drawing.graph)
        pair_to_xid = {
            frozenset((x.edge_a, x.edge_b)): xid for xid, x in drawing.crossings.items()
        }
        rotations = {v: list(rot) for v, rot in drawing.rotations.items()}
        rename = {
            pair_to_xid[frozenset(p)]: xid_of(*p) for p in st.pair_names
        }
        orders = {
            e: [rename[xid] for xid in drawing.order_of(e)]
            for e in drawing.graph.edges
            if drawing.order_of(e)
        }
        bits = {
            rename[xid]: x.bit for xid, x in drawing.crossings.items()
        }
        st.load(rotations, orders, bits)
        return st

    def to_drawing(self) -> Drawing:
        crossings = {}
        for i, (a, b) in enumerate(self.pair_names):
            crossings[xid_of(a, b)] = Crossing(edge_a=a, edge_b=b, bit=self.bits[i])
        orders = {}
        for e, order in enumerate(self.orders):
            if order:
                eid = self.edge_ids[e]
                orders[eid] = tuple(
                    xid_of(*self.pair_names[x]) for x in order
                )
        rotations = {
            v: tuple(self.edge_ids[e] for e in self.rot[vi])
            for vi, v in enumerate(self.vert_ids)
            if self.rot[vi]
        }
        return Drawing(
            graph=self.graph,
            rotations=rotations,
            crossings=crossings,
            orders=orders,
            negative={},
        )


def check_fast_eps() -> None:
    """The incremental evaluator must agree with the verifying stack."""
    for k in (5, 7):
        d = odd_cycle_sphere(k)
        st = AnnealState.from_drawing(d)
        full = d.surface()
        if st.eps() != full.euler_genus or full.euler_genus != 0:
            raise AssertionError(f"fast eps disagrees on odd cycle {k}")
    for g, limit in ((cycle(5), 48), (cycle(4), 32)):
        for i, d in enumerate(enumerate_structures(g, mode="orientable")):
            if i >= limit:
                break
            fast = AnnealState.from_drawing(d).eps()
            full = d.surface().euler_genus
            if fast != full:
                raise AssertionError(f"fast eps {fast} != surface eps {full}")
    result = min_euler_genus(complete(4), mode="orientable")
    d = result.orientable_witness
    if AnnealState.from_drawing(d).eps() != 2:
        raise AssertionError("fast eps disagrees on the K4 witness")

    # incremental maintenance vs fresh rebuild, under random move/undo churn
    rng = random.Random(1234)
    st = AnnealState(complete_bipartite(3, 3))
    st.randomize(rng)
    menu = st.menu()
    for trial in range(400):
        mv = menu[rng.randrange(len(menu))]
        spec = st.apply(mv, rng)
        if trial % 3 == 0:
            before = st.eps()
            st.undo(spec)
            spec2 = st.apply(mv, rng)
            st.undo(spec2)
            spec3 = st.apply(mv, rng)
            del before
        if trial % 40 == 0:
            incremental = st.eps()
            rebuilt = AnnealState.from_drawing(st.to_drawing()).eps()
            full = st.to_drawing().surface().euler_genus
            if not (incremental == rebuilt == full):
                raise AssertionError(
                    f"incremental eps {incremental}, rebuilt {rebuilt}, full {full}"
                )
    print("fast evaluator cross-checked against the verifying stack")


def anneal(
    graph: AbstractGraph,
    *,
    target: int,
    seed: int,
    label: str,
    attempts: int = 4,
    sweeps: int = 30_000,
    chains: int = 12,
    moves_per_sweep: int = 40,
    t_lo: float = 0.04,
    t_hi: float = 3.0,
    warm: tuple | None = None,
    restrict: set[str] | None = None,
) -> Drawing:
    """Parallel tempering toward euler genus ``target`` (orientable).

    A ladder of Metropolis chains at geometrically spaced temperatures runs
    over the shared move menu; adjacent chains exchange whole states so cold
    chains inherit good basins found by hot ones. Deterministic per seed.
    With ``restrict``, only structure touching those edges may move and every
    chain starts from the warm state (hot chains scrambled).
    """
    for attempt in range(attempts):
        rng = random.Random(f"{label}/{seed}/{attempt}")
        temps = [
            t_lo * (t_hi / t_lo) ** (c / (chains - 1)) for c in range(chains)
        ]
        states: list[AnnealState] = []
        energies: list[int] = []
        menu: list[tuple] = []
        for c in range(chains):
            st = AnnealState(graph)
            if restrict is not None:
                st.load(*warm)
                menu = menu or st.menu_restricted(restrict)
                if c >= (chains + 1) // 2:
                    for _ in range(3 * len(menu)):
                        st.apply(menu[rng.randrange(len(menu))], rng)
            elif warm is not None and c < (chains + 1) // 2:
                st.load(*warm)
            else:
                st.randomize(rng)
            states.append(st)
            energies.append(abs(st.eps() - target))
        if restrict is None:
            menu = states[0].menu()
        nmoves = len(menu)
        t_start = time.monotonic()
        solved = None
        for sweep in range(sweeps):
            for c in range(chains):
                st = states[c]
                temp = temps[c]
                energy = energies[c]
                for _ in range(moves_per_sweep):
                    mv = menu[rng.randrange(nmoves)]
                    spec = st.apply(mv, rng)
                    cand = abs(st.eps() - target)
                    if cand <= energy or rng.random() < math.exp(
                        (energy - cand) / temp
                    ):
                        energy = cand
                        if energy == 0:
                            break
                    else:
                        st.undo(spec)
                energies[c] = energy
                if energy == 0:
                    solved = c
                    break
            if solved is not None:
                break
            for c in range(chains - 1):
                d_beta = 1.0 / temps[c] - 1.0 / temps[c + 1]
                d_e = energies[c] - energies[c + 1]
                if d_e * d_beta >= 0 or rng.random() < math.exp(d_e * d_beta):
                    states[c], states[c + 1] = states[c + 1], states[c]
                    energies[c], energies[c + 1] = energies[c + 1], energies[c]
        elapsed = time.monotonic() - t_start
        if solved is not None:
            drawing = states[solved].to_drawing()
            print(
                f"{label}: solved on attempt {attempt} after {sweep} sweeps "
                f"({elapsed:.1f}s)"
            )
            return drawing
        print(
            f"{label}: attempt {attempt} stuck, best energy {min(energies)} "
            f"after {sweeps} sweeps ({elapsed:.1f}s)"
        )
    raise RuntimeError(f"{label}: annealing failed after {attempts} attempts")


def certify(drawing: Drawing, surface: SurfaceClass, label: str) -> Drawing:
    report = verify_thrackle(drawing)
    if not report.is_thrackle:
        raise AssertionError(f"{label}: not a thrackle: {report.violations[:3]}")
    actual = drawing.surface()
    if actual != surface:
        raise AssertionError(f"{label}: surface {actual.label}, wanted {surface.label}")
    pairs = len(_independent_pairs(drawing.graph))
    if drawing.num_crossings != pairs:
        raise AssertionError(
            f"{label}: {drawing.num_crossings} crossings, wanted {pairs}"
        )
    print(f"{label}: verified thrackle on {surface.label} with {pairs} crossings")
    return drawing


def write(drawing: Drawing, filename: str) -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    path = DATA_DIR / filename
    save_drawing(drawing, str(path))
    reread = load_drawing(str(path))
    if reread != drawing:
        # canonical serialization may rename nothing but can reorder; accept
        # any round-trip that preserves the verified invariants
        if reread.graph != drawing.graph or reread.num_crossings != drawing.num_crossings:
            raise AssertionError(f"{filename}: round-trip changed the drawing")
        if reread.surface() != drawing.surface():
            raise AssertionError(f"{filename}: round-trip changed the surface")
    print(f"wrote {path}")


def gen_k4() -> None:
    result = min_euler_genus(complete(4), mode="orientable")
    drawing = result.orientable_witness
    if not result.exhausted or drawing is None:
        raise AssertionError("K4 search did not exhaust")
    certify(drawing, SurfaceClass.orientable_surface(1), "k4_torus")
    write(drawing, "k4_torus.thr")


def gen_k33() -> None:
    drawing = anneal(
        complete_bipartite(3, 3), target=2, seed=33, label="k33_torus"
    )
    certify(drawing, SurfaceClass.orientable_surface(1), "k33_torus")
    write(drawing, "k33_torus.thr")


def gen_k5() -> None:
    drawing = anneal(
        complete(5), target=6, seed=5, label="k5_triple_torus", sweeps=60_000
    )
    certify(drawing, SurfaceClass.orientable_surface(3), "k5_triple_torus")
    write(drawing, "k5_triple_torus.thr")


def warm_from_previous(
    prev: Drawing, k: int, rng: random.Random
) -> tuple[dict, dict, dict]:
    """Extend a double-fan structure by one fan step as an annealing seed."""
    graph = double_fan(k)
    new_edges = {f"p{2 * k - 2}", f"p{2 * k - 1}", f"a{2 * k - 1}", f"b{2 * k}"}
    pairs = _independent_pairs(graph)

    rotations = {v: list(rot) for v, rot in prev.rotations.items()}
    for v, e in (("a", f"a{2 * k - 1}"), ("b", f"b{2 * k}"), (str(2 * k - 2), f"p{2 * k - 2}")):
        rot = rotations[v]
        rot.insert(rng.randrange(len(rot) + 1), e)
    rotations[str(2 * k - 1)] = [f"p{2 * k - 2}", f"a{2 * k - 1}", f"p{2 * k - 1}"]
    rng.shuffle(rotations[str(2 * k - 1)])
    rotations[str(2 * k)] = [f"p{2 * k - 1}", f"b{2 * k}"]

    prev_pair_bits = {
        frozenset((x.edge_a, x.edge_b)): x.bit for x in prev.crossings.values()
    }
    prev_xid_by_pair = {
        frozenset((x.edge_a, x.edge_b)): xid for xid, x in prev.crossings.items()
    }

    orders: dict[str, list[str]] = {}
    for e in graph.edges:
        if e in new_edges:
            mine = [xid_of(a, b) for a, b in pairs if e in (a, b)]
            rng.shuffle(mine)
            orders[e] = mine
        else:
            old = [
                xid_of(*sorted_pair)
                for xid in prev.order_of(e)
                for sorted_pair in (
                    tuple(sorted(
                        (prev.crossings[xid].edge_a, prev.crossings[xid].edge_b),
                        key=natural_key,
                    )),
                )
            ]
            fresh = [
                xid_of(a, b)
                for a, b in pairs
                if e in (a, b) and (a in new_edges or b in new_edges)
            ]
            for xid in fresh:
                old.insert(rng.randrange(len(old) + 1), xid)
            orders[e] = old

    bits: dict[str, int] = {}
    for a, b in pairs:
        key = frozenset((a, b))
        if key in prev_pair_bits:
            bits[xid_of(a, b)] = prev_pair_bits[key]
        else:
            bits[xid_of(a, b)] = rng.randrange(2)
    return rotations, orders, bits


def gen_double_fans(ks: list[int]) -> None:
    torus = SurfaceClass.orientable_surface(1)
    for k in ks:
        filename = f"double_fan_{k:02d}.thr"
        if k == 1:
            result = min_euler_genus(double_fan(1), mode="orientable")
            drawing = result.orientable_witness
            if drawing is None or not result.exhausted:
                raise AssertionError("double fan k=1 search did not exhaust")
            eps = drawing.surface().euler_genus
            if eps > 2:
                raise AssertionError(f"double fan k=1 witness has eps {eps}")
            certify(drawing, drawing.surface(), "double_fan_01")
            write(drawing, filename)
            continue
        warm = None
        new_edges = {f"p{2 * k - 2}", f"p{2 * k - 1}", f"a{2 * k - 1}", f"b{2 * k}"}
        prev_path = DATA_DIR / f"double_fan_{k - 1:02d}.thr"
        if k >= 3 and prev_path.exists():
            prev = load_drawing(str(prev_path))
            warm = warm_from_previous(prev, k, random.Random(f"warm/{k}"))
        drawing = None
        if warm is not None:
            try:
                drawing = anneal(
                    double_fan(k),
                    target=2,
                    seed=4000 + k,
                    label=f"double_fan_{k:02d}/local",
                    sweeps=4_000 + 1_500 * k,
                    attempts=3,
                    warm=warm,
                    restrict=new_edges,
                )
            except RuntimeError as exc:
                print(exc)
        if drawing is None:
            drawing = anneal(
                double_fan(k),
                target=2,
                seed=4000 + k,
                label=f"double_fan_{k:02d}",
                sweeps=20_000 + 8_000 * k,
                warm=warm,
            )
        certify(drawing, torus, f"double_fan_{k:02d}")
        write(drawing, filename)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--only",
        choices=["k4", "k33", "k5", "fans"],
        action="append",
        help="generate only the named artifacts (repeatable)",
    )
    parser.add_argument(
        "--fan-range",
        default="1-15",
        help="double-fan sizes to generate, e.g. 3-7 or 5",
    )
    args = parser.parse_args()
    wanted = set(args.only or ["k4", "k33", "k5", "fans"])

    lo, _, hi = args.fan_range.partition("-")
    ks = list(range(int(lo), int(hi or lo) + 1))

    check_fast_eps()
    if "k4" in wanted:
        gen_k4()
    if "k33" in wanted:
        gen_k33()
    if "k5" in wanted:
        gen_k5()
    if "fans" in wanted:
        gen_double_fans(ks)
    print("all requested artifacts generated")
    return 0


if __name__ == "__main__":
    sys.exit(main())
