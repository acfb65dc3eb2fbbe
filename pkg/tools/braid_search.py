"""Search for double-fan torus thrackles in the cylinder braid family.

Model: cut the torus along the vertex circle.  Every vertex sits on the cut
at a rational height; every edge is a straight strand across the resulting
cylinder, from height alpha on the left rim to height beta + m on the right
rim (m = integer wind).  Two strands cross exactly as many times as there
are integers strictly between their rim-height differences, so the thrackle
conditions become pure integer-interval constraints on (order, winds, dirs).
"""

from __future__ import annotations

import argparse
import itertools
import sys
from fractions import Fraction

sys.path.insert(0, "src")

from thrackles.graphs import double_fan


def pair_count(a1: Fraction, b1: Fraction, a2: Fraction, b2: Fraction) -> int:
    """Crossings of two straight cylinder strands (open interval count)."""
    s = a1 - a2
    d = b1 - b2
    lo, hi = min(s, d), max(s, d)
    # integers t with lo < t < hi
    import math

    first = math.floor(lo) + 1
    last = math.ceil(hi) - 1
    return max(0, last - first + 1)


def solve(k: int, winds: range, dirs_free: bool, limit: int, order_filter=None):
    g = double_fan(k)
    n = 2 * k + 2
    verts = ["a", "b"] + [str(i) for i in range(1, 2 * k + 1)]
    edge_ids = [f"p{i}" for i in range(1, 2 * k)]
    edge_ids += [f"a{i}" for i in range(1, 2 * k + 1, 2)]
    edge_ids += [f"b{i}" for i in range(2, 2 * k + 1, 2)]
    ends = {e: g.edges[e] for e in edge_ids}

    indep = {}
    for e, f in itertools.combinations(edge_ids, 2):
        shared = set(ends[e]) & set(ends[f])
        indep[(e, f)] = 0 if shared else 1

    found = []
    others = [v for v in verts if v != "a"]
    for perm in itertools.permutations(others):
        order = ["a"] + list(perm)
        if order_filter is not None and not order_filter(order):
            continue
        height = {v: Fraction(i, n) for i, v in enumerate(order)}

        # DFS over edges; assignment: edge -> (alpha, beta)
        assign: dict[str, tuple[Fraction, Fraction]] = {}

        def options(e):
            s, t = ends[e]
            pairs = [(s, t)] if not dirs_free else [(s, t), (t, s)]
            for lft, rgt in pairs:
                for m in winds:
                    yield height[lft], height[rgt] + m

        def dfs(i):
            if len(found) >= limit:
                return
            if i == len(edge_ids):
                found.append((list(order), dict(assign)))
                return
            e = edge_ids[i]
            for cand in options(e):
                ok = True
                for f, other in assign.items():
                    key = (e, f) if (e, f) in indep else (f, e)
                    if pair_count(*cand, *other) != indep[key]:
                        ok = False
                        break
                if ok:
                    assign[e] = cand
                    dfs(i + 1)
                    del assign[e]
                    if len(found) >= limit:
                        return

        dfs(0)
        if len(found) >= limit:
            break
    return found, ends


def show(sol, ends, n):
    order, assign = sol
    print("order:", " ".join(order))
    for e in sorted(assign, key=lambda x: (x[0], len(x), x)):
        a, b = assign[e]
        s, t = ends[e]
        # recover dir and wind from heights
        pos = {Fraction(i, n): i for i in range(n)}
        ai = pos[a]
        bfrac = b - b.__floor__()
        m = int(b.__floor__())
        bi = pos[bfrac]
        which = order[ai], order[bi]
        dir_note = "fwd" if which == (s, t) else "rev"
        print(f"  {e}: {dir_note}  left={order[ai]} right={order[bi]} wind={m}")
    print()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("k", type=int)
    ap.add_argument("--wind", type=int, default=2)
    ap.add_argument("--dirs", action="store_true", help="allow reversed strands")
    ap.add_argument("--limit", type=int, default=8)
    args = ap.parse_args()

    winds = range(-args.wind, args.wind + 1)
    found, ends = solve(args.k, winds, args.dirs, args.limit)
    n = 2 * args.k + 2
    print(f"k={args.k}: {len(found)} solutions (limit {args.limit})")
    for sol in found:
        show(sol, ends, n)


if __name__ == "__main__":
    main()
