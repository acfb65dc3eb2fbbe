"""Pin the orientation constants of the double-fan extension surgery.

The surgery grows a verified torus thrackle of the double fan G_k into one
of G_{k+1}.  Each of the four new edges runs alongside an existing edge
(a parallel "shadow"), with short local corrections near the two old
path-end vertices:

    A  = a_{2k+1}  shadows  alpha = a_{2k-1}   (from a), then crosses
                   rho = p_{2k-2} and pi = p_{2k-1} to reach u = 2k+1
    B  = b_{2k+2}  shadows  beta = b_{2k}      (from b), then crosses
                   pi and P1 to reach w = 2k+2
    P1 = p_{2k}    anti-shadows pi (from y = 2k), then crosses rho and
                   alpha to reach u
    P2 = p_{2k+1}  shadows  pi (from x = 2k-1) after first crossing
                   alpha, rho, pi, and finally crosses beta to reach w

plus one bundle crossing A x B beside the old alpha x beta crossing.
The crossing-set arithmetic is exact (14k - 4 new crossings); what is
left free is a finite set of side, bit, and stacking-order choices.
This script searches that space staged strand by strand, verifying each
partial drawing with the real checker, then validates the winning knob
vector along the whole chain k = 2 .. 15.
"""

from __future__ import annotations

import itertools
import json
import sys
import time

sys.path.insert(0, "src")

from thrackles.catalog import _load_data
from thrackles.drawing import Drawing, verify_thrackle
from thrackles.graphs import double_fan
from thrackles.surgery import _Builder, _shadow

STRANDS = ("A", "B", "P1", "P2")


def extend(drawing: Drawing, k: int, kn: dict, strands=STRANDS) -> Drawing:
    n = 2 * k
    x, y, u, w = str(n - 1), str(n), str(n + 1), str(n + 2)
    alpha, rho, pi, beta = f"a{n-1}", f"p{n-2}", f"p{n-1}", f"b{n}"
    A, B, P1, P2 = f"a{n+1}", f"b{n+2}", f"p{n}", f"p{n+1}"
    name = {"A": A, "B": B, "P1": P1, "P2": P2}
    has = {s: s in strands for s in STRANDS}

    bld = _Builder(drawing)
    old_order = {e: list(bld.orders[e]) for e in (alpha, beta, pi)}
    old_neg = {e: set(bld.negative[e]) for e in (alpha, beta, pi)}

    if has["A"]:
        bld.add_edge(A, "a", u)
    if has["B"]:
        bld.add_edge(B, "b", w)
    if has["P1"]:
        bld.add_edge(P1, y, u)
    if has["P2"]:
        bld.add_edge(P2, u, w)

    shA = shB = shP1 = shP2 = []
    if has["A"]:
        shA, _ = _shadow(bld, alpha, old_order[alpha], old_neg[alpha], "a", A, left=kn["S_A"])
    if has["B"]:
        shB, _ = _shadow(bld, beta, old_order[beta], old_neg[beta], "b", B, left=kn["S_B"])
    if has["P1"]:
        shP1, _ = _shadow(bld, pi, old_order[pi], old_neg[pi], y, P1, left=kn["S_P1"])
    if has["P2"]:
        shP2, _ = _shadow(bld, pi, old_order[pi], old_neg[pi], x, P2, left=kn["S_P2"])

    pk = {}
    if has["A"]:
        pk["rho:A"] = bld.cross(rho, A, kn["BIT_A_RHO"])
        pk["pi:A"] = bld.cross(pi, A, kn["BIT_A_PI"])
    if has["P1"]:
        pk["rho:P1"] = bld.cross(rho, P1, kn["BIT_P1_RHO"])
        pk["alpha:P1"] = bld.cross(alpha, P1, kn["BIT_P1_ALPHA"])
    if has["P2"]:
        pk["alpha:P2"] = bld.cross(alpha, P2, kn["BIT_P2_ALPHA"])
        pk["rho:P2"] = bld.cross(rho, P2, kn["BIT_P2_RHO"])
        pk["pi:P2"] = bld.cross(pi, P2, kn["BIT_P2_PI"])
        pk["beta:P2"] = bld.cross(beta, P2, kn["BIT_P2_BETA"])
    if has["B"]:
        pk["pi:B"] = bld.cross(pi, B, kn["BIT_B_PI"])
        if has["P1"]:
            pk["P1:B"] = bld.cross(P1, B, kn["BIT_B_P1"])
    if has["A"] and has["B"]:
        pk["A:B"] = bld.cross(A, B, kn["BIT_AB"])

    # Stacking order at each old-edge end, nearest the vertex first.
    rho_seq = [pk[f"rho:{s}"] for s in kn["RHO_ORDER"] if has[s]]
    bld.end_insert(rho, x, rho_seq)
    pi_x_seq = [pk[f"pi:{s}"] for s in kn["PI_X_ORDER"] if has[s]]
    bld.end_insert(pi, x, pi_x_seq)
    alpha_seq = [pk[f"alpha:{s}"] for s in kn["ALPHA_X_ORDER"] if has[s]]
    bld.end_insert(alpha, x, alpha_seq)
    if has["B"]:
        bld.end_insert(pi, y, [pk["pi:B"]])
    if has["P2"]:
        bld.end_insert(beta, y, [pk["beta:P2"]])

    # New-edge crossing orders, from each edge's first declared endpoint.
    if has["A"]:
        lst = list(shA)
        if has["B"]:
            i = lst.index(f"{beta}x{A}")
            lst.insert(i + (1 if kn["POS_AB_ON_A"] else 0), pk["A:B"])
        tail = [pk["rho:A"], pk["pi:A"]]
        if not kn["A_RHO_FIRST"]:
            tail.reverse()
        bld.orders[A] = lst + tail
    if has["B"]:
        lst = list(shB)
        if has["A"]:
            i = lst.index(f"{alpha}x{B}")
            lst.insert(i + (1 if kn["POS_AB_ON_B"] else 0), pk["A:B"])
        tail = [pk["pi:B"]]
        if has["P1"]:
            tail.insert(1 if kn["B_PI_FIRST"] else 0, pk["P1:B"])
        bld.orders[B] = lst + tail
    if has["P1"]:
        head = [pk["P1:B"]] if has["B"] else []
        tail = [pk["rho:P1"], pk["alpha:P1"]]
        if not kn["P1_RHO_FIRST"]:
            tail.reverse()
        bld.orders[P1] = head + list(shP1) + tail
    if has["P2"]:
        head = [pk[f"{e}:P2"] for e in kn["P2_POCKET"]]
        bld.orders[P2] = head + list(shP2) + [pk["beta:P2"]]

    if has["A"]:
        rot = bld.rotations["a"]
        i = rot.index(alpha)
        rot.insert(i + 1 if kn["ROT_A_AFTER"] else i, A)
    if has["B"]:
        rot = bld.rotations["b"]
        i = rot.index(beta)
        rot.insert(i + 1 if kn["ROT_B_AFTER"] else i, B)
    if has["P1"]:
        rot = bld.rotations[y]
        i = rot.index(pi)
        rot.insert(i + 1 if kn["ROT_P1_AFTER"] else i, P1)
    ru = [name[s] for s in kn["ROT_U"] if has[s]]
    if ru:
        bld.rotations[u] = ru
    rw = [e for e in (B, P2) if e in bld.edges]
    if rw:
        bld.rotations[w] = rw
    return bld.finish()


def ok(d: Drawing) -> bool:
    rep = verify_thrackle(d)
    if not rep.is_thrackle:
        return False
    return rep.surface.euler_genus == 2 and rep.surface.orientable


STAGE_KNOBS = {
    "A": [
        ("S_A", (False, True)),
        ("ROT_A_AFTER", (False, True)),
        ("BIT_A_RHO", (0, 1)),
        ("BIT_A_PI", (0, 1)),
        ("A_RHO_FIRST", (False, True)),
    ],
    "B": [
        ("S_B", (False, True)),
        ("ROT_B_AFTER", (False, True)),
        ("BIT_B_PI", (0, 1)),
        ("BIT_AB", (0, 1)),
        ("POS_AB_ON_A", (False, True)),
        ("POS_AB_ON_B", (False, True)),
    ],
    "P1": [
        ("S_P1", (False, True)),
        ("ROT_P1_AFTER", (False, True)),
        ("BIT_P1_RHO", (0, 1)),
        ("BIT_P1_ALPHA", (0, 1)),
        ("BIT_B_P1", (0, 1)),
        ("B_PI_FIRST", (False, True)),
        ("P1_RHO_FIRST", (False, True)),
        ("RHO_AP1", (("A", "P1"), ("P1", "A"))),
    ],
    "P2": [
        ("S_P2", (False, True)),
        ("BIT_P2_ALPHA", (0, 1)),
        ("BIT_P2_RHO", (0, 1)),
        ("BIT_P2_PI", (0, 1)),
        ("BIT_P2_BETA", (0, 1)),
        ("P2_POCKET", tuple(itertools.permutations(("alpha", "rho", "pi")))),
        ("RHO_P2_SLOT", (0, 1, 2)),
        ("PI_X_ORDER", (("A", "P2"), ("P2", "A"))),
        ("ALPHA_X_ORDER", (("P1", "P2"), ("P2", "P1"))),
        ("ROT_U", (("A", "P1", "P2"), ("A", "P2", "P1"))),
    ],
}

DEFAULTS = {
    "RHO_ORDER": ("A", "P1", "P2"),
    "PI_X_ORDER": ("A", "P2"),
    "ALPHA_X_ORDER": ("P1", "P2"),
    "ROT_U": ("A", "P1", "P2"),
    "B_PI_FIRST": True,
}


def assemble(kn: dict) -> dict:
    """Expand composite knobs (rho stacking order) into extend() form."""
    out = dict(DEFAULTS)
    out.update(kn)
    if "RHO_AP1" in kn:
        pair = list(kn["RHO_AP1"])
        if "RHO_P2_SLOT" in kn:
            pair.insert(kn["RHO_P2_SLOT"], "P2")
        out["RHO_ORDER"] = tuple(pair)
    return out


def search(base: Drawing, k: int, limit: int | None = None):
    """Yield knob dicts whose staged extensions all verify."""

    def stage(i: int, kn: dict):
        if i == len(STRANDS):
            yield dict(kn)
            return
        names = [nm for nm, _ in STAGE_KNOBS[STRANDS[i]]]
        opts = [op for _, op in STAGE_KNOBS[STRANDS[i]]]
        for combo in itertools.product(*opts):
            kn.update(zip(names, combo))
            try:
                d = extend(base, k, assemble(kn), STRANDS[: i + 1])
            except Exception:
                continue
            if ok(d):
                yield from stage(i + 1, kn)
        for nm in names:
            kn.pop(nm, None)

    count = 0
    for sol in stage(0, {}):
        yield sol
        count += 1
        if limit and count >= limit:
            return


def chain(base: Drawing, kn: dict, upto: int) -> bool:
    d = base
    for k in range(2, upto):
        d = extend(d, k, assemble(kn), STRANDS)
        rep = verify_thrackle(d)
        if not (rep.is_thrackle and rep.surface.euler_genus == 2 and rep.surface.orientable):
            return False
        if d.graph != double_fan(k + 1):
            print(f"  graph mismatch at k={k + 1}", file=sys.stderr)
            return False
    return True


def main() -> None:
    base = _load_data("double_fan_02.thr")
    t0 = time.time()
    tried = 0
    for kn in search(base, 2):
        tried += 1
        if chain(base, kn, 9):
            if chain(base, kn, 16):
                print(f"PINNED after {tried} candidates, {time.time() - t0:.1f}s")
                print(json.dumps({k: list(v) if isinstance(v, tuple) else v
                                  for k, v in assemble(kn).items()}, indent=1))
                return
            print("  chain broke between k=9 and k=16", file=sys.stderr)
    print(f"NO SOLUTION ({tried} full candidates, {time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
