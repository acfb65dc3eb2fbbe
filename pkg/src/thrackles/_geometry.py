"""Exact plane geometry over the rationals.

Catalog drawings are produced from genuine straight-line pictures: points
live on the unit circle (rational points via the half-angle substitution),
and every crossing, crossing order, crossing chart bit, and vertex rotation
is decided by exact sign tests on Fractions. Floating point enters only
when choosing the near-regular circle positions; all comparisons that shape
the combinatorics are exact, so results are deterministic.

Orientation convention: coordinates are standard (x right, y up) and
rotations are reported clockwise, i.e. the reverse of increasing angle.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cmp_to_key

from .errors import InternalInvariantError

Vec = tuple[Fraction, Fraction]


def vsub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def vneg(a: Vec) -> Vec:
    return (-a[0], -a[1])


def vscale(a: Vec, s: Fraction) -> Vec:
    return (a[0] * s, a[1] * s)


def cross(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def circle_point(t: Fraction) -> Vec:
    """Rational point on the unit circle at angle 2*atan(t)."""
    den = 1 + t * t
    return (Fraction(1 - t * t, 1) / den, Fraction(2 * t, 1) / den)


def circle_points(k: int, denominator: int = 10**13) -> list[Vec]:
    """k near-regular rational points on the unit circle, counterclockwise.

    Positions sit at angles -pi + pi(2i+1)/k, perturbed by at most about
    1/denominator, far below any separation the constructions rely on.
    """
    ts: list[Fraction] = []
    for i in range(k):
        theta = -math.pi + math.pi * (2 * i + 1) / k
        base = Fraction(math.tan(theta / 2)).limit_denominator(denominator)
        # an asymmetric nudge: the raw angles are mirror-symmetric, which
        # makes chord crossings land exactly on vertex axes
        ts.append(base + Fraction((i + 1) * (i + 1), 10**9))
    for a, b in zip(ts, ts[1:]):
        if not a < b:
            raise InternalInvariantError("circle positions are not strictly increasing")
    return [circle_point(t) for t in ts]


def segment_crossing(
    a1: Vec, a2: Vec, b1: Vec, b2: Vec
) -> tuple[Fraction, Fraction] | None:
    """Interior crossing parameters (t, u) of segments a1a2 and b1b2.

    Returns None when the open segments are disjoint; raises when they
    touch degenerately (endpoint contact or collinear overlap), which the
    constructions must never produce.
    """
    d1 = vsub(a2, a1)
    d2 = vsub(b2, b1)
    den = cross(d1, d2)
    w = vsub(b1, a1)
    if den == 0:
        if cross(d1, w) == 0:
            # shared supporting line: any contact would be degenerate
            s0 = dot(vsub(b1, a1), d1)
            s1 = dot(vsub(b2, a1), d1)
            lo, hi = min(s0, s1), max(s0, s1)
            if hi >= 0 and lo <= dot(d1, d1):
                raise InternalInvariantError("collinear segments touch")
        return None
    t = cross(w, d2) / den
    u = cross(w, d1) / den
    inside_t = 0 < t < 1
    inside_u = 0 < u < 1
    if inside_t and inside_u:
        return (t, u)
    if 0 <= t <= 1 and 0 <= u <= 1:
        raise InternalInvariantError(
            "segments touch at an endpoint; the picture is degenerate"
        )
    return None


def is_left(a1: Vec, a2: Vec, p: Vec) -> bool:
    """Whether p lies strictly left of the directed line a1 -> a2."""
    s = cross(vsub(a2, a1), vsub(p, a1))
    if s == 0:
        raise InternalInvariantError("point lies on the line; the picture is degenerate")
    return s > 0


def _half(r: Vec) -> int:
    if r == (0, 0):
        raise InternalInvariantError("zero direction vector")
    return 0 if (r[1] > 0 or (r[1] == 0 and r[0] > 0)) else 1


def counterclockwise_order(rays: list[Vec]) -> list[int]:
    """Indices of ``rays`` sorted by increasing angle from direction (1,0).

    All directions must be pairwise distinct.
    """

    def cmp(i: int, j: int) -> int:
        hi, hj = _half(rays[i]), _half(rays[j])
        if hi != hj:
            return -1 if hi < hj else 1
        c = cross(rays[i], rays[j])
        if c == 0:
            raise InternalInvariantError("two rays share a direction")
        return -1 if c > 0 else 1

    return sorted(range(len(rays)), key=cmp_to_key(cmp))


def clockwise_order(rays: list[Vec]) -> list[int]:
    """Indices of ``rays`` in clockwise cyclic order."""
    return list(reversed(counterclockwise_order(rays)))


def sweep_order_from(start: Vec, rays: list[Vec]) -> list[int]:
    """Indices of ``rays`` by counterclockwise angular distance from ``start``.

    No ray may share a direction with ``start`` or with another ray.
    """

    def key_class(r: Vec) -> int:
        c = cross(start, r)
        if c > 0:
            return 0
        if c < 0:
            return 2
        if dot(start, r) > 0:
            raise InternalInvariantError("a ray shares the sweep start direction")
        return 1

    def cmp(i: int, j: int) -> int:
        ci, cj = key_class(rays[i]), key_class(rays[j])
        if ci != cj:
            return -1 if ci < cj else 1
        c = cross(rays[i], rays[j])
        if c == 0:
            raise InternalInvariantError("two rays share a direction")
        return -1 if c > 0 else 1

    return sorted(range(len(rays)), key=cmp_to_key(cmp))
