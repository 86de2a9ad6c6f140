"""The coordinatised projective plane of a presemifield.

Points and lines are packed into stable integer codes (used as sort keys,
set members and wire format):

    points:  (infinity) = 0,  (a) = 1 + a,  (x, y) = 1 + q + x*q + y
    lines:   l_infinity = 0,  l_a  = 1 + a,  l_{a,b} = 1 + q + a*q + b

where l_a is the vertical line {(a, y)} ∪ {(∞)} and
l_{a,b} = {(x, x⋆a + b)} ∪ {(a)}.

Collineations are kept in the normal form  g = gamma^k ∘ sigma_c ∘ tau_{a,b}
(translation first), where tau_{a,b}: (x,y) -> (x+a, y+b), the shear
sigma_c: (x,y) -> (x, y + x⋆c), (z) -> (z+c), and gamma is the plane
automorphism induced by the presemifield's autotopism triple (for the
explicit Knuth multiplications: coordinatewise squaring).  Composition and
inversion stay in normal form via the commutation rules

    sigma_c tau_{a,b} = tau_{a, b + a⋆c} sigma_c
    gamma tau_{a,b} gamma^-1 = tau_{F(a), H(b)}
    gamma sigma_c gamma^-1 = sigma_{G(c)}
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

import numpy as np

from .algebra import Presemifield

INFINITY_POINT = 0
LINE_AT_INFINITY = 0


def at_infinity(a: int) -> int:
    return 1 + a


def affine(q: int, x: int, y: int) -> int:
    return 1 + q + x * q + y


def vertical_line(a: int) -> int:
    return 1 + a


def sloped_line(q: int, a: int, b: int) -> int:
    return 1 + q + a * q + b


def decode_point(q: int, code: int):
    """Return ("infinity",), ("at_infinity", a) or ("affine", x, y)."""
    if code == INFINITY_POINT:
        return ("infinity",)
    if code <= q:
        return ("at_infinity", code - 1)
    t = code - 1 - q
    return ("affine", t // q, t % q)


def decode_line(q: int, code: int):
    if code == LINE_AT_INFINITY:
        return ("line_at_infinity",)
    if code <= q:
        return ("vertical", code - 1)
    t = code - 1 - q
    return ("sloped", t // q, t % q)


def num_points(q: int) -> int:
    return q * q + q + 1


def incident(plane: Presemifield, point: int, line: int) -> bool:
    q = plane.q
    p = decode_point(q, point)
    l = decode_line(q, line)
    if l[0] == "line_at_infinity":
        return p[0] != "affine"
    if l[0] == "vertical":
        if p[0] == "infinity":
            return True
        if p[0] == "at_infinity":
            return False
        return p[1] == l[1]
    a, b = l[1], l[2]
    if p[0] == "infinity":
        return False
    if p[0] == "at_infinity":
        return p[1] == a
    return p[2] == plane.star(p[1], a) ^ b


def line_points(plane: Presemifield, line: int) -> list[int]:
    """The q+1 point codes of a line."""
    q = plane.q
    l = decode_line(q, line)
    if l[0] == "line_at_infinity":
        return [INFINITY_POINT] + [at_infinity(a) for a in range(q)]
    if l[0] == "vertical":
        return [INFINITY_POINT] + [affine(q, l[1], y) for y in range(q)]
    a, b = l[1], l[2]
    col = plane.mul_table[:, a]
    return [at_infinity(a)] + [affine(q, x, int(col[x]) ^ b) for x in range(q)]


# --------------------------------------------------------------- collineations


class Collineation(NamedTuple):
    """gamma^k ∘ sigma_c ∘ tau_{a,b}."""

    k: int
    c: int
    a: int
    b: int


IDENTITY = Collineation(0, 0, 0, 0)


def apply_collineation(plane: Presemifield, g: Collineation, point: int) -> int:
    q = plane.q
    p = decode_point(q, point)
    if p[0] == "infinity":
        return INFINITY_POINT
    if p[0] == "at_infinity":
        return at_infinity(int(plane.g_pow[g.k, p[1] ^ g.c]))
    x = p[1] ^ g.a
    y = p[2] ^ g.b ^ plane.star(x, g.c)
    return affine(q, int(plane.f_pow[g.k, x]), int(plane.h_pow[g.k, y]))


def apply_to_line(plane: Presemifield, g: Collineation, line: int) -> int:
    q = plane.q
    l = decode_line(q, line)
    if l[0] == "line_at_infinity":
        return LINE_AT_INFINITY
    if l[0] == "vertical":
        return vertical_line(int(plane.f_pow[g.k, l[1] ^ g.a]))
    c, d = l[1], l[2]
    d2 = d ^ g.b ^ plane.star(g.a, c)
    c2 = c ^ g.c
    return sloped_line(q, int(plane.g_pow[g.k, c2]), int(plane.h_pow[g.k, d2]))


def compose(plane: Presemifield, g: Collineation, h: Collineation) -> Collineation:
    """The collineation acting as g after h (pointwise g(h(P)))."""
    n = plane.n
    l = h.k
    inv = (n - l) % n
    ca = int(plane.f_pow[inv, g.a])
    cb = int(plane.h_pow[inv, g.b])
    cc = int(plane.g_pow[inv, g.c])
    return Collineation(
        (g.k + l) % n,
        cc ^ h.c,
        ca ^ h.a,
        cb ^ plane.star(ca, h.c) ^ h.b,
    )


def invert(plane: Presemifield, g: Collineation) -> Collineation:
    n = plane.n
    k = g.k
    b1 = g.b ^ plane.star(g.a, g.c)
    return Collineation(
        (n - k) % n,
        int(plane.g_pow[k, g.c]),
        int(plane.f_pow[k, g.a]),
        int(plane.h_pow[k, b1]),
    )


def enumerate_aut(plane: Presemifield) -> Iterator[Collineation]:
    """All q^3 * n collineations of the plane, each exactly once."""
    q, n = plane.q, plane.n
    for k in range(n):
        for c in range(q):
            for a in range(q):
                for b in range(q):
                    yield Collineation(k, c, a, b)


# ------------------------------------------------------------------- secants


def secants(plane: Presemifield, points) -> set[int]:
    """All lines meeting the point set in exactly two points."""
    q = plane.q
    codes = set(points)
    inf = 1 if INFINITY_POINT in codes else 0
    ai = [p - 1 for p in codes if 0 < p <= q]
    xs = np.array([(p - 1 - q) // q for p in codes if p > q], dtype=np.int64)
    ys = np.array([(p - 1 - q) % q for p in codes if p > q], dtype=np.int64)
    out = set()
    if inf + len(ai) == 2:
        out.add(LINE_AT_INFINITY)
    vert = np.bincount(xs, minlength=q) + inf
    for a in np.nonzero(vert == 2)[0]:
        out.add(vertical_line(int(a)))
    ai_set = set(ai)
    for a in range(q):
        b_vals = plane.mul_table[xs, a] ^ ys
        cnt = np.bincount(b_vals, minlength=q)
        if a in ai_set:
            cnt = cnt + 1
        for b in np.nonzero(cnt == 2)[0]:
            out.add(sloped_line(q, a, int(b)))
    return out
