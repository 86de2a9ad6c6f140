"""Hyperovals and line hyperovals: constructions and verification.

A hyperoval is a set of q+2 points meeting every line in 0 or 2 points; a
line hyperoval is the dual object (q+2 lines, every point on 0 or 2 of
them).  Verification is a direct incidence count, organised per line slope
so the whole check costs O(q^2) rather than O(q^3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (Presemifield, NonCommutative, adjoint, knuth_kn,
                      knuth_kn_td, linpoly_values)
from .gf2n import FieldContext
from .plane import (INFINITY_POINT, LINE_AT_INFINITY, affine, at_infinity,
                    decode_line, decode_point, sloped_line, vertical_line)


class OvalError(ValueError):
    pass


class WrongSize(OvalError):
    """The candidate set does not have q+2 members."""


class BadShift(OvalError):
    """Frobenius shift d with gcd(d, n) != 1."""


class NotTypeA(OvalError):
    """The function is not an additive permutation defining a hyperoval."""


class NotTypeB(OvalError):
    """The (function, point) pair does not define a type-(b) hyperoval."""


@dataclass(frozen=True)
class Hyperoval:
    plane: Presemifield
    points: frozenset[int]

    def sorted_points(self) -> tuple[int, ...]:
        return tuple(sorted(self.points))


@dataclass(frozen=True)
class LineHyperoval:
    plane: Presemifield
    lines: frozenset[int]

    def sorted_lines(self) -> tuple[int, ...]:
        return tuple(sorted(self.lines))


# ----------------------------------------------------------------- builders


def graph_hyperoval_a(plane: Presemifield, fvals) -> Hyperoval:
    """{(x, f(x))} ∪ {(0), (∞)} from a value table."""
    q = plane.q
    pts = [INFINITY_POINT, at_infinity(0)]
    pts += [affine(q, x, int(fvals[x])) for x in range(q)]
    return Hyperoval(plane, frozenset(pts))


def graph_hyperoval_b(plane: Presemifield, fvals, alpha: int) -> Hyperoval:
    """{(f(y), y)} ∪ {(0), (alpha)} from a value table."""
    q = plane.q
    pts = [at_infinity(0), at_infinity(alpha)]
    pts += [affine(q, int(fvals[y]), y) for y in range(q)]
    return Hyperoval(plane, frozenset(pts))


def standard_hyperoval(plane: Presemifield) -> Hyperoval:
    """{(x, x⋆x)} ∪ {(0), (∞)} in a commutative presemifield plane."""
    if not plane.commutative():
        raise NonCommutative(f"{plane.label} is not commutative")
    q = plane.q
    x = np.arange(q)
    return graph_hyperoval_a(plane, plane.mul_table[x, x])


def og_hyperoval(ctx: FieldContext) -> Hyperoval:
    """{(y^2 + y, y)} ∪ {(0), (1)} in the K_n plane (type (b), alpha = 1)."""
    plane = knuth_kn(ctx)
    y = np.arange(ctx.q)
    return graph_hyperoval_b(plane, ctx.sq[y] ^ y, 1)


def od_hyperoval(ctx: FieldContext, d: int) -> Hyperoval:
    """{(y^(2^d) + y, y)} ∪ {(0), (1)} in the symplectic plane."""
    if not 1 <= d < ctx.n or math.gcd(d, ctx.n) != 1:
        raise BadShift(f"need 1 <= d < n with gcd(d, n) = 1, got d={d}, n={ctx.n}")
    plane = knuth_kn_td(ctx)
    y = np.arange(ctx.q)
    return graph_hyperoval_b(plane, ctx.frob_table[d, y] ^ y, 1)


# ------------------------------------------------------------- verification


def _point_arrays(q: int, points):
    inf = 0
    ai = []
    xs = []
    ys = []
    for p in points:
        kind = decode_point(q, p)
        if kind[0] == "infinity":
            inf += 1
        elif kind[0] == "at_infinity":
            ai.append(kind[1])
        else:
            xs.append(kind[1])
            ys.append(kind[2])
    return inf, ai, np.array(xs, dtype=np.int64), np.array(ys, dtype=np.int64)


def _is_point_hyperoval(plane: Presemifield, points) -> bool:
    q = plane.q
    inf, ai, xs, ys = _point_arrays(q, points)
    ok = (0, 2)
    if inf + len(ai) not in ok:
        return False
    vert = np.bincount(xs, minlength=q) + inf
    if not np.isin(vert, ok).all():
        return False
    ai_set = set(ai)
    for a in range(q):
        cnt = np.bincount(plane.mul_table[xs, a] ^ ys, minlength=q)
        if a in ai_set:
            cnt = cnt + 1
        if not np.isin(cnt, ok).all():
            return False
    return True


def _is_line_hyperoval(plane: Presemifield, lines) -> bool:
    q = plane.q
    n_inf = 0
    verts = []
    sloped = []
    for l in lines:
        kind = decode_line(q, l)
        if kind[0] == "line_at_infinity":
            n_inf += 1
        elif kind[0] == "vertical":
            verts.append(kind[1])
        else:
            sloped.append((kind[1], kind[2]))
    ok = (0, 2)
    # (∞) lies on l_infinity and on every vertical member
    if n_inf + len(verts) not in ok:
        return False
    # (m) lies on l_infinity and on sloped members with slope m
    slopes = np.array([a for a, _ in sloped], dtype=np.int64)
    cnt = np.bincount(slopes, minlength=q) + n_inf
    if not np.isin(cnt, ok).all():
        return False
    # affine (x, y): vertical members with a = x, sloped with y = x⋆a + b
    counts = np.zeros((q, q), dtype=np.int64)
    for a in verts:
        counts[a, :] += 1
    x = np.arange(q)
    for a, b in sloped:
        counts[x, plane.mul_table[x, a] ^ b] += 1
    return bool(np.isin(counts, ok).all())


def is_hyperoval(plane: Presemifield, obj) -> bool:
    """Exhaustive 0-or-2 incidence check for a Hyperoval or LineHyperoval."""
    q = plane.q
    if isinstance(obj, LineHyperoval):
        if len(obj.lines) != q + 2:
            raise WrongSize(f"{len(obj.lines)} lines, expected {q + 2}")
        return _is_line_hyperoval(plane, obj.lines)
    points = obj.points if isinstance(obj, Hyperoval) else frozenset(obj)
    if len(points) != q + 2:
        raise WrongSize(f"{len(points)} points, expected {q + 2}")
    return _is_point_hyperoval(plane, points)


# ------------------------------------------------------------ line hyperovals


def dualize_type_a(ctx: FieldContext, coeffs) -> LineHyperoval:
    """Line hyperoval {l_{m, adj(L)(m)}} ∪ {l_0, l_∞} in the symplectic plane,
    from a type-(a) function L in the K_n plane.
    """
    from .search import check_type_a

    kn = knuth_kn(ctx)
    if not check_type_a(kn, coeffs):
        raise NotTypeA("function does not define a type-(a) hyperoval")
    td = knuth_kn_td(ctx)
    q = ctx.q
    adj = linpoly_values(ctx, adjoint(ctx, coeffs))
    lines = [vertical_line(0), LINE_AT_INFINITY]
    lines += [sloped_line(q, m, int(adj[m])) for m in range(q)]
    return LineHyperoval(td, frozenset(lines))


def dualize_type_b(ctx: FieldContext, coeffs, alpha: int | None = None) -> LineHyperoval:
    """Line hyperoval {l_{adj(L)(m), m}} ∪ {l_0, l_alpha} in the symplectic
    plane, from a type-(b) pair (L, alpha) in the K_n plane.
    """
    from .search import check_type_b

    kn = knuth_kn(ctx)
    found = check_type_b(kn, coeffs)
    if found is None or (alpha is not None and alpha != found):
        raise NotTypeB("pair does not define a type-(b) hyperoval")
    td = knuth_kn_td(ctx)
    q = ctx.q
    adj = linpoly_values(ctx, adjoint(ctx, coeffs))
    lines = [vertical_line(0), vertical_line(found)]
    lines += [sloped_line(q, int(adj[m]), m) for m in range(q)]
    return LineHyperoval(td, frozenset(lines))
