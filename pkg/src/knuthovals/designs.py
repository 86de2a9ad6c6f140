"""Designs, difference sets and bent functions from hyperovals.

For a normalised type-(a) hyperoval O the translation/shear group maps O
to q^2 hyperovals, any two meeting in exactly two points.  The lines not
through (∞), indexed a*q + b for l_{a,b}, form the point set of a symmetric
(q^2, q^2/2 + q/2, q^2/4 + q/2) design whose blocks are the secant sets of
the orbit members.  Two sharply transitive abelian subgroups give
difference sets with the same parameters:

    G1 = {tau_{0,b} sigma_c}  (elementary abelian, C_2^{2n})
    G2 = {tau_{a,b} sigma_a}  (abelian of exponent 4, C_4^n)

The indicator of the G1 difference set on C_2^{2n} is a bent function; its
Walsh spectrum is computed exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import Presemifield
from .ovals import Hyperoval, NotTypeA, NotTypeB
from .plane import INFINITY_POINT, at_infinity, affine, decode_point


class DesignError(ValueError):
    pass


class ParameterMismatch(DesignError):
    """Computed design parameters differ from the expected ones."""


class NotADifferenceSet(DesignError):
    """The difference-set verification failed."""


class InfinityNotInOval(DesignError):
    """The bent-function construction needs (∞) in the hyperoval."""


# ------------------------------------------------------------ graph helpers


def _graph_type_a(plane: Presemifield, oval: Hyperoval) -> np.ndarray:
    """Value table of f for a normalised type-(a) hyperoval, else NotTypeA."""
    q = plane.q
    if not {INFINITY_POINT, at_infinity(0)} <= oval.points:
        raise NotTypeA("expected carrier {(0), (∞)}")
    graph = {}
    for p in oval.points:
        kind = decode_point(q, p)
        if kind[0] == "affine":
            graph[kind[1]] = kind[2]
    if len(graph) != q or graph.get(0) != 0:
        raise NotTypeA("affine part is not a graph through (0,0)")
    return np.array([graph[x] for x in range(q)], dtype=np.int32)


def _graph_type_b(plane: Presemifield, oval: Hyperoval):
    """(value table, alpha) for a normalised type-(b) hyperoval."""
    q = plane.q
    carrier = sorted(p for p in oval.points if 0 < p <= q)
    if INFINITY_POINT in oval.points or len(carrier) != 2 or carrier[0] != at_infinity(0):
        raise NotTypeB("expected carrier {(0), (alpha)} with alpha != ∞")
    alpha = carrier[1] - 1
    graph = {}
    for p in oval.points:
        kind = decode_point(q, p)
        if kind[0] == "affine":
            graph[kind[2]] = kind[1]
    if len(graph) != q or graph.get(0) != 0:
        raise NotTypeB("affine part is not a graph through (0,0)")
    return np.array([graph[y] for y in range(q)], dtype=np.int32), alpha


# ------------------------------------------------------------------- orbits


def sigma_orbit(plane: Presemifield, oval: Hyperoval) -> list[Hyperoval]:
    """The q^2 images {(x, f(x) + x⋆c + d)} ∪ {(c), (∞)} of a normalised
    type-(a) hyperoval under the translation/shear group."""
    q = plane.q
    fvals = _graph_type_a(plane, oval)
    x = np.arange(q)
    out = []
    for c in range(q):
        sheared = fvals ^ plane.mul_table[x, c]
        for d in range(q):
            pts = [INFINITY_POINT, at_infinity(c)]
            yv = sheared ^ d
            pts += [affine(q, xi, int(yv[xi])) for xi in range(q)]
            out.append(Hyperoval(plane, frozenset(pts)))
    return out


def orbit_intersections(plane: Presemifield, oval: Hyperoval) -> list[int]:
    """Sizes |O ∩ O'| over the q^2 - 1 non-identity orbit images of a
    normalised type-(b) hyperoval.  Values lie in {0, 2, 4, 6}; a 6 occurs
    iff some v has f(v) ⋆ alpha equal to the kernel element of f."""
    q = plane.q
    fvals, alpha = _graph_type_b(plane, oval)
    y = np.arange(q)
    base = oval.points
    seen = set()
    out = []
    for c in range(q):
        for e in range(q):
            gx = fvals ^ e
            gy = y ^ plane.mul_table[gx, c]
            pts = frozenset(
                [at_infinity(c), at_infinity(alpha ^ c)]
                + [affine(q, int(gx[i]), int(gy[i])) for i in range(q)]
            )
            if pts in seen:
                continue
            seen.add(pts)
            if pts != base:
                out.append(len(base & pts))
    if len(seen) != q * q:
        raise NotTypeB(f"orbit has {len(seen)} members, expected {q * q}")
    return out


def six_condition(plane: Presemifield, oval: Hyperoval) -> bool:
    """Whether some v satisfies f(v) ⋆ alpha = theta (the nonzero kernel
    element of f); equivalent to a 6 appearing among orbit intersections."""
    fvals, alpha = _graph_type_b(plane, oval)
    theta = [int(t) for t in np.nonzero(fvals == 0)[0] if t][0]
    return bool((plane.mul_table[fvals, alpha] == theta).any())


# ------------------------------------------------------------------- designs


@dataclass(frozen=True)
class Design:
    """Symmetric incidence structure; block bitsets over points 0..v-1."""

    v: int
    k: int
    lam: int
    blocks: tuple[int, ...]
    label: str = ""

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.v, self.k, self.lam)


def secant_line_block(plane: Presemifield, points) -> int:
    """Bitset over a*q+b of the sloped secant lines of a point set."""
    q = plane.q
    ai = {p - 1 for p in points if 0 < p <= q}
    xs = np.array([(p - 1 - q) // q for p in points if p > q], dtype=np.int64)
    ys = np.array([(p - 1 - q) % q for p in points if p > q], dtype=np.int64)
    block = 0
    for a in range(q):
        cnt = np.bincount(plane.mul_table[xs, a] ^ ys, minlength=q)
        if a in ai:
            cnt = cnt + 1
        for b in np.nonzero(cnt == 2)[0]:
            block |= 1 << (a * q + int(b))
    return block


def _check_symmetric(blocks, v, k, lam, label):
    for blk in blocks:
        if blk.bit_count() != k:
            raise ParameterMismatch(f"{label}: block size {blk.bit_count()} != {k}")
    for i, bi in enumerate(blocks):
        for bj in blocks[i + 1:]:
            if (bi & bj).bit_count() != lam:
                raise ParameterMismatch(f"{label}: pair intersection != {lam}")
    # replication r = k for a symmetric design
    cols = np.zeros(v, dtype=np.int64)
    nbytes = (v + 7) // 8
    for blk in blocks:
        arr = np.frombuffer(blk.to_bytes(nbytes, "little"), dtype=np.uint8)
        cols += np.unpackbits(arr, bitorder="little")[:v]
    if not (cols == k).all():
        raise ParameterMismatch(f"{label}: replication != {k}")


def build_design(plane: Presemifield, oval: Hyperoval) -> Design:
    """The symmetric (q^2, q^2/2 + q/2, q^2/4 + q/2) design on lines not
    through (∞), blocks = secant sets of the orbit members.  Parameters are
    verified exhaustively; a violation raises ParameterMismatch."""
    q = plane.q
    orbit = sigma_orbit(plane, oval)
    blocks = tuple(secant_line_block(plane, member.points) for member in orbit)
    v = q * q
    k = q * q // 2 + q // 2
    lam = q * q // 4 + q // 2
    _check_symmetric(blocks, v, k, lam, "block design")
    return Design(v, k, lam, blocks, label=f"secant-design({plane.label})")


class GroupElement(NamedTuple):
    """Element of G1 (payload (b, c): tau_{0,b} sigma_c) or of G2
    (payload (a, b): tau_{a,b} sigma_a)."""

    group: str
    u: int
    v: int


def _d1_pairs(plane: Presemifield, block: int) -> list[tuple[int, int]]:
    q = plane.q
    return [(b, c) for c in range(q) for b in range(q) if (block >> (c * q + b)) & 1]


def difference_set(plane: Presemifield, oval: Hyperoval, which: str) -> set[GroupElement]:
    """The q^2/2 + q/2 group elements mapping l_{0,0} into the secant block
    of O.  Verified by full pair enumeration: every non-identity element
    must occur exactly q^2/4 + q/2 times as d1 * d2^-1, and the complement
    must be a (q^2, q^2/2 - q/2, q^2/4 - q/2) difference set."""
    q, n = plane.q, plane.n
    lam = q * q // 4 + q // 2
    block = secant_line_block(plane, oval.points)
    if which == "G1":
        # tau_{0,b} sigma_c maps l_{0,0} to l_{c,b}
        members = _d1_pairs(plane, block)
        us = np.array([m[0] for m in members])
        vs = np.array([m[1] for m in members])

        def diff_codes(i):
            return ((us ^ us[i]).astype(np.int64) << n) | (vs ^ vs[i])

    elif which == "G2":
        # tau_{a,b} sigma_a maps l_{0,0} to l_{a, b + a⋆a}
        aa = np.array([plane.star(a, a) for a in range(q)])
        members = [(a, b) for a in range(q) for b in range(q)
                   if (block >> (a * q + (b ^ int(aa[a])))) & 1]
        us = np.array([m[0] for m in members])
        vs = np.array([m[1] for m in members])
        mul = plane.mul_table

        def diff_codes(i):
            a2, b2 = int(us[i]), int(vs[i])
            ga = us ^ a2
            gb = vs ^ b2 ^ int(aa[a2]) ^ mul[a2, us]
            return (ga.astype(np.int64) << n) | gb

    else:
        raise ValueError(f"which must be 'G1' or 'G2', got {which!r}")
    if len(members) != q * q // 2 + q // 2:
        raise NotADifferenceSet(f"{which}: |D| = {len(members)}")
    counts = np.zeros(q * q, dtype=np.int64)
    for i in range(len(members)):
        counts += np.bincount(diff_codes(i), minlength=q * q)
    if counts[0] != len(members) or not (counts[1:] == lam).all():
        raise NotADifferenceSet(f"{which}: difference counts are not constant {lam}")
    # complement: Hadamard parameters (q^2, q^2/2 - q/2, q^2/4 - q/2)
    comp_lam = q * q // 4 - q // 2
    if which == "G1":
        comp = [(b, c) for c in range(q) for b in range(q)
                if not ((block >> (c * q + b)) & 1)]
        ub = np.array([m[0] for m in comp])
        vb = np.array([m[1] for m in comp])
        counts = np.zeros(q * q, dtype=np.int64)
        for i in range(len(comp)):
            counts += np.bincount(((ub ^ ub[i]).astype(np.int64) << n) | (vb ^ vb[i]),
                                  minlength=q * q)
    else:
        aa = np.array([plane.star(a, a) for a in range(q)])
        comp = [(a, b) for a in range(q) for b in range(q)
                if not ((block >> (a * q + (b ^ int(aa[a])))) & 1)]
        ub = np.array([m[0] for m in comp])
        vb = np.array([m[1] for m in comp])
        mul = plane.mul_table
        counts = np.zeros(q * q, dtype=np.int64)
        for i in range(len(comp)):
            a2, b2 = int(ub[i]), int(vb[i])
            counts += np.bincount(
                ((ub ^ a2).astype(np.int64) << n) | (vb ^ b2 ^ int(aa[a2]) ^ mul[a2, ub]),
                minlength=q * q)
    if counts[0] != len(comp) or not (counts[1:] == comp_lam).all():
        raise NotADifferenceSet(f"{which}: complement is not a ({q*q}, {len(comp)}, {comp_lam}) difference set")
    return {GroupElement(which, int(u), int(v)) for u, v in members}


# --------------------------------------------------------------- group stats


@dataclass(frozen=True)
class OrderStats:
    group: str
    histogram: dict[int, int]
    abelian: bool
    exponent: int
    certified: str | None  # "C2^2n" | "C4^n" | None


def group_order_stats(plane: Presemifield, which: str) -> OrderStats:
    """Element-order histogram plus the abelian/exponent certificate that
    pins the isomorphism type (C_2^{2n} for G1, C_4^n for G2)."""
    q, n = plane.q, plane.n
    mul = plane.mul_table
    u = np.arange(q)
    if which == "G1":
        # all elements are involutions: tau and sigma commute at a=0
        hist = {1: 1, 2: q * q - 1}
        abelian = True
        exponent = 2
        certified = f"C2^{2 * n}" if q * q == 1 << (2 * n) else None
        return OrderStats(which, hist, abelian, exponent, certified)
    if which != "G2":
        raise ValueError(f"which must be 'G1' or 'G2', got {which!r}")
    # g_{a,b}^2 = tau_{0, a⋆a}; abelian iff ⋆ restricted to squares commutes
    aa = mul[u, u]
    order4 = int(np.count_nonzero(aa != 0)) * q
    hist = {1: 1, 2: q - 1 + (q * q - q) - order4, 4: order4}
    hist = {k: v for k, v in hist.items() if v}
    abelian = bool(np.array_equal(mul, mul.T))
    exponent = 4 if order4 else 2
    le2 = hist.get(1, 0) + hist.get(2, 0)
    certified = None
    if abelian and exponent == 4 and le2 == q and q * q == 1 << (2 * n):
        # abelian, order 2^2n, exponent 4, exactly 2^n elements of order <= 2
        certified = f"C4^{n}"
    return OrderStats(which, hist, abelian, exponent, certified)


# --------------------------------------------------------------------- bent


@dataclass(frozen=True)
class BentFunction:
    indicator: np.ndarray  # length 2^(2n), index (b << n) | c
    spectrum: dict[int, int]
    is_bent: bool


def walsh_spectrum(signs: np.ndarray) -> np.ndarray:
    """In-place fast Walsh-Hadamard transform of a +-1 vector."""
    s = signs.astype(np.int64).copy()
    h = 1
    while h < len(s):
        for i in range(0, len(s), h * 2):
            x = s[i:i + h].copy()
            y = s[i + h:i + 2 * h].copy()
            s[i:i + h] = x + y
            s[i + h:i + 2 * h] = x - y
        h *= 2
    return s


def bent_from_hyperoval(plane: Presemifield, oval: Hyperoval) -> BentFunction:
    """Indicator of the G1 difference set of a hyperoval through (∞), with
    its full Walsh spectrum; bent iff every coefficient is +-2^n."""
    if INFINITY_POINT not in oval.points:
        raise InfinityNotInOval("hyperoval must contain (∞)")
    q, n = plane.q, plane.n
    block = secant_line_block(plane, oval.points)
    indicator = np.zeros(q * q, dtype=np.uint8)
    for b, c in _d1_pairs(plane, block):
        indicator[(b << n) | c] = 1
    spec = walsh_spectrum(1 - 2 * indicator.astype(np.int64))
    spectrum = dict(sorted(Counter(int(x) for x in spec).items()))
    is_bent = set(spectrum) <= {-q, q}
    return BentFunction(indicator, spectrum, is_bent)


def development_design(plane: Presemifield, oval: Hyperoval) -> Design:
    """The development of the G1 difference set: points are the group
    elements (index (b << n) | c), blocks its q^2 translates.  This is the
    design carried by the bent function's support."""
    if INFINITY_POINT not in oval.points:
        raise InfinityNotInOval("hyperoval must contain (∞)")
    q, n = plane.q, plane.n
    v = q * q
    bent = bent_from_hyperoval(plane, oval)
    supp = bent.indicator
    idx = np.arange(v)
    blocks = []
    for h in range(v):
        arr = supp[idx ^ h]
        blocks.append(int.from_bytes(np.packbits(arr, bitorder="little").tobytes(),
                                     "little"))
    k = q * q // 2 + q // 2
    lam = q * q // 4 + q // 2
    _check_symmetric(tuple(blocks), v, k, lam, "development design")
    return Design(v, k, lam, tuple(blocks), label=f"development-design({plane.label})")


# ---------------------------------------------------------------- invariants


@dataclass(frozen=True)
class DesignInvariants:
    rank2: int
    degree_checks: dict


def gf2_rank_bitsets(rows) -> int:
    """Rank over GF(2) of rows given as int bitsets."""
    pivots: dict[int, int] = {}
    rank = 0
    for vec in rows:
        while vec:
            low = vec & -vec
            col = low.bit_length() - 1
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = vec
                rank += 1
                break
            vec ^= piv
    return rank


def design_invariants(design: Design) -> DesignInvariants:
    rank2 = gf2_rank_bitsets(design.blocks)
    v, k, lam = design.params
    sizes_ok = all(b.bit_count() == k for b in design.blocks)
    pair_ok = all((design.blocks[i] & design.blocks[j]).bit_count() == lam
                  for i in range(v) for j in range(i + 1, v))
    cols = np.zeros(v, dtype=np.int64)
    for blk in design.blocks:
        arr = np.frombuffer(blk.to_bytes((v + 7) // 8, "little"), dtype=np.uint8)
        cols += np.unpackbits(arr, bitorder="little")[:v]
    repl_ok = bool((cols == k).all())
    return DesignInvariants(rank2, {
        "symmetric": len(design.blocks) == v,
        "block_size": sizes_ok,
        "pair_intersection": pair_ok,
        "replication": repl_ok,
    })


class DistinguishResult(NamedTuple):
    outcome: str  # "distinguished" | "inconclusive"
    witness: str | None
    detail: dict


def triple_intersection_sample(design: Design, samples: int = 10_000,
                               seed: int = 0) -> Counter:
    """Sampled distribution of |B_i ∩ B_j ∩ B_k| over random block triples."""
    rng = np.random.default_rng(seed)
    v = len(design.blocks)
    triples = rng.integers(0, v, size=(samples, 3))
    bad = ((triples[:, 0] == triples[:, 1]) | (triples[:, 0] == triples[:, 2])
           | (triples[:, 1] == triples[:, 2]))
    while bad.any():
        triples[bad] = rng.integers(0, v, size=(int(bad.sum()), 3))
        bad = ((triples[:, 0] == triples[:, 1]) | (triples[:, 0] == triples[:, 2])
               | (triples[:, 1] == triples[:, 2]))
    hist: Counter = Counter()
    blocks = design.blocks
    for i, j, k in triples:
        hist[(blocks[i] & blocks[j] & blocks[k]).bit_count()] += 1
    return hist


def distinguish_designs(d1: Design, d2: Design, samples: int = 10_000,
                        seed: int = 0) -> DistinguishResult:
    """Compare isomorphism invariants.  Distinguished carries the witness
    invariant; Inconclusive never claims isomorphism.  The triple-
    intersection comparison is a sampled distribution with a total-
    variation threshold, so permuted copies stay Inconclusive."""
    if d1.params != d2.params:
        raise ParameterMismatch(f"{d1.params} != {d2.params}")
    r1 = gf2_rank_bitsets(d1.blocks)
    r2 = gf2_rank_bitsets(d2.blocks)
    if r1 != r2:
        return DistinguishResult("distinguished", "rank2", {"rank2": (r1, r2)})
    h1 = triple_intersection_sample(d1, samples, seed)
    h2 = triple_intersection_sample(d2, samples, seed)
    tv = sum(abs(h1.get(x, 0) - h2.get(x, 0)) for x in set(h1) | set(h2))
    tv /= 2 * samples
    if tv > 0.1:
        return DistinguishResult("distinguished", "triple_intersections",
                                 {"rank2": (r1, r2), "tv_distance": tv})
    return DistinguishResult("inconclusive", None,
                             {"rank2": (r1, r2), "tv_distance": tv})


def permute_design(design: Design, point_perm, block_perm) -> Design:
    """Relabel points and reorder blocks (an explicit isomorphic copy)."""
    v = design.v
    perm = np.asarray(point_perm, dtype=np.int64)
    nbytes = (v + 7) // 8
    blocks = []
    for bi in block_perm:
        blk = design.blocks[int(bi)]
        bits = np.unpackbits(
            np.frombuffer(blk.to_bytes(nbytes, "little"), dtype=np.uint8),
            bitorder="little")[:v]
        out = np.zeros(v, dtype=np.uint8)
        out[perm] = bits
        blocks.append(int.from_bytes(
            np.packbits(out, bitorder="little").tobytes(), "little"))
    return Design(design.v, design.k, design.lam, tuple(blocks),
                  label=design.label + "+permuted")
