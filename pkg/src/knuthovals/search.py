"""Membership tests, canonical forms and exhaustive classification of
translation hyperovals.

Normal forms (up to the plane's automorphism group) are:

  type (a)  {(x, f(x))} ∪ {(0), (∞)}   f an additive permutation, f(0)=0
  type (b)  {(f(y), y)} ∪ {(0), (α)}   f two-to-one additive, f(0)=0, α != 0

``canonical_form`` minimises the sorted point-code sequence over the whole
automorphism group; equal digests certify equivalence.  The orbit is
enumerated as translation-orbit x shears x autotopism powers, which for a
translation hyperoval costs n*q^2 images instead of q^3*n group elements.

The exhaustive searches filter the coefficient domain through the compiled
or numpy scan kernels and deduplicate survivors by canonical digest (for
n <= 7) or by the normalised-class digest (larger n, where full orbit
minimisation is out of reach).
"""

from __future__ import annotations

from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import _kernels
from .algebra import (AlgebraError, Presemifield, coeffs_from_values,
                      linpoly_values, plane_from_spec)
from .ovals import Hyperoval, graph_hyperoval_a, graph_hyperoval_b
from .plane import (INFINITY_POINT, Collineation, affine, apply_collineation,
                    at_infinity, compose, decode_point)


class SearchError(ValueError):
    pass


class InfeasibleDomain(SearchError):
    """The requested coefficient domain is too large for this degree."""


class NotTranslation(SearchError):
    """The hyperoval is not a translation hyperoval."""


class CanonicalizationTooLarge(SearchError):
    """Full orbit minimisation is not feasible at this degree."""


# ------------------------------------------------------------- membership


def _type_a_values_ok(plane: Presemifield, values: np.ndarray) -> bool:
    q = plane.q
    if values[0] != 0 or np.count_nonzero(values == 0) != 1:
        return False
    mul = plane.mul_table
    x = np.arange(q)
    for a in range(1, q):
        if np.count_nonzero((values ^ mul[x, a]) == 0) != 2:
            return False
    return True


def _type_b_values_alpha(plane: Presemifield, values: np.ndarray) -> int | None:
    q = plane.q
    if values[0] != 0 or np.count_nonzero(values == 0) != 2:
        return None
    mul = plane.mul_table
    y = np.arange(q)
    alpha = None
    for a in range(1, q):
        ker = np.count_nonzero((mul[values, a] ^ y) == 0)
        if ker == 1:
            if alpha is not None:
                return None
            alpha = a
        elif ker != 2:
            return None
    return alpha


def check_type_a(plane: Presemifield, coeffs) -> bool:
    """True iff {(x, L(x))} ∪ {(0), (∞)} is a hyperoval: L is an additive
    permutation and x -> L(x) + x⋆a has kernel size 2 for every a != 0."""
    return _type_a_values_ok(plane, linpoly_values(plane.ctx, coeffs))


def check_type_b(plane: Presemifield, coeffs) -> int | None:
    """The unique alpha for which {(L(y), y)} ∪ {(0), (alpha)} is a
    hyperoval (L two-to-one, kernel profile 1 at alpha / 2 elsewhere),
    or None."""
    return _type_b_values_alpha(plane, linpoly_values(plane.ctx, coeffs))


# ------------------------------------------------------------ canonical form

_ORBIT_BUDGET = 500_000_000


def _tau_orbit(plane: Presemifield, points) -> list[tuple[int, ...]]:
    """Closure of the point set under all translations (BFS on generators)."""
    q, n = plane.q, plane.n
    gens = [(1 << i, 0) for i in range(n)] + [(0, 1 << i) for i in range(n)]

    def shift(key, a, b):
        out = []
        for p in key:
            if p <= q:
                out.append(p)
            else:
                t = p - 1 - q
                out.append(affine(q, (t // q) ^ a, (t % q) ^ b))
        return tuple(sorted(out))

    start = tuple(sorted(points))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for key in frontier:
            for a, b in gens:
                img = shift(key, a, b)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return sorted(seen)


def _orbit_min_and_size(plane: Presemifield, points):
    """(lexicographically minimal sorted code tuple, number of distinct
    images) over the full automorphism group."""
    q, n = plane.q, plane.n
    torbit = _tau_orbit(plane, points)
    cost = len(torbit) * q * n * (q + 2)
    if cost > _ORBIT_BUDGET:
        raise CanonicalizationTooLarge(
            f"orbit enumeration needs ~{cost:.2g} point maps")
    mul = plane.mul_table
    best = None
    seen = set()
    for key in torbit:
        arr = np.array(key, dtype=np.int64)
        is_aff = arr > q
        xs = np.where(is_aff, (arr - 1 - q) // q, 0)
        ys = np.where(is_aff, (arr - 1 - q) % q, 0)
        zs = np.where(~is_aff & (arr > 0), arr - 1, 0)
        for c in range(q):
            ys2 = ys ^ mul[xs, c]
            zs2 = zs ^ c
            for k in range(n):
                codes = np.where(
                    is_aff,
                    1 + q + plane.f_pow[k][xs] * q + plane.h_pow[k][ys2],
                    np.where(arr > 0, 1 + plane.g_pow[k][zs2], 0),
                )
                cand = tuple(sorted(codes.tolist()))
                seen.add(cand)
                if best is None or cand < best:
                    best = cand
    return best, len(seen)


def _digest(key) -> bytes:
    return np.asarray(key, dtype="<i4").tobytes()


def canonical_form(plane: Presemifield, oval: Hyperoval | frozenset) -> bytes:
    """Digest of the lexicographically minimal sorted point-code sequence
    over all q^3*n collineations; equal digests == equivalent hyperovals."""
    points = oval.points if isinstance(oval, Hyperoval) else oval
    best, _ = _orbit_min_and_size(plane, points)
    return _digest(best)


def orbit_size(plane: Presemifield, oval: Hyperoval | frozenset) -> int:
    points = oval.points if isinstance(oval, Hyperoval) else oval
    _, size = _orbit_min_and_size(plane, points)
    return size


# ----------------------------------------------------------- normalisation


@dataclass(frozen=True)
class HyperovalRecord:
    plane_id: str
    type_tag: str  # "a" | "b"
    coeffs: tuple[int, ...]
    alpha: int | None
    canonical_digest: bytes
    orbit_size: int


def normalize(plane: Presemifield, oval: Hyperoval):
    """Translate and shear a translation hyperoval into its normal form.

    Returns (type_tag, HyperovalRecord, witness) where witness maps the
    input onto the normalised point set.  Raises NotTranslation when the
    affine part is not a coset of an additive group of size q.
    """
    q = plane.q
    points = oval.points
    carrier = sorted(p for p in points if p <= q)
    affpts = [decode_point(q, p)[1:] for p in points if p > q]
    if len(carrier) != 2 or len(affpts) != q:
        raise NotTranslation("carrier must have 2 points and affine part size q")
    x0, y0 = min(affpts)
    tau = Collineation(0, 0, x0, y0)
    if INFINITY_POINT in carrier:
        other = next(p for p in carrier if p != INFINITY_POINT) - 1
        witness = compose(plane, Collineation(0, other, 0, 0), tau)
        moved = [apply_collineation(plane, witness, p) for p in points]
        graph = {}
        for p in moved:
            kind = decode_point(q, p)
            if kind[0] == "affine":
                graph[kind[1]] = kind[2]
        if len(graph) != q:
            raise NotTranslation("affine part is not the graph of a function")
        values = np.array([graph[x] for x in range(q)], dtype=np.int32)
        try:
            coeffs = coeffs_from_values(plane.ctx, values)
        except AlgebraError as exc:
            raise NotTranslation(str(exc)) from exc
        key, size = _orbit_min_and_size(plane, moved)
        record = HyperovalRecord(plane.label, "a", coeffs, None, _digest(key), size)
        return "a", record, witness
    u, v = carrier[0] - 1, carrier[1] - 1
    witness = compose(plane, Collineation(0, u, 0, 0), tau)
    alpha = u ^ v
    moved = [apply_collineation(plane, witness, p) for p in points]
    graph = {}
    for p in moved:
        kind = decode_point(q, p)
        if kind[0] == "affine":
            graph[kind[2]] = kind[1]
    if len(graph) != q:
        raise NotTranslation("affine part is not the graph of a function")
    values = np.array([graph[y] for y in range(q)], dtype=np.int32)
    try:
        coeffs = coeffs_from_values(plane.ctx, values)
    except AlgebraError as exc:
        raise NotTranslation(str(exc)) from exc
    key, size = _orbit_min_and_size(plane, moved)
    record = HyperovalRecord(plane.label, "b", coeffs, alpha, _digest(key), size)
    return "b", record, witness


# ------------------------------------------- normalised-class digests (big n)


def _conjugate_table(plane: Presemifield, type_tag: str, table: np.ndarray,
                     k: int) -> np.ndarray:
    """Value table of the autotopism-conjugated graph function.

    A type-(a) graph {(x, f(x))} maps to the graph of H^k ∘ f ∘ F^-k; a
    type-(b) graph {(f(y), y)} to the graph of F^k ∘ f ∘ H^-k.  (The two
    rules coincide for the explicit Knuth multiplications, where the
    autotopism triple is coordinatewise squaring.)
    """
    n = plane.n
    inv = (n - k) % n
    if type_tag == "a":
        return plane.h_pow[k][table[plane.f_pow[inv]]]
    return plane.f_pow[k][table[plane.h_pow[inv]]]


def _normalized_variants(plane: Presemifield, type_tag: str,
                         values: np.ndarray, alpha: int | None):
    """All normal forms equivalent to the given one.

    Equivalence between normal forms is generated by autotopism conjugation
    (alpha -> G^k(alpha)) and, for type (b), the shear through (alpha)
    which replaces f by f ∘ pi^-1 with pi(v) = v + f(v)⋆alpha.
    """
    n, q = plane.n, plane.q
    tables = [values]
    if type_tag == "b":
        pi = np.arange(q) ^ plane.mul_table[values, alpha]
        inv_pi = np.zeros(q, dtype=np.int64)
        inv_pi[pi] = np.arange(q)
        tables.append(values[inv_pi])
    out = []
    for tab in tables:
        for k in range(n):
            conj = _conjugate_table(plane, type_tag, tab, k)
            beta = None if alpha is None else int(plane.g_pow[k][alpha])
            out.append((beta, tuple(int(t) for t in conj)))
    return out


def normalized_class_digest(plane: Presemifield, type_tag: str,
                            values: np.ndarray, alpha: int | None) -> bytes:
    """Canonical digest of the equivalence class of a normal form, computed
    from the few equivalent normal forms rather than the full orbit."""
    variants = _normalized_variants(plane, type_tag, values, alpha)
    beta, tab = min(variants, key=lambda t: (-1 if t[0] is None else t[0], t[1]))
    return _digest(((-1 if beta is None else beta),) + tab)


def normalized_orbit_size(plane: Presemifield, type_tag: str,
                          values: np.ndarray, alpha: int | None) -> int:
    """|G| / |stabiliser| for a normal form, via the conjugation structure."""
    n, q = plane.n, plane.q
    base = tuple(int(t) for t in values)
    # one stabiliser coset per (k, shear branch) whose conjugate recovers f;
    # type (b) has two shear branches (identity and the shear through (alpha))
    targets = [base]
    if type_tag == "b":
        pi = np.arange(q) ^ plane.mul_table[values, alpha]
        inv_pi = np.zeros(q, dtype=np.int64)
        inv_pi[pi] = np.arange(q)
        targets.append(tuple(int(t) for t in values[inv_pi]))
    matches = 0
    for k in range(n):
        conj = tuple(int(t) for t in _conjugate_table(plane, type_tag, values, k))
        matches += sum(conj == t for t in targets)
    return q * q * n // matches


# ------------------------------------------------------------------ searches


def _scan_tables(plane: Presemifield, coeff_domain: str):
    ctx = plane.ctx
    n, q = ctx.n, ctx.q
    if coeff_domain == "full":
        domain = q
        coeff_of_digit = np.arange(q)
    elif coeff_domain == "zero_one":
        domain = 2
        coeff_of_digit = np.arange(2)
    else:
        raise ValueError(f"unknown coeff_domain {coeff_domain!r}")
    contrib = np.zeros((n, domain, q), dtype=np.uint16)
    for i in range(n):
        frob_row = ctx.frob_table[i]
        for d in range(domain):
            contrib[i, d] = ctx.mul_table[int(coeff_of_digit[d]), frob_row]
    star = np.ascontiguousarray(plane.mul_table.T.astype(np.uint16))
    return contrib, star, domain


def _decode_coeffs(index: int, n: int, domain: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(index % domain)
        index //= domain
    return tuple(out)


def _scan_worker(args):
    spec, type_tag, coeff_domain, start, stop = args
    plane = plane_from_spec(spec)
    contrib, star, _ = _scan_tables(plane, coeff_domain)
    if type_tag == "a":
        return _kernels.scan_type_a(contrib, star, start, stop)
    return _kernels.scan_type_b(contrib, star, start, stop)


def _run_scan(plane: Presemifield, type_tag: str, coeff_domain: str, workers: int):
    contrib, star, domain = _scan_tables(plane, coeff_domain)
    total = domain ** plane.n
    if workers <= 1:
        if type_tag == "a":
            return _kernels.scan_type_a(contrib, star, 0, total), domain
        return _kernels.scan_type_b(contrib, star, 0, total), domain
    # partition by the leading coefficient digit; merge is order-independent
    chunk = domain ** (plane.n - 1)
    jobs = [(plane.spec, type_tag, coeff_domain, lead * chunk, (lead + 1) * chunk)
            for lead in range(domain)]
    results = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_scan_worker, jobs):
            results.extend(part)
    results.sort(key=lambda r: r if isinstance(r, int) else r[0])
    return results, domain


def validate_domain(n: int, coeff_domain: str) -> None:
    """Feasibility guard shared with the CLI (raised before plane setup)."""
    if coeff_domain == "full" and n != 5:
        raise InfeasibleDomain(f"full coefficient domain only at n=5, got n={n}")
    if coeff_domain == "zero_one" and n > 11:
        raise InfeasibleDomain(f"zero_one coefficient domain needs n <= 11, got n={n}")
    if coeff_domain not in ("full", "zero_one"):
        raise ValueError(f"unknown coeff_domain {coeff_domain!r}")


def search_translation_hyperovals(plane: Presemifield, type_tag: str,
                                  coeff_domain: str = "full",
                                  workers: int = 1) -> list[HyperovalRecord]:
    """Exhaustively classify normalised translation hyperovals.

    Enumerates every linearized polynomial over the coefficient domain,
    filters with the type-(a)/(b) kernel conditions, and returns one record
    per equivalence class, sorted by canonical digest.  The representative
    of a class is its member with the smallest coefficient vector in
    (a_{n-1}, ..., a_0) order.
    """
    if type_tag not in ("a", "b"):
        raise ValueError(f"type_tag must be 'a' or 'b', got {type_tag!r}")
    n = plane.n
    validate_domain(n, coeff_domain)
    survivors, domain = _run_scan(plane, type_tag, coeff_domain, workers)
    classes: dict[bytes, list] = {}
    for item in survivors:
        if type_tag == "a":
            index, alpha = item, None
        else:
            index, alpha = item
        coeffs = _decode_coeffs(index, n, domain)
        values = linpoly_values(plane.ctx, coeffs)
        if n <= 7:
            points = (graph_hyperoval_a(plane, values) if type_tag == "a"
                      else graph_hyperoval_b(plane, values, alpha)).points
            key, size = _orbit_min_and_size(plane, points)
            digest = _digest(key)
        else:
            digest = normalized_class_digest(plane, type_tag, values, alpha)
            size = normalized_orbit_size(plane, type_tag, values, alpha)
        classes.setdefault(digest, []).append((coeffs, alpha, size))
    records = []
    for digest in sorted(classes):
        members = classes[digest]
        coeffs, alpha, size = min(members, key=lambda m: tuple(reversed(m[0])))
        records.append(HyperovalRecord(plane.label, type_tag, coeffs, alpha,
                                       digest, size))
    return records
