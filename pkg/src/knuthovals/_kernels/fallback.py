"""Pure-numpy scan kernels (used when the compiled extension is absent).

The candidate space is the set of coefficient vectors (a_0, ..., a_{n-1})
of linearized polynomials, indexed by an odometer integer with digit i in
[0, D).  ``contrib[i][d]`` is the value table over x of the i-th digit's
contribution, so a candidate's value table is the XOR of n gathered rows.

Filtering is progressive: the cheap kernel-size conditions are applied one
slope at a time to a shrinking block, which keeps the total work near the
sum of geometric survivor counts rather than candidates x slopes.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"

_BLOCK = 1 << 18


def _digits(idx: np.ndarray, n: int, domain: int) -> np.ndarray:
    out = np.zeros((n, len(idx)), dtype=np.int64)
    t = idx.copy()
    for i in range(n):
        out[i] = t % domain
        t //= domain
    return out


def scan_type_a(contrib: np.ndarray, star: np.ndarray, start: int, stop: int) -> list[int]:
    """Candidate indices whose polynomial is an additive permutation with
    kernel(L + x⋆a) of size exactly 2 for every a != 0."""
    n, domain, q = contrib.shape
    out: list[int] = []
    for lo in range(start, stop, _BLOCK):
        idx = np.arange(lo, min(lo + _BLOCK, stop), dtype=np.int64)
        digits = _digits(idx, n, domain)
        values = np.zeros((len(idx), q), dtype=np.uint16)
        for i in range(n):
            values ^= contrib[i][digits[i]]
        keep = np.count_nonzero(values == 0, axis=1) == 1
        idx, values = idx[keep], values[keep]
        for a in range(1, q):
            if not len(idx):
                break
            ker = np.count_nonzero(values == star[a][None, :], axis=1)
            keep = ker == 2
            idx, values = idx[keep], values[keep]
        out.extend(int(i) for i in idx)
    return out


def scan_type_b(contrib: np.ndarray, star: np.ndarray, start: int, stop: int) -> list[tuple[int, int]]:
    """(index, alpha) pairs where the polynomial is two-to-one and
    y -> L(y)⋆a + y has kernel size 1 for exactly one a (= alpha) and 2
    for every other a != 0."""
    n, domain, q = contrib.shape
    ys = np.arange(q, dtype=np.uint16)
    out: list[tuple[int, int]] = []
    for lo in range(start, stop, _BLOCK):
        idx = np.arange(lo, min(lo + _BLOCK, stop), dtype=np.int64)
        digits = _digits(idx, n, domain)
        values = np.zeros((len(idx), q), dtype=np.uint16)
        for i in range(n):
            values ^= contrib[i][digits[i]]
        keep = np.count_nonzero(values == 0, axis=1) == 2
        idx, values = idx[keep], values[keep]
        ones = np.zeros(len(idx), dtype=np.int64)
        alpha = np.zeros(len(idx), dtype=np.int64)
        for a in range(1, q):
            if not len(idx):
                break
            ker = np.count_nonzero(star[a][values] == ys[None, :], axis=1)
            keep = (ker == 2) | ((ker == 1) & (ones == 0))
            idx, values, ones, alpha = idx[keep], values[keep], ones[keep], alpha[keep]
            hit = ker[keep] == 1
            alpha[hit] = a
            ones += hit
        keep = ones == 1
        out.extend((int(i), int(a)) for i, a in zip(idx[keep], alpha[keep]))
    return out
