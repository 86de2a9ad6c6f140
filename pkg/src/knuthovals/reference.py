"""Built-in reference classification for n = 5 (modulus x^5 + x^2 + 1).

These are the known complete classifications of normalised translation
hyperovals in the two explicit Knuth planes of order 32: 5 type-(a) and 12
type-(b) classes in the commutative plane, none of type (a) and 10 of type
(b) in the symplectic plane.  Coefficients are recorded as powers of the
primitive element w (w^5 + w^2 + 1 = 0); index i holds the coefficient of
y^(2^i), None meaning zero.  Row matching is done by canonical digest, not
by literal coefficients, since a search may return a different class
representative.
"""

from __future__ import annotations

from .gf2n import FieldContext

REFERENCE_N = 5
REFERENCE_MODULUS = 0b100101

# (plane label, type) -> list of rows {no, alpha (w-exponent or None for
# type (a); 0 means the element 1), coeffs (w-exponents, low power first)}
REFERENCE_CLASSES = {
    ("kn", "a"): [
        {"no": 1, "alpha": None, "coeffs": (None, 0, None, None, None)},
        {"no": 2, "alpha": None, "coeffs": (0, 0, 0, None, None)},
        {"no": 3, "alpha": None, "coeffs": (None, None, None, 0, None)},
        {"no": 4, "alpha": None, "coeffs": (None, 0, 0, 0, None)},
        {"no": 5, "alpha": None, "coeffs": (12, 4, 30, 14, 7)},
    ],
    ("kn", "b"): [
        {"no": 1, "alpha": 0, "coeffs": (0, 0, None, None, None)},
        {"no": 2, "alpha": 0, "coeffs": (0, None, 0, None, None)},
        {"no": 3, "alpha": 1, "coeffs": (25, 23, 11, 3, 21)},
        {"no": 4, "alpha": 3, "coeffs": (14, 16, 4, 17, 13)},
        {"no": 5, "alpha": 3, "coeffs": (12, 14, 17, 25, 13)},
        {"no": 6, "alpha": 3, "coeffs": (6, 8, 17, 16, 16)},
        {"no": 7, "alpha": 7, "coeffs": (27, 27, 18, 27, 26)},
        {"no": 8, "alpha": 7, "coeffs": (1, 29, 8, 18, 17)},
        {"no": 9, "alpha": 11, "coeffs": (5, 26, 29, 25, 20)},
        {"no": 10, "alpha": 11, "coeffs": (7, 27, 28, 2, 19)},
        {"no": 11, "alpha": 11, "coeffs": (4, 10, 17, 24, 11)},
        {"no": 12, "alpha": 15, "coeffs": (16, 24, 5, 21, 29)},
    ],
    ("kn_td", "a"): [],
    ("kn_td", "b"): [
        {"no": 1, "alpha": 0, "coeffs": (0, 0, None, None, None)},
        {"no": 2, "alpha": 0, "coeffs": (0, None, 0, None, None)},
        {"no": 3, "alpha": 1, "coeffs": (15, 29, 1, 18, 24)},
        {"no": 4, "alpha": 1, "coeffs": (13, 5, 17, 12, 17)},
        {"no": 5, "alpha": 1, "coeffs": (5, 14, 4, 24, 7)},
        {"no": 6, "alpha": 1, "coeffs": (0, 27, 23, 7, 28)},
        {"no": 7, "alpha": 3, "coeffs": (24, 28, 0, 5, 5)},
        {"no": 8, "alpha": 5, "coeffs": (22, 25, 26, 27, 19)},
        {"no": 9, "alpha": 15, "coeffs": (18, 29, 21, 1, 5)},
        {"no": 10, "alpha": 15, "coeffs": (18, 10, 4, 13, 30)},
    ],
}

# rows whose orbit intersections contain a 6 (see the orbit machinery)
SIX_INTERSECTION_ROWS = {
    ("kn", "b"): (3, 8, 10, 12),
    ("kn_td", "b"): (3, 6, 9, 10),
}


def reference_coeffs(ctx: FieldContext, row: dict) -> tuple[int, ...]:
    """Coefficient bit patterns of a reference row in the given context."""
    return tuple(0 if e is None else ctx.omega_pow(e) for e in row["coeffs"])


def reference_alpha(ctx: FieldContext, row: dict) -> int | None:
    return None if row["alpha"] is None else ctx.omega_pow(row["alpha"])
