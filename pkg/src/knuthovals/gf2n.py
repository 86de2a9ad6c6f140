"""Arithmetic in GF(2^n) for odd n.

Field elements are plain ints: bit i is the coefficient of w^i in the
polynomial basis {1, w, ..., w^(n-1)}, where w is a root of the primitive
modulus polynomial.  Addition is XOR, 0 and 1 are the ints 0 and 1.

A :class:`FieldContext` owns the modulus and the precomputed log/exp,
Frobenius and trace tables.  Contexts are immutable after construction and
safe to share across worker processes.
"""

from __future__ import annotations

import numpy as np


class FieldError(ValueError):
    """Base class for field construction/arithmetic errors."""


class EvenDegree(FieldError):
    """The extension degree must be odd."""


class UnsupportedDegree(FieldError):
    """The extension degree is outside the supported range."""


class NonPrimitiveModulus(FieldError):
    """The modulus polynomial is not primitive of the requested degree."""


class InvertZero(ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


MIN_DEGREE = 3
MAX_DEGREE = 21

# Lexicographically smallest primitive polynomial per odd degree, as an
# (n+1)-bit mask.  n=5 is x^5 + x^2 + 1, which also pins the w-power
# notation used by the built-in reference classifications.
DEFAULT_MODULI = {
    3: 0b1011,
    5: 0b100101,
    7: 0b10000011,
    9: 0b1000010001,
    11: 0b100000000101,
    13: 0b10000000011011,
    15: 0b1000000000000011,
    17: 0b100000000000001001,
    19: 0b10000000000000100111,
    21: 0b1000000000000000000101,
}


class FieldContext:
    """GF(2^n) with a fixed primitive modulus.

    Parameters
    ----------
    n : odd extension degree, MIN_DEGREE <= n <= MAX_DEGREE.
    modulus : optional (n+1)-bit mask of a primitive polynomial; defaults
        to the entry in DEFAULT_MODULI.

    Raises EvenDegree / UnsupportedDegree / NonPrimitiveModulus.
    """

    def __init__(self, n: int, modulus: int | None = None):
        if n % 2 == 0:
            raise EvenDegree(f"n={n} must be odd")
        if not MIN_DEGREE <= n <= MAX_DEGREE:
            raise UnsupportedDegree(f"n={n} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
        if modulus is None:
            modulus = DEFAULT_MODULI[n]
        if modulus.bit_length() != n + 1:
            raise NonPrimitiveModulus(f"modulus {modulus:#x} does not have degree {n}")
        self.n = n
        self.q = 1 << n
        self.modulus = modulus
        self.exp, self.log = self._build_tables()
        a = np.arange(self.q)
        la = self.log[1:]
        mul = np.zeros((self.q, self.q), dtype=np.int32)
        mul[1:, 1:] = self.exp[(la[:, None] + la[None, :]) % (self.q - 1)]
        self.mul_table = mul
        self.sq = mul[a, a].copy()
        frob = np.zeros((n, self.q), dtype=np.int32)
        frob[0] = a
        for k in range(1, n):
            frob[k] = self.sq[frob[k - 1]]
        self.frob_table = frob
        self.sqrt_table = frob[n - 1].copy()
        tr = np.zeros(self.q, dtype=np.int32)
        for k in range(n):
            tr ^= frob[k]
        self.trace_table = tr
        inv = np.zeros(self.q, dtype=np.int32)
        inv[1] = 1
        inv[2:] = self.exp[(self.q - 1) - self.log[2:]]
        self.inv_table = inv
        self._d3_counts: np.ndarray | None = None
        self._planes: dict = {}  # cache used by the algebra module

    def _build_tables(self):
        # Building exp by repeated multiplication by w doubles as the
        # primitivity check: a proper divisor order revisits 1 early.
        q = self.q
        exp = np.zeros(q - 1, dtype=np.int32)
        log = np.zeros(q, dtype=np.int32)
        v = 1
        for k in range(q - 1):
            if v == 1 and k > 0:
                raise NonPrimitiveModulus(
                    f"w has order {k} < {q - 1} under modulus {self.modulus:#x}"
                )
            exp[k] = v
            log[v] = k
            v <<= 1
            if v >> self.n:
                v ^= self.modulus
        if v != 1:
            raise NonPrimitiveModulus(f"modulus {self.modulus:#x} is not irreducible")
        return exp, log

    # ------------------------------------------------------------- arithmetic

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def inv(self, x: int) -> int:
        if x == 0:
            raise InvertZero("0 has no multiplicative inverse")
        return int(self.inv_table[x])

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            return 0 if e else 1
        return int(self.exp[(int(self.log[x]) * e) % (self.q - 1)])

    def frob(self, x: int, k: int) -> int:
        """x^(2^k) for 0 <= k < n."""
        if not 0 <= k < self.n:
            raise ValueError(f"frobenius power k={k} outside [0, {self.n})")
        return int(self.frob_table[k, x])

    def sqrt(self, x: int) -> int:
        return int(self.sqrt_table[x])

    def trace(self, x: int) -> int:
        return int(self.trace_table[x])

    def omega_pow(self, e: int) -> int:
        """The element w^e."""
        return int(self.exp[e % (self.q - 1)])

    def elements(self) -> range:
        return range(self.q)

    # ------------------------------------------------------------- formatting

    def element_str(self, x: int) -> str:
        """Render an element as 0, 1 or w^k."""
        if x == 0:
            return "0"
        k = int(self.log[x])
        if k == 0:
            return "1"
        if k == 1:
            return "w"
        return f"w^{k}"

    def element_hex(self, x: int) -> str:
        """Wire format: lowercase hex of the bit pattern."""
        return format(x, "x")

    def __repr__(self):
        return f"FieldContext(n={self.n}, modulus={self.modulus:#b})"


def dickson3_count(ctx: FieldContext, t: int) -> int:
    """Number of roots of x^3 + x = t in GF(2^n).

    The counts follow the classical cubic root distribution for odd n:
    exactly 2 roots at t=0; exactly 1 root iff Tr(1/t) = 0 (t != 0); and
    0 or 3 roots when Tr(1/t) = 1.  Counts are read from a cached
    exhaustive preimage table, so they are exact for every t.
    """
    if ctx._d3_counts is None:
        x = np.arange(ctx.q)
        d3 = ctx.mul_table[x, ctx.sq[x]] ^ x
        ctx._d3_counts = np.bincount(d3, minlength=ctx.q)
    return int(ctx._d3_counts[t])
