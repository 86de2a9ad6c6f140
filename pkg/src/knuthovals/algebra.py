"""Presemifield multiplications and GF(2)-linear algebra.

Three multiplications are built over a FieldContext:

* ``knuth_kn``      x*y = xy + (y Tr(x) + x Tr(y))^2
* ``knuth_kn_td``   x∘y = xy + Tr(x) sqrt(y) + Tr(x^2 y)   (symplectic)
* matrix families obtained from either by the transpose / dual (opposite
  multiplication) derivations.

Every presemifield carries an autotopism generator triple (F, G, H) of
additive bijections with F(x) ⋆ G(y) = H(x ⋆ y); the triple generates the
cyclic group of plane automorphisms fixing the coordinate triangle.  For
the two explicit multiplications the triple is coordinatewise squaring;
the transpose / dual rules transform it so that derived matrix families
keep a verified generator.  The triple identity is checked exhaustively at
construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2n import FieldContext

MAX_PLANE_DEGREE = 11  # q x q multiplication tables stay small


class AlgebraError(ValueError):
    pass


class DegeneratePresemifield(AlgebraError):
    """A derived family has a singular right-multiplication matrix."""


class NonCommutative(AlgebraError):
    """A commutative presemifield was required."""


# --------------------------------------------------------------- bit matrices


@dataclass(frozen=True)
class BitMatrix:
    """n x n matrix over GF(2); rows[r] is an n-bit int, bit c = entry (r,c).

    Acts on row vectors: apply(x) = XOR of rows[r] over set bits r of x.
    """

    rows: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def apply(self, x: int) -> int:
        out = 0
        r = 0
        while x:
            if x & 1:
                out ^= self.rows[r]
            x >>= 1
            r += 1
        return out

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        return BitMatrix(tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        return BitMatrix(tuple(other.apply(r) for r in self.rows))

    def transpose(self) -> "BitMatrix":
        n = self.n
        out = [0] * n
        for r in range(n):
            v = self.rows[r]
            c = 0
            while v:
                if v & 1:
                    out[c] |= 1 << r
                v >>= 1
                c += 1
        return BitMatrix(tuple(out))

    def rank(self) -> int:
        work = list(self.rows)
        rank = 0
        for c in range(self.n):
            piv = None
            for r in range(rank, len(work)):
                if (work[r] >> c) & 1:
                    piv = r
                    break
            if piv is None:
                continue
            work[rank], work[piv] = work[piv], work[rank]
            for r in range(len(work)):
                if r != rank and ((work[r] >> c) & 1):
                    work[r] ^= work[rank]
            rank += 1
        return rank

    def kernel_size(self) -> int:
        return 1 << (self.n - self.rank())

    def inverse(self) -> "BitMatrix":
        n = self.n
        work = list(self.rows)
        inv = [1 << r for r in range(n)]
        for c in range(n):
            piv = None
            for r in range(c, n):
                if (work[r] >> c) & 1:
                    piv = r
                    break
            if piv is None:
                raise AlgebraError("matrix is singular")
            work[c], work[piv] = work[piv], work[c]
            inv[c], inv[piv] = inv[piv], inv[c]
            for r in range(n):
                if r != c and ((work[r] >> c) & 1):
                    work[r] ^= work[c]
                    inv[r] ^= inv[c]
        return BitMatrix(tuple(inv))

    @staticmethod
    def identity(n: int) -> "BitMatrix":
        return BitMatrix(tuple(1 << r for r in range(n)))

    @staticmethod
    def from_map(n: int, fn) -> "BitMatrix":
        """Matrix of an additive map given by a callable on basis vectors."""
        return BitMatrix(tuple(int(fn(1 << r)) for r in range(n)))


def perm_table(ctx: FieldContext, m: BitMatrix) -> np.ndarray:
    """Value table of the additive map given by a BitMatrix."""
    q = ctx.q
    out = np.zeros(q, dtype=np.int32)
    for x in range(1, q):
        low = x & (-x)
        out[x] = out[x ^ low] ^ m.rows[low.bit_length() - 1]
    return out


# --------------------------------------------------------- linearized polys


def linpoly_values(ctx: FieldContext, coeffs) -> np.ndarray:
    """Value table of L(X) = sum coeffs[i] X^(2^i) on all of GF(2^n)."""
    out = np.zeros(ctx.q, dtype=np.int32)
    for i, a in enumerate(coeffs):
        if a:
            out ^= ctx.mul_table[a, ctx.frob_table[i]]
    return out


def linpoly_eval(ctx: FieldContext, coeffs, x: int) -> int:
    acc = 0
    for i, a in enumerate(coeffs):
        if a:
            acc ^= ctx.mul(a, ctx.frob(x, i))
    return acc


def linpoly_matrix(ctx: FieldContext, coeffs) -> BitMatrix:
    return BitMatrix.from_map(ctx.n, lambda v: linpoly_eval(ctx, coeffs, v))


def adjoint(ctx: FieldContext, coeffs) -> tuple[int, ...]:
    """Adjoint of L w.r.t. the trace form: Tr(x L(y)) = Tr(adjoint(L)(x) y).

    Coefficient of X^(2^(n-i)) is a_i^(2^(n-i)), exponents mod n.
    """
    n = ctx.n
    out = [0] * n
    for i, a in enumerate(coeffs):
        j = (n - i) % n
        out[j] ^= ctx.frob(a, j)
    return tuple(out)


@dataclass(frozen=True)
class LinPolyAnalysis:
    matrix: BitMatrix
    kernel_size: int
    kind: str  # "permutation" | "two_to_one" | "other"


def linpoly_analyze(ctx: FieldContext, coeffs) -> LinPolyAnalysis:
    m = linpoly_matrix(ctx, coeffs)
    k = m.kernel_size()
    kind = "permutation" if k == 1 else ("two_to_one" if k == 2 else "other")
    return LinPolyAnalysis(m, k, kind)


def coeffs_from_values(ctx: FieldContext, values) -> tuple[int, ...]:
    """Linearized-poly coefficients of an additive map given by its values.

    Solves sum_i a_i (w^r)^(2^i) = values[w^r] for the n coefficients by
    Gaussian elimination over GF(2^n), then verifies the full value table
    (which rejects non-additive inputs).
    """
    n = ctx.n
    rows = [[ctx.frob(1 << r, i) for i in range(n)] + [int(values[1 << r])]
            for r in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if rows[r][c])
        rows[c], rows[piv] = rows[piv], rows[c]
        scale = ctx.inv(rows[c][c])
        rows[c] = [ctx.mul(scale, v) for v in rows[c]]
        for r in range(n):
            if r != c and rows[r][c]:
                f = rows[r][c]
                rows[r] = [v ^ ctx.mul(f, w) for v, w in zip(rows[r], rows[c])]
    result = tuple(rows[i][n] for i in range(n))
    if not np.array_equal(linpoly_values(ctx, result),
                          np.asarray(values, dtype=np.int32)):
        raise AlgebraError("values are not an additive map")
    return result


# --------------------------------------------------------------- presemifield


class Presemifield:
    """A multiplication descriptor over a FieldContext.

    kind is one of "knuth_kn", "knuth_kn_td", "matrix".  mul_table[x, y]
    is x ⋆ y.  For matrix families the q right-multiplication matrices are
    exposed through :meth:`right_mul_matrix` (spec: indexed by the right
    operand).  ``spec`` is a picklable recipe used to rebuild the plane in
    worker processes.
    """

    def __init__(self, ctx: FieldContext, kind: str, mul_table: np.ndarray,
                 triple, label: str, spec: tuple):
        if ctx.n > MAX_PLANE_DEGREE:
            raise AlgebraError(f"plane operations support n <= {MAX_PLANE_DEGREE}")
        self.ctx = ctx
        self.kind = kind
        self.label = label
        self.spec = spec
        self.mul_table = mul_table
        q, n = ctx.q, ctx.n
        fm, gm, hm = triple
        x = np.arange(q)
        lhs = mul_table[fm[x][:, None], gm[x][None, :]]
        rhs = hm[mul_table[x[:, None], x[None, :]]]
        if not np.array_equal(lhs, rhs):
            raise AlgebraError(f"invalid autotopism triple for {label}")
        self.f_pow = np.zeros((n, q), dtype=np.int32)
        self.g_pow = np.zeros((n, q), dtype=np.int32)
        self.h_pow = np.zeros((n, q), dtype=np.int32)
        self.f_pow[0] = x
        self.g_pow[0] = x
        self.h_pow[0] = x
        for k in range(1, n):
            self.f_pow[k] = fm[self.f_pow[k - 1]]
            self.g_pow[k] = gm[self.g_pow[k - 1]]
            self.h_pow[k] = hm[self.h_pow[k - 1]]
        if not (np.array_equal(fm[self.f_pow[n - 1]], x)
                and np.array_equal(gm[self.g_pow[n - 1]], x)
                and np.array_equal(hm[self.h_pow[n - 1]], x)):
            raise AlgebraError(f"autotopism triple of {label} does not have order n")

    # lightweight accessors -------------------------------------------------

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def n(self) -> int:
        return self.ctx.n

    def star(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def commutative(self) -> bool:
        return bool(np.array_equal(self.mul_table, self.mul_table.T))

    def right_mul_matrix(self, a: int) -> BitMatrix:
        """Matrix of x -> x ⋆ a in the polynomial basis."""
        return BitMatrix(tuple(int(self.mul_table[1 << r, a]) for r in range(self.n)))

    def triple(self):
        return self.f_pow[1].copy(), self.g_pow[1].copy(), self.h_pow[1].copy()

    def __repr__(self):
        return f"Presemifield({self.label}, n={self.n})"


def _plane_cache(ctx: FieldContext, key, builder):
    if key not in ctx._planes:
        ctx._planes[key] = builder()
    return ctx._planes[key]


def knuth_kn(ctx: FieldContext) -> Presemifield:
    """Knuth's binary commutative presemifield K_n (odd n)."""

    def build():
        q = ctx.q
        x = np.arange(q)
        m = ctx.mul_table.copy()
        # (y Tr(x) + x Tr(y))^2 = y^2 Tr(x) + x^2 Tr(y)
        m ^= np.where(ctx.trace_table[x][:, None].astype(bool), ctx.sq[x][None, :], 0)
        m ^= np.where(ctx.trace_table[x][None, :].astype(bool), ctx.sq[x][:, None], 0)
        frob = ctx.frob_table[1].copy()
        return Presemifield(ctx, "knuth_kn", m, (frob, frob, frob), "kn",
                            ("kn", ctx.n, ctx.modulus, ()))

    return _plane_cache(ctx, ("kn",), build)


def knuth_kn_td(ctx: FieldContext) -> Presemifield:
    """The symplectic derivative of K_n in its explicit form."""

    def build():
        q = ctx.q
        x = np.arange(q)
        m = ctx.mul_table.copy()
        m ^= np.where(ctx.trace_table[x][:, None].astype(bool),
                      ctx.sqrt_table[x][None, :], 0)
        m ^= ctx.trace_table[ctx.mul_table[ctx.sq[x][:, None], x[None, :]]]
        frob = ctx.frob_table[1].copy()
        return Presemifield(ctx, "knuth_kn_td", m, (frob, frob, frob), "kn_td",
                            ("kn_td", ctx.n, ctx.modulus, ()))

    return _plane_cache(ctx, ("kn_td",), build)


def derive_presemifield(base: Presemifield, which: str) -> Presemifield:
    """Transpose (matrix-transposed right multiplications) or dual (opposite
    multiplication) of a presemifield, with the autotopism triple carried
    along:  transpose maps (F, G, H) to (H^-T, G, F^-T), dual swaps F and G.
    """
    ctx = base.ctx
    q, n = ctx.q, ctx.n

    def build():
        if which == "dual":
            m = base.mul_table.T.copy()
            triple = (base.g_pow[1], base.f_pow[1], base.h_pow[1])
        elif which == "transpose":
            m = np.zeros((q, q), dtype=np.int32)
            for a in range(q):
                t = base.right_mul_matrix(a).transpose()
                m[:, a] = perm_table(ctx, t)
                if a and t.rank() != n:
                    raise DegeneratePresemifield(
                        f"transpose of {base.label}: singular matrix at a={a}")
            fm = BitMatrix.from_map(n, lambda v: int(base.f_pow[1, v]))
            hm = BitMatrix.from_map(n, lambda v: int(base.h_pow[1, v]))
            triple = (perm_table(ctx, hm.inverse().transpose()),
                      base.g_pow[1],
                      perm_table(ctx, fm.inverse().transpose()))
        else:
            raise ValueError(f"unknown derivation {which!r}")
        new_spec = (base.spec[0], base.spec[1], base.spec[2], base.spec[3] + (which,))
        label = f"{base.label}^{'d' if which == 'dual' else 't'}"
        plane = Presemifield(ctx, "matrix", m, triple, label, new_spec)
        # derived families must stay nonsingular off zero
        for a in range(1, q):
            if plane.right_mul_matrix(a).rank() != n:
                raise DegeneratePresemifield(f"{label}: singular matrix at a={a}")
        return plane

    return _plane_cache(ctx, ("derived", base.label, which), build)


def plane_from_spec(spec: tuple) -> Presemifield:
    """Rebuild a presemifield from its picklable recipe."""
    base_kind, n, modulus, chain = spec
    ctx = FieldContext(n, modulus)
    plane = knuth_kn(ctx) if base_kind == "kn" else knuth_kn_td(ctx)
    for step in chain:
        plane = derive_presemifield(plane, step)
    return plane


# ------------------------------------------------------------- verification


@dataclass(frozen=True)
class PresemifieldReport:
    left_distributive: bool
    right_distributive: bool
    no_zero_divisors: bool
    commutative: bool
    symplectic: bool | None = None
    orthogonality: bool | None = None

    @property
    def ok(self) -> bool:
        checks = [self.left_distributive, self.right_distributive, self.no_zero_divisors]
        if self.symplectic is not None:
            checks.append(self.symplectic)
        if self.orthogonality is not None:
            checks.append(self.orthogonality)
        return all(checks)


def verify_presemifield(plane: Presemifield, check_symplectic: bool = False,
                        orthogonal_to: Presemifield | None = None) -> PresemifieldReport:
    """Exhaustively check the presemifield axioms (n <= 7).

    With check_symplectic, also checks Tr(x(y⋆z)) = Tr(y(x⋆z)) over all
    triples.  With orthogonal_to=K_n and plane the symplectic derivative,
    checks Tr(x(z∘y) + y(x*z)) = 0 over all triples.
    """
    ctx = plane.ctx
    if ctx.n > 7:
        raise AlgebraError("exhaustive verification supported for n <= 7")
    q = ctx.q
    x = np.arange(q)
    m = plane.mul_table
    pairs = m[x[:, None], x[None, :]]
    left = all(
        np.array_equal(m[x[:, None] ^ z, x[None, :]], pairs ^ m[z, x][None, :])
        for z in range(q)
    )
    right = all(
        np.array_equal(m[x[:, None], x[None, :] ^ z], pairs ^ m[x, z][:, None])
        for z in range(q)
    )
    nzd = not (m[1:, 1:] == 0).any()
    comm = bool(np.array_equal(m, m.T))
    symplectic = None
    if check_symplectic:
        symplectic = True
        for z in range(q):
            col = m[x, z]
            t = ctx.trace_table[ctx.mul_table[x[:, None], col[None, :]]]
            if not np.array_equal(t, t.T):
                symplectic = False
                break
    orthogonality = None
    if orthogonal_to is not None:
        orthogonality = True
        for z in range(q):
            zy = plane.mul_table[z, x]
            xz = orthogonal_to.mul_table[x, z]
            t = ctx.trace_table[ctx.mul_table[x[:, None], zy[None, :]]]
            t ^= ctx.trace_table[ctx.mul_table[x[None, :], xz[:, None]]]
            if t.any():
                orthogonality = False
                break
    return PresemifieldReport(left, right, nzd, comm, symplectic, orthogonality)
