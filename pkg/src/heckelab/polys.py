"""Dense univariate polynomials over F_p and F_{p^2}.

Coefficients live in numpy int64 vectors (lowest degree first), so products
reduce to integer convolutions; the element objects from `fields` only appear
at the API boundary.  Root extraction over F_{p^2} follows the classic
route: strip the prime-field roots with gcd(x^p - x, f), split the rest into
irreducible quadratics by seeded equal-degree splitting, and solve those
explicitly.  Multiplicities come from exact division, never from clustering.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from .errors import NumericError, ResourceLimitError
from .fields import FieldContext, FieldElement, prime_field, quadratic_field
from .ntutils import sqrt_mod

_MAX_KERNEL_P = 1 << 23  # keeps int64 convolutions of length <= 8192 exact


class _FpKernel:
    """Raw coefficient arithmetic over F_p; containers are int64 arrays."""

    def __init__(self, p: int):
        if p > _MAX_KERNEL_P:
            raise ResourceLimitError(f"polynomial kernel supports p < 2^23, got {p}")
        self.p = p

    # -- container plumbing -------------------------------------------------
    def trim(self, u):
        nz = np.nonzero(u)[0]
        return u[: nz[-1] + 1] if len(nz) else u[:0]

    def zero(self):
        return np.zeros(0, np.int64)

    def one(self):
        return np.ones(1, np.int64)

    def x(self):
        return np.array([0, 1], np.int64)

    def from_ints(self, ints):
        return self.trim(np.array([int(i) % self.p for i in ints], np.int64))

    def deg(self, u) -> int:
        return len(u) - 1

    def is_zero(self, u) -> bool:
        return len(u) == 0

    def copy(self, u):
        return u.copy()

    def eq(self, u, v) -> bool:
        return len(u) == len(v) and bool(np.all(u == v))

    # -- scalars are plain ints ---------------------------------------------
    def lead(self, u) -> int:
        return int(u[-1])

    def scalar_inv(self, s: int) -> int:
        return pow(s, self.p - 2, self.p)

    def scalar_mul(self, u, s: int):
        return self.trim(u * (s % self.p) % self.p)

    def coeff_neg(self, s: int) -> int:
        return (-s) % self.p

    # -- ring operations ------------------------------------------------------
    def add(self, u, v):
        if len(u) < len(v):
            u, v = v, u
        w = u.copy()
        w[: len(v)] = (w[: len(v)] + v) % self.p
        return self.trim(w)

    def sub(self, u, v):
        n = max(len(u), len(v))
        w = np.zeros(n, np.int64)
        w[: len(u)] = u
        w[: len(v)] = (w[: len(v)] - v) % self.p
        return self.trim(w)

    def neg(self, u):
        return (self.p - u) % self.p if len(u) else u

    def mul(self, u, v):
        if not len(u) or not len(v):
            return self.zero()
        return np.convolve(u, v) % self.p

    def mul_trunc(self, u, v, t: int):
        if not len(u) or not len(v):
            return self.zero()
        return self.trim(np.convolve(u[:t], v[:t])[:t] % self.p)

    def shift_sub_scaled(self, r, v, s: int, off: int):
        """r -= s * v * x^off, in place on an untrimmed buffer."""
        r[off : off + len(v)] = (r[off : off + len(v)] - s % self.p * v) % self.p

    def reverse(self, u, length: int):
        w = np.zeros(length, np.int64)
        w[length - len(u) :] = u[::-1]
        return self.trim(w)

    def eval_many(self, u, xs):
        """Evaluate at a vector of field points (Horner)."""
        acc = np.zeros(len(xs), np.int64)
        for c in u[::-1]:
            acc = (acc * xs + int(c)) % self.p
        return acc

    def random_poly(self, deg: int, rng: random.Random):
        return self.trim(np.array([rng.randrange(self.p) for _ in range(deg + 1)], np.int64))

    def derivative(self, u):
        if len(u) <= 1:
            return self.zero()
        return self.trim(u[1:] * (np.arange(1, len(u)) % self.p) % self.p)


class _Fq2Kernel(_FpKernel):
    """Same protocol over F_{p^2}; containers are (A, B) array pairs."""

    def __init__(self, p: int, c: int):
        super().__init__(p)
        self.c = c

    def trim(self, u):
        a, b = u
        nz = max(
            np.nonzero(a)[0][-1] + 1 if np.any(a) else 0,
            np.nonzero(b)[0][-1] + 1 if np.any(b) else 0,
        )
        return (a[:nz], b[:nz])

    def zero(self):
        return (np.zeros(0, np.int64), np.zeros(0, np.int64))

    def one(self):
        return (np.ones(1, np.int64), np.zeros(1, np.int64))

    def x(self):
        return (np.array([0, 1], np.int64), np.zeros(2, np.int64))

    def from_pairs(self, pairs):
        a = np.array([int(x) % self.p for x, _ in pairs], np.int64)
        b = np.array([int(y) % self.p for _, y in pairs], np.int64)
        return self.trim((a, b))

    def from_ints(self, ints):
        a = np.array([int(i) % self.p for i in ints], np.int64)
        return self.trim((a, np.zeros(len(a), np.int64)))

    def lift(self, u):
        """Embed an F_p container."""
        return (u.copy(), np.zeros(len(u), np.int64))

    def deg(self, u) -> int:
        return len(u[0]) - 1

    def is_zero(self, u) -> bool:
        return len(u[0]) == 0

    def copy(self, u):
        return (u[0].copy(), u[1].copy())

    def eq(self, u, v) -> bool:
        return (
            len(u[0]) == len(v[0])
            and bool(np.all(u[0] == v[0]))
            and bool(np.all(u[1] == v[1]))
        )

    # -- scalars are (a, b) pairs ---------------------------------------------
    def lead(self, u):
        return (int(u[0][-1]), int(u[1][-1]))

    def scalar_inv(self, s):
        a, b = s
        nrm = (a * a - self.c * b * b) % self.p
        ninv = pow(nrm, self.p - 2, self.p)
        return (a * ninv % self.p, (-b) * ninv % self.p)

    def scalar_mul(self, u, s):
        a, b = u
        sa, sb = s[0] % self.p, s[1] % self.p
        return self.trim(
            ((a * sa + self.c * (b * sb)) % self.p, (a * sb + b * sa) % self.p)
        )

    def coeff_neg(self, s):
        return ((-s[0]) % self.p, (-s[1]) % self.p)

    def add(self, u, v):
        if len(u[0]) < len(v[0]):
            u, v = v, u
        a, b = u[0].copy(), u[1].copy()
        a[: len(v[0])] = (a[: len(v[0])] + v[0]) % self.p
        b[: len(v[0])] = (b[: len(v[0])] + v[1]) % self.p
        return self.trim((a, b))

    def sub(self, u, v):
        n = max(len(u[0]), len(v[0]))
        a = np.zeros(n, np.int64)
        b = np.zeros(n, np.int64)
        a[: len(u[0])] = u[0]
        b[: len(u[0])] = u[1]
        a[: len(v[0])] = (a[: len(v[0])] - v[0]) % self.p
        b[: len(v[0])] = (b[: len(v[0])] - v[1]) % self.p
        return self.trim((a, b))

    def neg(self, u):
        return ((self.p - u[0]) % self.p, (self.p - u[1]) % self.p)

    def mul(self, u, v):
        if self.is_zero(u) or self.is_zero(v):
            return self.zero()
        # Karatsuba over the g-split: 3 integer convolutions per product.
        t0 = np.convolve(u[0], v[0])
        t1 = np.convolve(u[1], v[1])
        t2 = np.convolve(u[0] + u[1], v[0] + v[1]) - t0 - t1
        return ((t0 % self.p + self.c * (t1 % self.p)) % self.p, t2 % self.p)

    def mul_trunc(self, u, v, t: int):
        w = self.mul((u[0][:t], u[1][:t]), (v[0][:t], v[1][:t]))
        if self.is_zero(w):
            return w
        return self.trim((w[0][:t], w[1][:t]))

    def shift_sub_scaled(self, r, v, s, off: int):
        ra, rb = r
        va, vb = v
        sa, sb = s[0] % self.p, s[1] % self.p
        pa = (sa * va + self.c * (sb * vb)) % self.p
        pb = (sa * vb + sb * va) % self.p
        ra[off : off + len(va)] = (ra[off : off + len(va)] - pa) % self.p
        rb[off : off + len(va)] = (rb[off : off + len(va)] - pb) % self.p

    def reverse(self, u, length: int):
        a = np.zeros(length, np.int64)
        b = np.zeros(length, np.int64)
        a[length - len(u[0]) :] = u[0][::-1]
        b[length - len(u[0]) :] = u[1][::-1]
        return self.trim((a, b))

    def eval_many(self, u, xs):
        """Horner at a vector of (a, b) points given as two int64 arrays."""
        xa, xb = xs
        acc_a = np.zeros(len(xa), np.int64)
        acc_b = np.zeros(len(xa), np.int64)
        for ca, cb in zip(u[0][::-1], u[1][::-1]):
            na = (acc_a * xa + self.c * (acc_b * xb % self.p)) % self.p
            nb = (acc_a * xb + acc_b * xa) % self.p
            acc_a = (na + int(ca)) % self.p
            acc_b = (nb + int(cb)) % self.p
        return acc_a, acc_b

    def random_poly(self, deg: int, rng: random.Random):
        a = np.array([rng.randrange(self.p) for _ in range(deg + 1)], np.int64)
        b = np.array([rng.randrange(self.p) for _ in range(deg + 1)], np.int64)
        return self.trim((a, b))

    def derivative(self, u):
        if len(u[0]) <= 1:
            return self.zero()
        idx = np.arange(1, len(u[0])) % self.p
        return self.trim((u[0][1:] * idx % self.p, u[1][1:] * idx % self.p))


@lru_cache(maxsize=None)
def _fp_kernel(p: int) -> _FpKernel:
    return _FpKernel(p)


@lru_cache(maxsize=None)
def _fq2_kernel(p: int) -> _Fq2Kernel:
    return _Fq2Kernel(p, quadratic_field(p).c)


def _kernel_for(ctx: FieldContext):
    return _fp_kernel(ctx.p) if ctx.degree == 1 else _fq2_kernel(ctx.p)


# ---------------------------------------------------------------------------
# Generic algorithms over either kernel
# ---------------------------------------------------------------------------

def _divmod(ker, u, v):
    if ker.is_zero(v):
        raise ZeroDivisionError("polynomial division by zero")
    du, dv = ker.deg(u), ker.deg(v)
    if du < dv:
        return ker.zero(), ker.copy(u)
    linv = ker.scalar_inv(ker.lead(v))
    r = ker.copy(u)
    q = [None] * (du - dv + 1)
    for i in range(du, dv - 1, -1):
        if isinstance(ker, _Fq2Kernel):
            if i >= len(r[0]):
                coef = (0, 0)
            else:
                coef = (int(r[0][i]), int(r[1][i]))
            if coef == (0, 0):
                q[i - dv] = (0, 0)
                continue
            coef = _scalar_mul_scalar(ker, coef, linv)
        else:
            coef = int(r[i]) if i < len(r) else 0
            if coef == 0:
                q[i - dv] = 0
                continue
            coef = coef * linv % ker.p
        q[i - dv] = coef
        ker.shift_sub_scaled(r, v, coef, i - dv)
    if isinstance(ker, _Fq2Kernel):
        qc = ker.from_pairs(q)
        rem = ker.trim((r[0][:dv] if dv else r[0][:0], r[1][:dv] if dv else r[1][:0]))
    else:
        qc = ker.trim(np.array(q, np.int64))
        rem = ker.trim(r[:dv] if dv else r[:0])
    return qc, rem


def _scalar_mul_scalar(ker, s, t):
    if isinstance(ker, _Fq2Kernel):
        return (
            (s[0] * t[0] + ker.c * s[1] * t[1]) % ker.p,
            (s[0] * t[1] + s[1] * t[0]) % ker.p,
        )
    return s * t % ker.p


def _exact_div(ker, u, v):
    q, r = _divmod(ker, u, v)
    if not ker.is_zero(r):
        raise ArithmeticError("exact polynomial division left a remainder")
    return q


def _monic(ker, u):
    if ker.is_zero(u):
        return u
    return ker.scalar_mul(u, ker.scalar_inv(ker.lead(u)))


def _gcd(ker, u, v):
    a, b = ker.copy(u), ker.copy(v)
    while not ker.is_zero(b):
        _, r = _divmod(ker, a, b)
        a, b = b, r
    return _monic(ker, a)


class _Modulus:
    """Reduction context mod a monic polynomial, with a Newton-series inverse
    so repeated reductions cost two convolutions instead of a division loop."""

    def __init__(self, ker, m):
        self.ker = ker
        self.m = _monic(ker, m)
        self.n = ker.deg(self.m)
        frev = ker.reverse(self.m, self.n + 1)
        self.minv = _series_inverse(ker, frev, self.n) if self.n > 1 else None

    def reduce(self, u):
        ker, n = self.ker, self.n
        du = ker.deg(u)
        if du < n:
            return u
        k = du - n
        if self.minv is None or k + 1 > n:
            _, r = _divmod(ker, u, self.m)
            return r
        urev = ker.reverse(u, du + 1)
        qrev = ker.mul_trunc(urev, self.minv, k + 1)
        q = ker.reverse(qrev, k + 1)
        r = ker.sub(u, ker.mul(q, self.m))
        if isinstance(ker, _Fq2Kernel):
            return ker.trim((r[0][:n], r[1][:n]))
        return ker.trim(r[:n])

    def pow(self, base, e: int):
        ker = self.ker
        result = ker.one()
        cur = self.reduce(base)
        while e:
            if e & 1:
                result = self.reduce(ker.mul(result, cur))
            e >>= 1
            if e:
                cur = self.reduce(ker.mul(cur, cur))
        return result


def _series_inverse(ker, f, t: int):
    """Inverse of f mod x^t; requires f(0) = 1."""
    g = ker.one()
    prec = 1
    while prec < t:
        prec = min(2 * prec, t)
        fg = ker.mul_trunc(f, g, prec)
        two_minus = ker.sub(ker.from_ints([2]), fg)
        g = ker.mul_trunc(g, two_minus, prec)
    return g


def _squarefree_part(ker, u):
    d = ker.derivative(u)
    if ker.is_zero(d):
        raise ResourceLimitError("degree >= characteristic squarefree split unsupported")
    return _exact_div(ker, u, _gcd(ker, u, d))


def _split_all_linear(ker, f, half_exp: int, rng: random.Random):
    """Roots of f, which must be squarefree and split into distinct linear
    factors over the kernel's field.  Seeded equal-degree splitting."""
    f = _monic(ker, f)
    d = ker.deg(f)
    if d <= 0:
        return []
    if d == 1:
        if isinstance(ker, _Fq2Kernel):
            return [ker.coeff_neg((int(f[0][0]), int(f[1][0])))]
        return [(-int(f[0])) % ker.p]
    modctx = _Modulus(ker, f)
    for _ in range(64):
        a = ker.random_poly(d - 1, rng)
        if ker.deg(a) < 1:
            continue
        b = modctx.pow(a, half_exp)
        g = _gcd(ker, ker.sub(b, ker.one()), f)
        if 0 < ker.deg(g) < d:
            other = _exact_div(ker, f, g)
            return _split_all_linear(ker, g, half_exp, rng) + _split_all_linear(
                ker, other, half_exp, rng
            )
    raise NumericError("equal-degree splitting failed to separate factors")


def _fq2_distinct_roots(p: int, fp_container, rng: random.Random):
    """Distinct roots in F_{p^2} of a squarefree F_p polynomial, as (a, b)
    pairs.  Prime-field roots are split off first so the bulk of the work
    stays over F_p; the leftover splits into irreducible quadratics that are
    solved with one Tonelli-Shanks square root each."""
    ker = _fp_kernel(p)
    ctx2 = quadratic_field(p)
    f = _monic(ker, fp_container)
    roots: list[tuple[int, int]] = []
    if ker.deg(f) < 1:
        return roots
    modctx = _Modulus(ker, f)
    xp = modctx.pow(ker.x(), p)
    g1 = _gcd(ker, ker.sub(xp, ker.x()), f)
    if ker.deg(g1) >= 1:
        roots.extend((r, 0) for r in _split_all_linear(ker, g1, (p - 1) // 2, rng))
        f = _exact_div(ker, f, g1)
    if ker.deg(f) < 1:
        return roots
    # Restrict to the part splitting over F_{p^2}.
    modctx = _Modulus(ker, f)
    xp2 = modctx.pow(modctx.pow(ker.x(), p), p)
    g2 = _gcd(ker, ker.sub(xp2, ker.x()), f)
    if ker.deg(g2) < 1:
        return roots
    quads = _split_into_quadratics(ker, g2, (p * p - 1) // 2, rng)
    inv2 = pow(2, p - 2, p)
    cinv = pow(ctx2.c, p - 2, p)
    for bq, cq in quads:
        disc = (bq * bq - 4 * cq) % p
        u = sqrt_mod(disc * cinv % p, p)
        if u is None:
            raise NumericError("irreducible quadratic produced residue discriminant")
        a0 = (-bq) * inv2 % p
        b0 = u * inv2 % p
        roots.append((a0, b0))
        roots.append((a0, (-b0) % p))
    return roots


def _split_into_quadratics(ker, f, half_exp: int, rng: random.Random):
    """Split a product of distinct irreducible quadratics over F_p into its
    factors, returned as (b, c) with factor x^2 + b x + c."""
    f = _monic(ker, f)
    d = ker.deg(f)
    if d == 0:
        return []
    if d == 2:
        return [(int(f[1]), int(f[0]))]
    modctx = _Modulus(ker, f)
    for _ in range(64):
        a = ker.random_poly(d - 1, rng)
        if ker.deg(a) < 1:
            continue
        b = modctx.pow(a, half_exp)
        g = _gcd(ker, ker.sub(b, ker.one()), f)
        if 0 < ker.deg(g) < d:
            other = _exact_div(ker, f, g)
            return _split_into_quadratics(ker, g, half_exp, rng) + _split_into_quadratics(
                ker, other, half_exp, rng
            )
    raise NumericError("equal-degree splitting failed to separate quadratics")


# ---------------------------------------------------------------------------
# Public polynomial type
# ---------------------------------------------------------------------------

class DensePoly:
    """Dense polynomial over F_p or F_{p^2}, lowest-degree coefficient first."""

    __slots__ = ("ctx", "ker", "u")

    def __init__(self, ctx: FieldContext, container):
        self.ctx = ctx
        self.ker = _kernel_for(ctx)
        self.u = self.ker.trim(container)

    @classmethod
    def from_ints(cls, ctx: FieldContext, ints) -> "DensePoly":
        return cls(ctx, _kernel_for(ctx).from_ints(list(ints)))

    @classmethod
    def from_elements(cls, coeffs: list[FieldElement]) -> "DensePoly":
        if not coeffs:
            raise ValueError("empty coefficient list")
        p = coeffs[0].ctx.p
        wide = any(c.b != 0 or c.ctx.degree == 2 for c in coeffs)
        ctx = quadratic_field(p) if wide else prime_field(p)
        ker = _kernel_for(ctx)
        if wide:
            return cls(ctx, ker.from_pairs([(c.a, c.b) for c in coeffs]))
        return cls(ctx, ker.from_ints([c.a for c in coeffs]))

    @classmethod
    def zero(cls, ctx: FieldContext) -> "DensePoly":
        return cls(ctx, _kernel_for(ctx).zero())

    @classmethod
    def x(cls, ctx: FieldContext) -> "DensePoly":
        return cls(ctx, _kernel_for(ctx).x())

    @property
    def degree(self) -> int:
        return self.ker.deg(self.u)

    @property
    def is_zero(self) -> bool:
        return self.ker.is_zero(self.u)

    @property
    def coefficients(self) -> list[FieldElement]:
        if self.ctx.degree == 1:
            return [self.ctx(int(c)) for c in self.u]
        return [self.ctx(int(a), int(b)) for a, b in zip(self.u[0], self.u[1])]

    def coefficient(self, i: int) -> FieldElement:
        if i > self.degree or i < 0:
            return self.ctx.zero()
        if self.ctx.degree == 1:
            return self.ctx(int(self.u[i]))
        return self.ctx(int(self.u[0][i]), int(self.u[1][i]))

    def _lift_pair(self, other: "DensePoly"):
        if self.ctx == other.ctx:
            return self.ctx, self.u, other.u
        if self.ctx.p != other.ctx.p:
            raise ValueError("mixed characteristics")
        ctx = quadratic_field(self.ctx.p)
        ker = _fq2_kernel(ctx.p)
        u = self.u if self.ctx.degree == 2 else ker.lift(self.u)
        v = other.u if other.ctx.degree == 2 else ker.lift(other.u)
        return ctx, u, v

    def __add__(self, other: "DensePoly") -> "DensePoly":
        ctx, u, v = self._lift_pair(other)
        return DensePoly(ctx, _kernel_for(ctx).add(u, v))

    def __sub__(self, other: "DensePoly") -> "DensePoly":
        ctx, u, v = self._lift_pair(other)
        return DensePoly(ctx, _kernel_for(ctx).sub(u, v))

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        ctx, u, v = self._lift_pair(other)
        return DensePoly(ctx, _kernel_for(ctx).mul(u, v))

    def __divmod__(self, other: "DensePoly"):
        ctx, u, v = self._lift_pair(other)
        q, r = _divmod(_kernel_for(ctx), u, v)
        return DensePoly(ctx, q), DensePoly(ctx, r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensePoly):
            return NotImplemented
        ctx, u, v = self._lift_pair(other)
        return _kernel_for(ctx).eq(u, v)

    def __hash__(self):
        return hash((self.ctx, self.degree))

    def monic(self) -> "DensePoly":
        return DensePoly(self.ctx, _monic(self.ker, self.u))

    def derivative(self) -> "DensePoly":
        return DensePoly(self.ctx, self.ker.derivative(self.u))

    def gcd(self, other: "DensePoly") -> "DensePoly":
        ctx, u, v = self._lift_pair(other)
        return DensePoly(ctx, _gcd(_kernel_for(ctx), u, v))

    def evaluate(self, x: FieldElement) -> FieldElement:
        acc = x.ctx.zero() if x.ctx.degree >= self.ctx.degree else self.ctx.zero()
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"DensePoly(deg={self.degree} over {self.ctx!r})"


def roots_in_fq2(f: DensePoly, seed: int = 0) -> list[FieldElement]:
    """All roots of f lying in F_{p^2}, repeated with multiplicity and sorted
    by coordinates.  Deterministic for a fixed seed.  Roots in higher
    extensions are ignored.
    """
    if f.is_zero:
        raise ValueError("zero polynomial has every element as a root")
    rng = random.Random(f"{seed}:{f.ctx.p}:{f.degree}")
    ctx2 = quadratic_field(f.ctx.p)
    ker2 = _fq2_kernel(f.ctx.p)
    if f.degree == 0:
        return []

    if f.ctx.degree == 1:
        sqfree = _squarefree_part(f.ker, f.u)
        squarefree_input = f.ker.deg(sqfree) == f.degree
        distinct = _fq2_distinct_roots(f.ctx.p, sqfree, rng)
    else:
        sqfree = _squarefree_part(ker2, f.u)
        squarefree_input = ker2.deg(sqfree) == f.degree
        modctx = _Modulus(ker2, sqfree)
        q = f.ctx.p * f.ctx.p
        xq = modctx.pow(ker2.x(), q)
        split = _gcd(ker2, ker2.sub(xq, ker2.x()), sqfree)
        distinct = _split_all_linear(ker2, split, (q - 1) // 2, rng)

    if squarefree_input:
        return sorted(ctx2(a, b) for a, b in distinct)

    work = ker2.lift(f.u) if f.ctx.degree == 1 else ker2.copy(f.u)
    out: list[FieldElement] = []
    for a, b in distinct:
        mult = 0
        while True:
            qq = _linear_exact_div(ker2, work, a, b)
            if qq is None:
                break
            work = qq
            mult += 1
        out.extend([ctx2(a, b)] * mult)
    return sorted(out)


def _linear_exact_div(ker2, u, a: int, b: int):
    """u / (x - (a + b g)) if the division is exact, else None.  Scalar
    Horner pass; much cheaper than the generic division loop."""
    p, c = ker2.p, ker2.c
    ua, ub = u
    n = len(ua)
    if n == 0:
        return None
    qa = [0] * (n - 1)
    qb = [0] * (n - 1)
    acc_a, acc_b = 0, 0
    for i in range(n - 1, -1, -1):
        acc_a = (acc_a + int(ua[i])) % p
        acc_b = (acc_b + int(ub[i])) % p
        if i == 0:
            break
        qa[i - 1] = acc_a
        qb[i - 1] = acc_b
        acc_a, acc_b = (acc_a * a + c * acc_b * b) % p, (acc_a * b + acc_b * a) % p
    if acc_a or acc_b:
        return None
    return ker2.trim((np.array(qa, np.int64), np.array(qb, np.int64)))


def multiplicity_of_root(f: DensePoly, r: FieldElement) -> int:
    """Exact multiplicity of r as a root of f (0 if not a root)."""
    ker2 = _fq2_kernel(f.ctx.p)
    work = ker2.lift(f.u) if f.ctx.degree == 1 else ker2.copy(f.u)
    mult = 0
    while True:
        qq = _linear_exact_div(ker2, work, r.a, r.b)
        if qq is None:
            return mult
        work = qq
        mult += 1
