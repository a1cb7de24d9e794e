"""Prime fields F_p and their quadratic extensions F_{p^2}.

F_{p^2} is realized as F_p[g]/(g^2 - c) with c the smallest positive
non-residue mod p, so a fixed p always yields the same representation.
Elements are immutable pairs (a, b) meaning a + b*g; prime-field elements
keep b = 0.
"""

from __future__ import annotations

from functools import lru_cache

from .ntutils import is_prime, smallest_nonresidue, sqrt_mod


class FieldContext:
    """Arithmetic context for F_p (degree 1) or F_{p^2} (degree 2)."""

    __slots__ = ("p", "degree", "c")

    def __init__(self, p: int, degree: int = 1):
        if degree not in (1, 2):
            raise ValueError("degree must be 1 or 2")
        if p == 2 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        self.p = p
        self.degree = degree
        self.c = smallest_nonresidue(p) if degree == 2 else 0

    def __call__(self, a: int, b: int = 0) -> "FieldElement":
        if b and self.degree == 1:
            raise ValueError("prime-field element cannot have a g-component")
        return FieldElement(self, a % self.p, b % self.p)

    @property
    def order(self) -> int:
        return self.p if self.degree == 1 else self.p * self.p

    def zero(self) -> "FieldElement":
        return self(0)

    def one(self) -> "FieldElement":
        return self(1)

    def embed(self, x: "FieldElement") -> "FieldElement":
        """Coerce an element of F_p or F_{p^2} (same p) into this context."""
        if x.ctx is self:
            return x
        if x.ctx.p != self.p:
            raise ValueError("cannot embed across different characteristics")
        if x.b and self.degree == 1:
            raise ValueError("element is not in the prime field")
        return FieldElement(self, x.a, x.b)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldContext)
            and other.p == self.p
            and other.degree == self.degree
        )

    def __hash__(self) -> int:
        return hash((self.p, self.degree))

    def __repr__(self) -> str:
        if self.degree == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^2; g^2={self.c})"


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldContext:
    return FieldContext(p, 1)


@lru_cache(maxsize=None)
def quadratic_field(p: int) -> FieldContext:
    return FieldContext(p, 2)


class FieldElement:
    """Immutable element a + b*g of F_p or F_{p^2} (b = 0 in the former)."""

    __slots__ = ("ctx", "a", "b")

    def __init__(self, ctx: FieldContext, a: int, b: int = 0):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "a", a % ctx.p)
        object.__setattr__(self, "b", b % ctx.p)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, int):
            return FieldElement(self.ctx, other)
        if isinstance(other, FieldElement):
            if other.ctx is self.ctx or other.ctx == self.ctx:
                return other
            if other.ctx.p == self.ctx.p:
                wide = self.ctx if self.ctx.degree == 2 else other.ctx
                return wide.embed(other)
        return NotImplemented

    def _pair(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented, NotImplemented
        s = o.ctx.embed(self) if o.ctx.degree > self.ctx.degree else self
        return s, o

    def __add__(self, other):
        s, o = self._pair(other)
        if s is NotImplemented:
            return NotImplemented
        return FieldElement(s.ctx, s.a + o.a, s.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        s, o = self._pair(other)
        if s is NotImplemented:
            return NotImplemented
        return FieldElement(s.ctx, s.a - o.a, s.b - o.b)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return FieldElement(self.ctx, -self.a, -self.b)

    def __mul__(self, other):
        s, o = self._pair(other)
        if s is NotImplemented:
            return NotImplemented
        p, c = s.ctx.p, s.ctx.c
        a = (s.a * o.a + c * s.b * o.b) % p
        b = (s.a * o.b + s.b * o.a) % p
        return FieldElement(s.ctx, a, b)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        p = self.ctx.p
        if self.b == 0:
            if self.a == 0:
                raise ZeroDivisionError("inverse of zero field element")
            return FieldElement(self.ctx, pow(self.a, p - 2, p))
        # (a + bg)^-1 = (a - bg) / (a^2 - c b^2); the norm is nonzero.
        nrm = (self.a * self.a - self.ctx.c * self.b * self.b) % p
        ninv = pow(nrm, p - 2, p)
        return FieldElement(self.ctx, self.a * ninv, -self.b * ninv)

    def __truediv__(self, other):
        s, o = self._pair(other)
        if s is NotImplemented:
            return NotImplemented
        return s * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = FieldElement(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "FieldElement":
        """Frobenius x -> x^p; negates the g-component."""
        return FieldElement(self.ctx, self.a, -self.b)

    def norm(self) -> int:
        """Norm to F_p as an integer residue."""
        return (self.a * self.a - self.ctx.c * self.b * self.b) % self.ctx.p

    @property
    def in_prime_field(self) -> bool:
        return self.b == 0

    def sqrt(self) -> "FieldElement | None":
        """A square root within F_{p^2}, or None when self is rational with
        a non-square norm pattern that has no root here (cannot happen for
        degree-2 contexts: every F_p element is a square in F_{p^2})."""
        ctx, p = self.ctx, self.ctx.p
        if ctx.degree == 1:
            r = sqrt_mod(self.a, p)
            return None if r is None else FieldElement(ctx, r)
        if self.b == 0:
            r = sqrt_mod(self.a, p)
            if r is not None:
                return FieldElement(ctx, r)
            # a = c * (a/c) with a/c a residue; sqrt = sqrt(a/c) * g.
            r = sqrt_mod(self.a * pow(ctx.c, p - 2, p) % p, p)
            return FieldElement(ctx, 0, r)
        # General case via norm: x = u + vg with u = (a + sqrt(norm))/2 ...
        n = sqrt_mod(self.norm(), p)
        if n is None:
            n = sqrt_mod(-self.norm() % p, p)  # pragma: no cover - unreachable
        for sg in (n, (-n) % p):
            u2 = (self.a + sg) * pow(2, p - 2, p) % p
            u = sqrt_mod(u2, p)
            if u is None or u == 0:
                continue
            v = self.b * pow(2 * u, p - 2, p) % p
            cand = FieldElement(ctx, u, v)
            if cand * cand == self:
                return cand
        return None

    def sort_key(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __lt__(self, other: "FieldElement") -> bool:
        return self.sort_key() < other.sort_key()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.ctx.p
        return (
            isinstance(other, FieldElement)
            and other.ctx.p == self.ctx.p
            and other.a == self.a
            and other.b == self.b
        )

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.a, self.b))

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*g"

    def __repr__(self) -> str:
        return f"{self} in {self.ctx!r}"


def parse_element(text: str, ctx: FieldContext) -> FieldElement:
    """Inverse of str(): accepts 'a' or 'a+b*g'."""
    text = text.strip()
    if "+" in text:
        a_part, b_part = text.split("+")
        if not b_part.endswith("*g"):
            raise ValueError(f"malformed field element {text!r}")
        return ctx(int(a_part), int(b_part[:-2]))
    return ctx(int(text))
