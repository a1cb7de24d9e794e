"""Elementary number-theoretic utilities: primality, Legendre symbols,
divisor/psi functions, the weight-2 dimension formula, and square roots
modulo a prime.

Everything here is pure and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Witnesses proving primality for every n < 3.3e24 (Sorenson-Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any input used here."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(bound: int) -> list[int]:
    """All primes <= bound (simple sieve)."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]


def prime_pi(z: int) -> int:
    """pi(z), the number of primes up to z."""
    return len(primes_upto(z))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine for desk-scale inputs."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, 1} for an odd prime p."""
    if p <= 2 or not is_prime(p):
        raise ValueError(f"legendre requires an odd prime, got p={p}")
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def divisor_count(n: int) -> int:
    """d(n), the number of positive divisors."""
    return math.prod(e + 1 for e in factorize(n).values())


def dedekind_psi(n: int) -> int:
    """psi(n) = n * prod_{p | n} (1 + 1/p)."""
    out = n
    for p in factorize(n):
        out = out // p * (p + 1)
    return out


def dim_weight2(N: int) -> int:
    """Dimension of the space of weight-2 level-N cusp forms for prime N:
    floor((N+1)/12) - 1 if N = 1 mod 12, floor((N+1)/12) otherwise.
    """
    if not is_prime(N):
        raise ValueError(f"dimension formula implemented for prime level only, got N={N}")
    base = (N + 1) // 12
    return base - 1 if N % 12 == 1 else base


def is_square_mod(n: int, N: int) -> int:
    """1 if n is a square modulo N, else 0.  Requires gcd(n, N) = 1."""
    if N < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(n, N) != 1:
        raise ValueError(f"is_square_mod requires gcd(n, N) = 1, got n={n}, N={N}")
    for p, e in factorize(N).items():
        if p == 2:
            if e == 2 and n % 4 != 1:
                return 0
            if e >= 3 and n % 8 != 1:
                return 0
        elif legendre(n, p) != 1:
            return 0
    return 1


@dataclass(frozen=True)
class LevelValues:
    d: int
    psi: int
    s: int | None
    delta_square: int | None


def nt_values(N: int, n: int | None = None) -> LevelValues:
    """The level-N quantities entering the trace-average estimate: divisor
    count d(N), Dedekind psi(N), the prime-level dimension s(N) (None for
    composite N), and the square indicator for n mod N when n is given.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    s = dim_weight2(N) if is_prime(N) else None
    delta = is_square_mod(n, N) if n is not None else None
    return LevelValues(d=divisor_count(N), psi=dedekind_psi(N), s=s, delta_square=delta)


def smallest_nonresidue(p: int) -> int:
    """Smallest positive quadratic non-residue mod an odd prime p."""
    for c in range(2, p):
        if legendre(c, p) == -1:
            return c
    raise ValueError(f"no non-residue found; p={p} is not an odd prime?")


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a modulo an odd prime p, or None if a is a non-residue.
    Tonelli-Shanks; deterministic because the generator is the smallest
    non-residue.
    """
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) == -1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = pow(smallest_nonresidue(p), q, p)
    m, c, t, r = s, z, pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def level_ladder(bound: int = 2000, start: int = 13) -> list[int]:
    """All primes p = 1 mod 12 in [start, bound], the default level sweep."""
    return [p for p in primes_upto(bound) if p >= start and p % 12 == 1]
