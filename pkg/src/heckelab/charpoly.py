"""Exact integer characteristic polynomials through modular images.

Each prime image reduces the matrix to Hessenberg form over F_q and runs the
leading-principal-minor recurrence; images are then lifted by the Chinese
remainder theorem into the symmetric range.  The prime count comes from a
Hadamard-type bound on the coefficients, so no arbitrary-precision matrix
arithmetic is ever needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ResourceLimitError
from .ntutils import is_prime

_DIM_CAP = 512
_PRIME_TOP = (1 << 61) - 1  # Mersenne; the list descends from here
_prime_pool: list[int] = []


def _reconstruction_primes(count: int) -> list[int]:
    cand = _prime_pool[-1] - 2 if _prime_pool else _PRIME_TOP
    while len(_prime_pool) < count:
        if is_prime(cand):
            _prime_pool.append(cand)
        cand -= 2
    return _prime_pool[:count]


@dataclass(frozen=True)
class IntPoly:
    """Exact integer polynomial, lowest-degree coefficient first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1 if self.coefficients != (0,) else -1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def deflate_root(self, r: int) -> "IntPoly":
        """Exact division by (x - r); raises if r is not a root."""
        coeffs = self.coefficients
        out = [0] * (len(coeffs) - 1)
        acc = 0
        for i in range(len(coeffs) - 1, 0, -1):
            acc = acc * r + coeffs[i]
            out[i - 1] = acc
        if acc * r + coeffs[0] != 0:
            raise ValueError(f"{r} is not a root")
        return IntPoly(tuple(out))

    def mod_coeffs(self, q: int) -> list[int]:
        return [c % q for c in self.coefficients]


def _hessenberg_charpoly_mod(M: list[list[int]], q: int) -> list[int]:
    """Monic characteristic polynomial of M over F_q, lowest-first."""
    n = len(M)
    H = [[x % q for x in row] for row in M]
    for j in range(n - 2):
        pivot = next((r for r in range(j + 1, n) if H[r][j]), None)
        if pivot is None:
            continue
        if pivot != j + 1:
            H[j + 1], H[pivot] = H[pivot], H[j + 1]
            for row in H:
                row[j + 1], row[pivot] = row[pivot], row[j + 1]
        pinv = pow(H[j + 1][j], q - 2, q)
        for i in range(j + 2, n):
            f = H[i][j] * pinv % q
            if not f:
                continue
            row_i, row_p = H[i], H[j + 1]
            for k in range(j, n):
                row_i[k] = (row_i[k] - f * row_p[k]) % q
            for r in range(n):
                H[r][j + 1] = (H[r][j + 1] + f * H[r][i]) % q
    # p_i = (x - H[i][i]) p_{i-1} - sum_j H[j][i] (prod subdiagonals) p_{j-1}
    polys = [[1]]
    for i in range(n):
        prev = polys[i]
        cur = [0] * (i + 2)
        for k, c in enumerate(prev):
            cur[k + 1] = (cur[k + 1] + c) % q
            cur[k] = (cur[k] - H[i][i] * c) % q
        beta = 1
        for j in range(i - 1, -1, -1):
            beta = beta * H[j + 1][j] % q
            coef = H[j][i] * beta % q
            if coef:
                for k, c in enumerate(polys[j]):
                    cur[k] = (cur[k] - coef * c) % q
        polys.append(cur)
    return polys[n]


def _coefficient_bound_bits(n: int, max_entry: int) -> float:
    if n == 0:
        return 2.0
    best = 0.0
    for k in range(1, n + 1):
        bits = (
            math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        ) / math.log(2) + k * math.log2(max(max_entry, 1) * math.sqrt(k))
        best = max(best, bits)
    return best


def charpoly_exact(M, dim_cap: int = _DIM_CAP) -> IntPoly:
    """Characteristic polynomial det(xI - M) over the integers."""
    rows = [list(map(int, row)) for row in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n > dim_cap:
        raise ResourceLimitError(f"dimension {n} exceeds cap {dim_cap}")
    if n == 0:
        return IntPoly((1,))
    max_entry = max(max(abs(x) for x in row) for row in rows)
    bits = _coefficient_bound_bits(n, max_entry) + 2
    primes = _reconstruction_primes(max(1, math.ceil(bits / 60.0)))

    images = [_hessenberg_charpoly_mod(rows, q) for q in primes]
    modulus = math.prod(primes)
    coeffs = []
    for k in range(n + 1):
        residue = 0
        for q, img in zip(primes, images):
            mq = modulus // q
            residue += mq * (img[k] * pow(mq, q - 2, q) % q)
        residue %= modulus
        if residue > modulus // 2:
            residue -= modulus
        coeffs.append(residue)
    return IntPoly(tuple(coeffs))
