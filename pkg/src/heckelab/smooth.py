"""Smooth-number counting and the saddle-point approximation.

Counts are exact lattice-point recursions over prime-power exponents, so the
upper limit X may be an arbitrary-precision integer; nothing enumerates
integers up to X.  The Hildebrand-Tenenbaum evaluator comes in two modes:
`asymptotic` takes alpha = y / (log X log y) with the (1+o(1)) dropped, and
`saddle` solves sum_{q <= y} log q / (q^alpha - 1) = log X by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ntutils import primes_upto


def psi_exact(y: int, X: int) -> int:
    """Number of y-smooth integers <= X (m = 1 counts as smooth)."""
    if y < 2:
        raise ValueError("smoothness bound y must be >= 2")
    if X < 1:
        return 0
    return _count_rec(primes_upto(y), len(primes_upto(y)) - 1, X)


def phi_count(qs: list[int], X: int) -> int:
    """Number of exponent tuples (a_1..a_r) with prod q_i^(a_i) <= X."""
    qs = list(qs)
    if len(set(qs)) != len(qs):
        raise ValueError("primes must be distinct")
    if X < 1:
        return 0
    return _count_rec(qs, len(qs) - 1, X)


def _count_rec(qs: list[int], i: int, limit: int) -> int:
    if i < 0:
        return 1
    total = 0
    q = qs[i]
    while limit >= 1:
        total += _count_rec(qs, i - 1, limit)
        limit //= q
    return total


def coprime_primes(N: int, r: int) -> list[int]:
    """The first r primes not dividing N, ascending."""
    if r < 1:
        raise ValueError("r must be >= 1")
    bound = 64
    while True:
        out = [q for q in primes_upto(bound) if N % q]
        if len(out) >= r:
            return out[:r]
        bound *= 2


def pi_coprime(z: int, N: int) -> int:
    """pi(z; N): primes up to z that do not divide N."""
    return sum(1 for q in primes_upto(z) if N % q)


@dataclass(frozen=True)
class SupersmoothReport:
    flag: bool
    pi_yT_N: int
    pi_y: int
    cutoff: float


def is_supersmooth(N: int, y: int, T: int, cutoff: float = 0.5) -> SupersmoothReport:
    """T-super-smooth classifier: flags levels whose small primes are almost
    all divisors, measured by pi(y^T; N) / pi(y) < cutoff.  The asymptotic
    o(1) has no finite-N meaning, so the cutoff is an explicit policy and is
    recorded in the report."""
    if y < 2 or T < 1:
        raise ValueError("need y >= 2 and T >= 1")
    num = pi_coprime(y**T, N)
    den = max(len(primes_upto(y)), 1)
    return SupersmoothReport(flag=num / den < cutoff, pi_yT_N=num, pi_y=den, cutoff=cutoff)


@dataclass(frozen=True)
class HTApprox:
    alpha: float
    zeta_alpha_y: float
    psi_estimate: float
    log_psi: float
    log_psi_simple: float
    mode: str
    regime_warning: bool


def _zeta_partial(alpha: float, y: int) -> float:
    return math.prod(1.0 / (1.0 - q ** (-alpha)) for q in primes_upto(y))


def _saddle_alpha(log_x: float, y: int, tol: float = 1e-12) -> float:
    """Root of sum_{q <= y} log q / (q^alpha - 1) = log X, by bisection."""
    qs = primes_upto(y)

    def g(alpha: float) -> float:
        return sum(math.log(q) / (q**alpha - 1.0) for q in qs) - log_x

    lo, hi = 1e-12, 8.0
    while g(hi) > 0:
        hi *= 2.0
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if hi - lo < tol:
            break
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def ht_approx(X: int, y: int, mode: str = "saddle") -> HTApprox:
    """Smooth-count estimate X^alpha zeta(alpha, y) sqrt(log y / (2 pi y))
    with every o(1) factor set to zero, plus the simplified
    (y / log y) log(log X / y) form of its logarithm."""
    if y < 5:
        raise ValueError("y must be >= 5")
    if mode not in ("asymptotic", "saddle"):
        raise ValueError(f"unknown mode {mode!r}")
    log_x = math.log(X)
    regime_warning = y > log_x
    if mode == "asymptotic" and not regime_warning:
        alpha = y / (log_x * math.log(y))
    else:
        # Outside y <= log X the closed-form alpha is meaningless; fall back
        # to the saddle solve and leave the warning flag set.
        alpha = _saddle_alpha(log_x, y)
        mode = mode if not regime_warning else "saddle"
    zeta = _zeta_partial(alpha, y)
    log_psi = alpha * log_x + math.log(zeta) + 0.5 * math.log(math.log(y) / (2.0 * math.pi * y))
    simple = (y / math.log(y)) * math.log(log_x / y) if log_x > y else float("nan")
    return HTApprox(
        alpha=alpha,
        zeta_alpha_y=zeta,
        psi_estimate=math.exp(log_psi),
        log_psi=log_psi,
        log_psi_simple=simple,
        mode=mode,
        regime_warning=regime_warning,
    )


def stars_and_bars(A: int, B: int) -> int:
    """Number of non-negative integer solutions of x_1 + ... + x_A <= B."""
    return math.comb(A + B, A)
