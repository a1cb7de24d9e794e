"""Truncated smoothed approximation to the symmetric-square L-value at 1,
and the harmonic-weight diagnostics built on it.

The test function is the standard bump exp(1 - 1/(1 - x^2)) on (-1, 1),
which is 1 at 0 and vanishes at the endpoints.  The truncated sum runs over
the indices nu <= x all of whose prime factors lie in the supported prime
list; terms outside that list are not computable from graph data and are
omitted (the remainder is only controlled on harmonic average anyway, so the
module reports stabilization diagnostics rather than accuracy claims).

Harmonic weights follow from the norm relation
4 pi ||f||^2 = s(N) / zeta(2) * L(sym^2 f, 1): each form gets
w_f = zeta(2) / (s(N) * L_f) with the truncated L in place of the true one.
"""

from __future__ import annotations

import math

from .errors import CoverageError
from .ntutils import primes_upto
from .spectra import EigenSystem, Form
from .verify import ReportRow

ZETA2 = math.pi**2 / 6.0


def bump(x: float) -> float:
    """exp(1 - 1/(1-x^2)) inside (-1, 1), zero outside; bump(0) = 1."""
    if abs(x) >= 1.0:
        return 0.0
    return math.exp(1.0 - 1.0 / (1.0 - x * x))


def sym2_coeff(form: Form, nu: int) -> float:
    """lam_{sym^2}(nu) = sum over t^2 k = nu, gcd(t, N) = 1 of lam_f(k^2)."""
    if nu < 1:
        raise ValueError("nu must be positive")
    total = 0.0
    t = 1
    while t * t <= nu:
        if nu % (t * t) == 0 and math.gcd(t, form.level) == 1:
            total += form.lambda_at((nu // (t * t)) ** 2)
        t += 1
    return total


def _smooth_indices(primes: tuple[int, ...], x: int) -> list[int]:
    out = [1]
    for q in primes:
        out = [v * q**e for v in out for e in range(int(math.log(x / v, q)) + 2) if v * q**e <= x]
    return sorted(set(out))


def l_sym2_smoothed(form: Form, x: int = 169) -> float:
    """Truncated smoothed sum  sum_{nu <= x} lam_{sym^2}(nu)/nu * bump(nu/x)
    over the indices supported by the prime list; positive at desk scale."""
    if x < 2:
        raise ValueError("truncation x must be >= 2")
    supported = tuple(sorted(form.lam))
    missing = [q for q in primes_upto(math.isqrt(x)) if q not in supported]
    if missing:
        max_x = min(missing) ** 2 - 1
        raise CoverageError(
            f"primes {missing} <= sqrt({x}) are not covered; max usable x is {max_x}"
        )
    total = 0.0
    for nu in _smooth_indices(supported, x):
        w = bump(nu / x)
        if w:
            total += sym2_coeff(form, nu) / nu * w
    return total


def harmonic_weights(es: EigenSystem, x: int = 169) -> dict[str, float]:
    """w_f = zeta(2) / (s * L_f) per form; all positive at desk scale."""
    s = es.s
    if s == 0:
        raise ValueError(f"level {es.p} has no forms")
    out = {}
    for f in es.forms:
        l_val = l_sym2_smoothed(f, x)
        if l_val <= 0:
            raise ArithmeticError(
                f"truncated L-value non-positive at p={es.p}, form {f.id}: {l_val}"
            )
        out[f.id] = ZETA2 / (s * l_val)
    return out


def harmonic_sum(
    es: EigenSystem,
    m: int,
    n: int,
    x: int = 169,
    weights: dict[str, float] | None = None,
    per_form_factor=None,
) -> float:
    """sum^h lam_f(m) lam_f(n), optionally with an extra per-form factor
    (used by the weight-removal duality check)."""
    weights = weights or harmonic_weights(es, x)
    total = 0.0
    for f in es.forms:
        term = weights[f.id] * f.lambda_at(m) * f.lambda_at(n)
        if per_form_factor is not None:
            term *= per_form_factor(f)
        total += term
    return total


def harmonic_check(es: EigenSystem, m: int, n: int, x: int = 169) -> ReportRow:
    """Petersson-shape diagnostic: harmonic average of lam(m) lam(n) against
    the diagonal main term, scale (mn)^(1/4) / p."""
    p = es.p
    if math.gcd(m * n, p) != 1:
        raise ValueError(f"m*n={m * n} must be coprime to the level {p}")
    lhs = harmonic_sum(es, m, n, x)
    main = 1.0 if m == n else 0.0
    residual = lhs - main
    scale = (m * n) ** 0.25 / p
    return ReportRow(
        inputs={"p": p, "m": m, "n": n},
        lhs=lhs,
        main=main,
        residual=residual,
        scale=scale,
        ratio=abs(residual) / scale,
        flags={"x": x},
    )


def weight_removal_duality_gap(es: EigenSystem, m: int, n: int, x: int = 169) -> float:
    """|harmonic sum with weights cancelled - plain average|: exactly the
    algebraic identity sum_f w_f (1/(s w_f)) lam lam = (1/s) sum_f lam lam,
    so the gap is pure floating-point noise."""
    weights = harmonic_weights(es, x)
    s = es.s
    reweighted = harmonic_sum(
        es, m, n, x, weights=weights, per_form_factor=lambda f: 1.0 / (s * weights[f.id])
    )
    plain = sum(f.lambda_at(m) * f.lambda_at(n) for f in es.forms) / s
    return abs(reweighted - plain)
