"""Finite-level verifiers for the trace-average estimate and the two
convergence theorems.  Each check emits a uniform ReportRow comparing a
spectral average against its main term, together with the shape of the
theoretical error term evaluated without its (unknowable) implied constant.
Rows never hard-fail on asymptotic statements; trend policy lives with the
acceptance harness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ntutils import dedekind_psi, divisor_count, is_square_mod
from .plancherel import UPoly, main_term, plancherel_measure, product_norm
from .spectra import EigenSystem


@dataclass
class ReportRow:
    """Uniform verifier record: residual = lhs - main exactly as computed;
    ratio = |residual| / scale (lhs / main for the multiplicative theorem)."""

    inputs: dict
    lhs: float
    main: float
    residual: float
    scale: float
    ratio: float
    main_exact: Fraction | None = None
    flags: dict = field(default_factory=dict)

    def csv_fields(self) -> dict:
        return {
            "p": self.inputs.get("p", ""),
            "m": self.inputs.get("m", ""),
            "n": self.inputs.get("n", ""),
            "lhs": self.lhs,
            "main": self.main,
            "residual": self.residual,
            "scale": self.scale,
            "ratio": self.ratio,
        }


def eq_one_check(es: EigenSystem, n: int) -> ReportRow:
    """Average of lam_f(n) against its main term delta * psi(p) / (12 s(p)).

    |residual| is exactly the normalized deviation
    (1/s) |sum_f lam_f(n) - delta * psi(p)/12|, and the reference scale is
    (n/p)^(1/2) d(p).  No pass/fail: the implied constant is not computable.
    """
    p = es.p
    if math.gcd(n, p) != 1:
        raise ValueError(f"n={n} must be coprime to the level {p}")
    s = es.s
    if s == 0:
        raise ValueError(f"level {p} has an empty eigenbasis; nothing to average")
    delta = is_square_mod(n, p)
    psi = dedekind_psi(p)
    lam_sum = float(sum(f.lambda_at(n) for f in es.forms))
    main_exact = Fraction(delta * psi, 12 * s)
    lhs = lam_sum / s
    main = float(main_exact)
    residual = lhs - main
    scale = math.sqrt(n / p) * divisor_count(p)
    return ReportRow(
        inputs={"p": p, "n": n, "m": ""},
        lhs=lhs,
        main=main,
        residual=residual,
        scale=scale,
        ratio=abs(residual) / scale,
        main_exact=main_exact,
        flags={
            "delta_square": delta,
            "sum_lambda": lam_sum,
            "main_times_s": float(Fraction(delta * psi, 12)),
        },
    )


def thm1_check(es: EigenSystem, m: int, n: int) -> ReportRow:
    """Second-moment average (1/s) sum_f lam_f(m) lam_f(n) against the
    divisor main term, with reference scale (mn)^(1/8) / p^(1/2)."""
    p = es.p
    if math.gcd(m * n, p) != 1:
        raise ValueError(f"m*n={m * n} must be coprime to the level {p}")
    s = es.s
    if s == 0:
        raise ValueError(f"level {p} has an empty eigenbasis; nothing to average")
    lhs = sum(f.lambda_at(m) * f.lambda_at(n) for f in es.forms) / s
    main_exact = main_term(m, n)
    main = float(main_exact)
    residual = lhs - main
    scale = (m * n) ** 0.125 / math.sqrt(p)
    return ReportRow(
        inputs={"p": p, "m": m, "n": n},
        lhs=lhs,
        main=main,
        residual=residual,
        scale=scale,
        ratio=abs(residual) / scale,
        main_exact=main_exact,
    )


def thm2_check(
    es: EigenSystem,
    primes: tuple[int, ...],
    P: UPoly,
    eta: float = 0.1,
) -> ReportRow:
    """Plancherel-convergence check: the spectral average of |P|^2 over
    eigenvalue angles, expanded through the Hecke relations into lam values,
    against the exact product-measure norm of P.  Range violations against
    prod p_i^(cap_i) < p^(2 - eta) raise a warning flag, not a failure."""
    p = es.p
    primes = tuple(primes)
    if len(primes) != P.arity:
        raise ValueError("prime tuple length must match the polynomial arity")
    if any(math.gcd(q, p) != 1 for q in primes):
        raise ValueError("primes must be coprime to the level")
    s = es.s
    if s == 0:
        raise ValueError(f"level {p} has an empty eigenbasis; nothing to average")

    keys = [
        (math.prod(q**t for q, t in zip(primes, key)), a) for key, a in P.coeffs.items()
    ]
    total = 0.0
    for f in es.forms:
        acc = sum(a * f.lambda_at(m_t) for m_t, a in keys)
        total += abs(acc) ** 2
    lhs = total / s

    main = product_norm(P, [plancherel_measure(q) for q in primes])
    caps = P.degree_caps()
    range_quantity = math.prod(q**c for q, c in zip(primes, caps))
    in_range = range_quantity < p ** (2.0 - eta)
    residual = lhs - main
    scale = main * (range_quantity / p**2) ** 0.25
    return ReportRow(
        inputs={"p": p, "m": range_quantity, "n": range_quantity},
        lhs=lhs,
        main=main,
        residual=residual,
        scale=scale,
        ratio=lhs / main if main else math.inf,
        flags={"range_ok": in_range, "eta": eta, "degree_caps": caps},
    )


def median(values: list[float]) -> float:
    vals = sorted(values)
    k = len(vals)
    if k == 0:
        raise ValueError("median of empty list")
    mid = k // 2
    return vals[mid] if k % 2 else (vals[mid - 1] + vals[mid]) / 2.0


def trend_inversions(series: list[float]) -> int:
    """Number of strict increases between consecutive entries."""
    return sum(1 for a, b in zip(series, series[1:]) if b > a)
