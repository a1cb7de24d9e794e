import math
from fractions import Fraction

import numpy as np
import pytest

from heckelab.plancherel import (
    SATO_TATE,
    UPoly,
    chebyshev_U,
    inner_UU_closed,
    inner_UU_quad,
    main_term,
    plancherel_measure,
    product_norm,
    quad_measure,
    residue_integral_closed,
    sin_ratio_grid_min,
    sin_ratio_max,
)


def test_chebyshev_base_cases():
    assert chebyshev_U(0, 0.37) == 1.0
    assert chebyshev_U(1, 0.37) == 0.74
    assert chebyshev_U(2, 0.5) == 0.0
    theta = 0.3
    assert abs(chebyshev_U(3, math.cos(theta)) * math.sin(theta) - math.sin(4 * theta)) < 1e-14


def test_inner_closed_values():
    for p in (2, 3, 5, 7, 11, 97):
        assert inner_UU_closed(0, 0, p) == 1
        assert inner_UU_closed(0, 1, p) == 0
        assert inner_UU_closed(1, 1, p) == Fraction(p + 1, p)
        assert inner_UU_closed(0, 2, p) == Fraction(1, p)


def test_closed_vs_quadrature_full_range():
    for p in (2, 3, 5, 7, 11):
        for m in range(13):
            for n in range(13):
                closed = inner_UU_closed(m, n, p)
                if (m - n) % 2:
                    assert closed == 0
                assert abs(inner_UU_quad(m, n, p) - float(closed)) <= 1e-9


def test_measure_masses():
    from heckelab.ntutils import primes_upto
    for p in primes_upto(97):
        assert abs(quad_measure(lambda t: np.ones_like(t), plancherel_measure(p)) - 1.0) <= 1e-10
    assert abs(quad_measure(lambda t: np.ones_like(t), SATO_TATE) - 1.0) <= 1e-10


def test_residue_recurrence_exact():
    for p in (2, 3, 5, 7, 11):
        alpha = Fraction(p) + Fraction(1, p)
        assert residue_integral_closed(0, p) == Fraction(p, p - 1)
        assert residue_integral_closed(1, p) == Fraction(1, p - 1)
        for T in range(21):
            assert (
                residue_integral_closed(T + 2, p)
                - alpha * residue_integral_closed(T + 1, p)
                + residue_integral_closed(T, p)
                == 0
            )


def test_moment_identity():
    """Integral of U_j alone: p^(-j/2) for even j, zero for odd."""
    for p in (2, 3, 5, 7):
        mu = plancherel_measure(p)
        for j in range(11):
            got = quad_measure(lambda t: chebyshev_U(j, np.cos(t)), mu)
            want = p ** (-j / 2) if j % 2 == 0 else 0.0
            assert abs(got - want) < 1e-9


def test_main_term():
    assert main_term(1, 1) == 1
    assert main_term(2, 3) == 0
    for q in (2, 3, 7, 13):
        assert main_term(q, q) == 1 + Fraction(1, q)
    # brute-force oracle over all pairs up to 40
    for m in range(1, 41):
        for n in range(1, 41):
            brute = Fraction(0)
            for d in range(1, math.gcd(m, n) + 1):
                if math.gcd(m, n) % d == 0:
                    for k in range(1, m * n + 1):
                        if d * d * k * k == m * n:
                            brute += Fraction(1, k)
            assert main_term(m, n) == brute, (m, n)


def test_main_term_inner_product_identity():
    for p in (2, 3, 5, 7):
        for a in range(7):
            for b in range(7):
                assert main_term(p**a, p**b) == inner_UU_closed(a, b, p)


def test_sato_tate_orthonormality():
    for m in range(8):
        for n in range(8):
            got = quad_measure(
                lambda t: chebyshev_U(m, np.cos(t)) * chebyshev_U(n, np.cos(t)), SATO_TATE
            )
            assert abs(got - (1.0 if m == n else 0.0)) <= 1e-9


def test_product_norm_examples():
    assert abs(product_norm(UPoly.single(1), [plancherel_measure(2)]) - 1.5) < 1e-15
    assert abs(product_norm(UPoly({(0,): 1.0}), [plancherel_measure(7)]) - 1.0) < 1e-15
    P = UPoly({(1, 1): 1.0})
    mus = [plancherel_measure(2), plancherel_measure(3)]
    assert abs(product_norm(P, mus) - 2.0) < 1e-15
    # mixed measures and complex coefficients
    P2 = UPoly({(1,): 1j, (0,): 1.0})
    assert abs(product_norm(P2, [SATO_TATE]) - 2.0) < 1e-15
    with pytest.raises(ValueError):
        product_norm(P, [plancherel_measure(2)])


def test_sin_ratio():
    assert sin_ratio_max(1.0, 0.7) >= 1.0
    assert sin_ratio_max(3.0, 0.0) == 4.0
    assert sin_ratio_max(2.7, 1.3) >= 0.5
    assert sin_ratio_grid_min(200_000, seed=7) >= 0.5 - 1e-12


def test_residue_integral_against_direct_quadrature():
    """The cosine-moment integral (p+1)/(4 pi) * int cos(k theta) /
    ((p-1)^2/(4p) + sin^2 theta) equals p/((p-1) p^(k/2)) for even k and
    vanishes for odd k."""
    x, w = np.polynomial.legendre.leggauss(256)
    theta = (x + 1.0) * (math.pi / 2.0)
    weights = w * (math.pi / 2.0)
    for p in (2, 3, 5, 7, 11):
        c = (p - 1) ** 2 / (4.0 * p)
        for k in range(0, 15):
            integrand = np.cos(k * theta) / (c + np.sin(theta) ** 2)
            got = (p + 1) / (4.0 * math.pi) * float(np.sum(integrand * weights))
            want = float(residue_integral_closed(k // 2, p)) if k % 2 == 0 else 0.0
            assert abs(got - want) <= 1e-9, (p, k, got, want)
