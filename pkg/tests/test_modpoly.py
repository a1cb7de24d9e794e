import mpmath as mp
import pytest

from heckelab.errors import DataFormatError
from heckelab.modpoly import (
    ModularPolynomial,
    SUPPORTED_LEVELS,
    derive_modular_poly,
    j_q_expansion,
    modular_poly,
    read_data_file,
    write_data_file,
)


def test_j_expansion_against_kleinj():
    """Numeric oracle: sum the exact integer q-expansion and compare with
    mpmath's Klein invariant (normalized J = j/1728)."""
    mp.mp.dps = 50
    coeffs = j_q_expansion(80)
    for tau in (mp.mpc(0.0, 1.1), mp.mpc(0.3, 0.9)):
        q = mp.exp(2j * mp.pi * tau)
        series = sum(c * q ** (k - 1) for k, c in enumerate(coeffs))
        reference = 1728 * mp.kleinj(tau)
        assert abs(series - reference) < mp.mpf("1e-25") * abs(reference)


def test_level2_frozen_coefficients():
    mp2 = modular_poly(2)
    assert mp2.coefficient(2, 2) == -1
    assert mp2.coefficient(0, 0) == -157464000000000
    assert mp2.coefficient(3, 0) == 1 and mp2.coefficient(0, 3) == 1
    assert mp2.coefficient(2, 1) == 1488 and mp2.coefficient(1, 1) == 40773375


def test_symmetry_all_levels():
    for ell in SUPPORTED_LEVELS:
        mpoly = modular_poly(ell)
        deg = ell + 1
        for i in range(deg + 1):
            for k in range(deg + 1):
                assert mpoly.coefficient(i, k) == mpoly.coefficient(k, i)


@pytest.mark.parametrize("ell", [2, 3, 5])
def test_bundled_matches_fresh_derivation(ell):
    assert derive_modular_poly(ell) == modular_poly(ell).coeffs


@pytest.mark.parametrize("ell", [2, 7, 13])
def test_vanishes_on_isogenous_j_pairs(ell):
    """Independent oracle: Phi_ell(j(ell tau), j(tau)) = 0 at transcendental
    points, evaluated with mpmath's kleinj at high precision."""
    mp.mp.dps = 420
    mpoly = modular_poly(ell)
    tau = mp.mpc(0.137, 1.03)
    x = 1728 * mp.kleinj(ell * tau)
    y = 1728 * mp.kleinj(tau)
    xs = [x**i for i in range(ell + 2)]
    ys = [y**k for k in range(ell + 2)]
    total = mp.mpf(0)
    scale = mp.mpf(0)
    for i, row in enumerate(mpoly.coeffs):
        for k, c in enumerate(row):
            if c:
                term = c * xs[i] * ys[k]
                total += term
                scale = max(scale, abs(term))
    assert abs(total) / scale < mp.mpf("1e-300")


def test_unsupported_level_rejected():
    with pytest.raises(ValueError):
        modular_poly(17)
    with pytest.raises(ValueError):
        derive_modular_poly(4)


def test_data_file_roundtrip_and_validation(tmp_path):
    coeffs = derive_modular_poly(2)
    path = write_data_file(2, coeffs, tmp_path)
    assert read_data_file(path, 2) == coeffs

    # Corrupt one coefficient: the Kronecker congruence check must fire.
    bad = [row[:] for row in coeffs]
    bad[1][0] += 1
    bad[0][1] += 1
    with pytest.raises(DataFormatError):
        ModularPolynomial(2, bad)

    # Asymmetric data is rejected before anything else.
    bad2 = [row[:] for row in coeffs]
    bad2[1][0] += 2
    with pytest.raises(DataFormatError):
        ModularPolynomial(2, bad2)

    path.write_text("2 0 0 nonsense\n")
    with pytest.raises(ValueError):
        read_data_file(path, 2)
