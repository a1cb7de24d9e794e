import math
import random

import pytest

from heckelab.ntutils import (
    dedekind_psi,
    dim_weight2,
    divisor_count,
    is_prime,
    is_square_mod,
    legendre,
    level_ladder,
    nt_values,
    primes_upto,
    smallest_nonresidue,
    sqrt_mod,
)


def test_legendre_examples():
    assert legendre(1, 7) == 1
    # enumerated squares mod 13 are {1, 3, 4, 9, 10, 12}
    squares = {x * x % 13 for x in range(1, 13)}
    assert squares == {1, 3, 4, 9, 10, 12}
    assert legendre(3, 13) == 1
    assert legendre(2, 13) == -1
    assert legendre(13, 13) == 0


def test_legendre_matches_enumeration():
    for p in (3, 5, 7, 11, 13, 17, 31):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in squares else -1)


def test_legendre_rejects_non_prime():
    with pytest.raises(ValueError):
        legendre(3, 15)
    with pytest.raises(ValueError):
        legendre(3, 2)


def test_nt_values_examples():
    v = nt_values(12)
    assert v.d == 6 and v.psi == 24 and v.s is None
    v = nt_values(13, 3)
    assert v.s == 0 and v.delta_square == 1
    v = nt_values(37)
    assert v.s == 2 and v.psi == 38


def test_nt_values_rejects_shared_factor():
    with pytest.raises(ValueError):
        nt_values(12, 8)


def test_dimension_formula_both_residue_classes():
    # p = 1 mod 12 subtracts one; all other prime classes do not.
    assert dim_weight2(13) == 0
    assert dim_weight2(37) == 2
    assert dim_weight2(61) == 4
    assert dim_weight2(11) == 1
    assert dim_weight2(23) == 2


def test_divisor_count_against_enumeration():
    for n in range(1, 500):
        assert divisor_count(n) == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_dedekind_psi_values():
    from fractions import Fraction

    def brute(n):
        out = Fraction(n)
        for p in range(2, n + 1):
            if n % p == 0 and all(p % q for q in range(2, p)):
                out *= Fraction(p + 1, p)
        return int(out)

    for n in range(1, 200):
        assert dedekind_psi(n) == brute(n)


def test_is_square_mod_composite():
    # 25 = 5^2 is a square mod 12; 5 is not.
    assert is_square_mod(25, 12) == 1
    assert is_square_mod(5, 12) == 0
    for n in range(1, 37):
        if math.gcd(n, 37) == 1:
            brute = any(x * x % 37 == n % 37 for x in range(37))
            assert is_square_mod(n, 37) == int(brute)


def test_sqrt_mod_random():
    rng = random.Random(5)
    for p in (13, 97, 193, 769):
        for _ in range(20):
            a = rng.randrange(1, p)
            r = sqrt_mod(a, p)
            if legendre(a, p) == 1:
                assert r is not None and r * r % p == a
            else:
                assert r is None


def test_smallest_nonresidue():
    for p in (5, 13, 37, 97):
        c = smallest_nonresidue(p)
        assert legendre(c, p) == -1
        assert all(legendre(b, p) == 1 for b in range(2, c))


def test_primes_and_ladder():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    ladder = level_ladder(200)
    assert ladder == [13, 37, 61, 73, 97, 109, 157, 181, 193]
    assert all(is_prime(p) and p % 12 == 1 for p in level_ladder(2000))
