import random
from collections import Counter

import pytest

from heckelab.fields import prime_field, quadratic_field
from heckelab.polys import DensePoly, multiplicity_of_root, roots_in_fq2


def test_roots_x2_minus_1_over_f5():
    f = DensePoly.from_ints(prime_field(5), [-1, 0, 1])
    assert [str(r) for r in roots_in_fq2(f)] == ["1", "4"]


def test_roots_x2_plus_1_over_f7_conjugate_pair():
    f = DensePoly.from_ints(prime_field(7), [1, 0, 1])
    roots = roots_in_fq2(f)
    assert len(roots) == 2
    assert all(not r.in_prime_field for r in roots)
    prod = roots[0] * roots[1]
    assert prod == quadratic_field(7)(1)
    assert roots[0] == roots[1].conj()


def test_double_root():
    f = DensePoly.from_ints(prime_field(11), [4, -4, 1])  # (x-2)^2
    assert [str(r) for r in roots_in_fq2(f)] == ["2", "2"]


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        roots_in_fq2(DensePoly.zero(prime_field(5)))


@pytest.mark.parametrize("p,seed", [(13, 0), (31, 1), (101, 2)])
def test_roots_match_brute_force(p, seed):
    rng = random.Random(seed)
    fp = prime_field(p)
    fq = quadratic_field(p)
    coeffs = [rng.randrange(p) for _ in range(rng.randrange(3, 9))] + [1]
    f = DensePoly.from_ints(fp, coeffs)
    got = Counter((r.a, r.b) for r in roots_in_fq2(f, seed=seed))
    brute = Counter()
    for a in range(p):
        for b in range(p):
            x = fq(a, b)
            m = 0
            if f.evaluate(x) == fq(0):
                m = multiplicity_of_root(f, x)
            if m:
                brute[(a, b)] = m
    assert got == brute


def test_roots_resubstitute_to_zero_and_multiplicity_cap():
    p = 37
    fp = prime_field(p)
    rng = random.Random(4)
    for _ in range(10):
        coeffs = [rng.randrange(p) for _ in range(rng.randrange(2, 14))] + [1]
        f = DensePoly.from_ints(fp, coeffs)
        roots = roots_in_fq2(f, seed=7)
        assert len(roots) <= f.degree
        for r in roots:
            assert f.evaluate(r) == quadratic_field(p)(0)


def test_roots_over_quadratic_coefficients():
    fq = quadratic_field(5)
    # (y - (1+2g)) * (y - 3)
    r1 = fq(1, 2)
    f = DensePoly.from_elements([r1 * fq(3), -(r1 + fq(3)), fq(1)])
    roots = roots_in_fq2(f, seed=1)
    assert Counter((r.a, r.b) for r in roots) == Counter([(1, 2), (3, 0)])


def test_determinism_across_seeds():
    f = DensePoly.from_ints(prime_field(97), list(range(1, 30)) + [1])
    assert roots_in_fq2(f, seed=1) == roots_in_fq2(f, seed=99)


def test_poly_arithmetic_roundtrip():
    fp = prime_field(13)
    a = DensePoly.from_ints(fp, [1, 2, 3])
    b = DensePoly.from_ints(fp, [5, 1])
    q, r = divmod(a * b + DensePoly.from_ints(fp, [7]), b)
    assert q * b + r == a * b + DensePoly.from_ints(fp, [7])
    assert a.gcd(a * b).monic() == a.monic()
