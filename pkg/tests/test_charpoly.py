import random
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from heckelab.charpoly import IntPoly, charpoly_exact
from heckelab.errors import ResourceLimitError


def _brute_charpoly(M):
    """det(xI - M) via the Leibniz formula over exact rationals."""
    n = len(M)

    def polymul(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    total = [Fraction(0)] * (n + 1)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = [Fraction(-1 if inv % 2 else 1)]
        for i in range(n):
            if i == perm[i]:
                term = polymul(term, [Fraction(-M[i][i]), Fraction(1)])
            else:
                term = polymul(term, [Fraction(-M[i][perm[i]])])
        for k in range(len(term)):
            total[k] += term[k]
    return tuple(int(c) for c in total[: n + 1])


def test_examples():
    assert charpoly_exact([[0, 1], [1, 0]]).coefficients == (-1, 0, 1)
    assert charpoly_exact([[2]]).coefficients == (-2, 1)
    assert charpoly_exact([[1] * 3] * 3).coefficients == (0, 0, -3, 1)


def test_against_leibniz_oracle():
    rng = random.Random(17)
    for _ in range(40):
        n = rng.randrange(1, 5)
        M = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(n)]
        assert charpoly_exact(M).coefficients == _brute_charpoly(M)


def test_numeric_spectrum_invariant():
    rng = random.Random(23)
    for _ in range(12):
        n = rng.randrange(2, 9)
        A = np.array([[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)])
        A = A + A.T
        cp = charpoly_exact(A)
        coeffs = np.array(cp.coefficients, dtype=float)
        for x in np.linalg.eigvalsh(A.astype(float)):
            acc = 0.0
            for c in coeffs[::-1]:
                acc = acc * x + c
            assert abs(acc) < 1e-8 * max(1.0, np.abs(coeffs).max())


def test_large_entries_need_many_primes():
    big = 10**40
    cp = charpoly_exact([[big, 1], [1, -big]])
    assert cp.coefficients == (-(big * big) - 1, 0, 1)


def test_dimension_cap():
    with pytest.raises(ResourceLimitError):
        charpoly_exact([[0] * 600] * 600)


def test_intpoly_deflate_and_eval():
    cp = IntPoly((0, -6, -1, 1))  # x(x-3)(x+2)
    assert cp(3) == 0 and cp(-2) == 0 and cp(1) == -6
    assert cp.deflate_root(3).coefficients == (0, 2, 1)
    with pytest.raises(ValueError):
        cp.deflate_root(5)
