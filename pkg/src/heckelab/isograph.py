"""Supersingular j-invariant enumeration and the (ell+1)-regular isogeny
multigraph on them.

Vertices come from the Legendre lambda-line: the roots of the Hasse
polynomial H(x) = sum_i binom((p-1)/2, i)^2 x^i are the supersingular
lambda-values, all lying in F_{p^2}; pushing them through
j = 256 (x^2-x+1)^3 / (x^2 (x-1)^2) and deduplicating yields the vertex
list without any point counting.  Edges come from the modular polynomial:
the (u, v) entry is the exact multiplicity of j_v among the roots of
Phi_ell(j_u, Y).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ConstructionError
from .fields import FieldElement, prime_field, quadratic_field
from .modpoly import modular_poly
from .ntutils import is_prime
from .polys import DensePoly, _fq2_kernel, _linear_exact_div, roots_in_fq2


def hasse_polynomial(p: int) -> DensePoly:
    """H(x) = sum_{i=0}^{m} binom(m, i)^2 x^i over F_p, m = (p-1)/2."""
    if p <= 3 or not is_prime(p):
        raise ValueError(f"p must be a prime > 3, got {p}")
    m = (p - 1) // 2
    coeffs = [0] * (m + 1)
    b = 1
    for i in range(m + 1):
        coeffs[i] = b * b % p
        b = b * (m - i) * pow(i + 1, p - 2, p) % p
    return DensePoly.from_ints(prime_field(p), coeffs)


def _lambda_to_j(lam: FieldElement) -> FieldElement:
    num = (lam * lam - lam + 1) ** 3 * 256
    den = (lam * lam) * (lam - 1) ** 2
    return num / den


@lru_cache(maxsize=256)
def _supersingular_j_cached(p: int, seed: int) -> tuple[FieldElement, ...]:
    lambdas = roots_in_fq2(hasse_polynomial(p), seed=seed)
    return tuple(sorted({_lambda_to_j(lam) for lam in lambdas}))


def supersingular_j(p: int, seed: int = 0) -> list[FieldElement]:
    """All supersingular j-invariants in characteristic p, deduplicated and
    sorted by (a, b) coordinates in F_{p^2}."""
    return list(_supersingular_j_cached(p, seed))


@dataclass
class IsogenyGraph:
    """The (ell+1)-regular multigraph of ell-isogenies at prime level p."""

    p: int
    ell: int
    vertices: list[FieldElement]
    adjacency: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def degree(self) -> int:
        return self.ell + 1

    def row_sums(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def is_connected(self) -> bool:
        n = self.n
        seen = np.zeros(n, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            u = stack.pop()
            for v in np.nonzero(self.adjacency[u])[0]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
        return bool(seen.all())


def build_graph(p: int, ell: int, seed: int = 0) -> IsogenyGraph:
    """Construct G(p, ell) for p = 1 mod 12; validates vertex count,
    (ell+1)-regularity and symmetry, raising ConstructionError on any miss."""
    if not is_prime(p) or p % 12 != 1:
        raise ValueError(f"graph levels are restricted to primes p = 1 mod 12, got {p}")
    if ell not in (2, 3, 5, 7, 11, 13):
        raise ValueError(f"walk prime ell must be in 2,3,5,7,11,13, got {ell}")
    if ell == p:
        raise ValueError("ell must differ from p")

    js = _supersingular_j_cached(p, seed)
    n = len(js)
    if n != (p - 1) // 12:
        raise ConstructionError(
            f"supersingular count {n} != (p-1)/12 = {(p - 1) // 12} at p={p}"
        )

    ker2 = _fq2_kernel(p)
    cmat = modular_poly(ell).reduced_mod(p)
    deg = ell + 1
    ja = np.array([v.a for v in js], np.int64)
    jb = np.array([v.b for v in js], np.int64)

    adjacency = np.zeros((n, n), np.int64)
    for u, ju in enumerate(js):
        # Y-coefficients of Phi_ell(j_u, Y): dot the coefficient columns
        # with powers of j_u.
        powers = [quadratic_field(p)(1)]
        for _ in range(deg):
            powers.append(powers[-1] * ju)
        ycoef_a = np.zeros(deg + 1, np.int64)
        ycoef_b = np.zeros(deg + 1, np.int64)
        for t in range(deg + 1):
            sa = sb = 0
            for i in range(deg + 1):
                c = cmat[i][t]
                if c:
                    sa += c * powers[i].a
                    sb += c * powers[i].b
            ycoef_a[t] = sa % p
            ycoef_b[t] = sb % p
        ypoly = ker2.trim((ycoef_a, ycoef_b))
        ea, eb = ker2.eval_many(ypoly, (ja, jb))
        hits = np.nonzero((ea == 0) & (eb == 0))[0]
        total = 0
        for v in hits:
            mult = _root_multiplicity(ker2, ypoly, int(ja[v]), int(jb[v]), p)
            adjacency[u, v] = mult
            total += mult
        if total != deg:
            raise ConstructionError(
                f"row sum {total} != {deg} at p={p}, ell={ell}, vertex {u}; "
                "modular polynomial or root data is inconsistent"
            )
    if not np.array_equal(adjacency, adjacency.T):
        raise ConstructionError(f"adjacency not symmetric at p={p}, ell={ell}")
    return IsogenyGraph(p=p, ell=ell, vertices=list(js), adjacency=adjacency)


def _root_multiplicity(ker2, ypoly, a: int, b: int, p: int) -> int:
    work = ker2.copy(ypoly)
    mult = 0
    while True:
        work = _linear_exact_div(ker2, work, a, b)
        if work is None:
            return mult
        mult += 1


def commutator_is_zero(g1: IsogenyGraph, g2: IsogenyGraph) -> bool:
    """Exact integer commutator test for two graphs at the same level."""
    if g1.p != g2.p:
        raise ValueError("graphs must share the level p")
    a, b = g1.adjacency, g2.adjacency
    return bool(np.array_equal(a @ b, b @ a))
