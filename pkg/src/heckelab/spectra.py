"""Hecke eigensystems read off the commuting family of isogeny-graph
adjacency matrices.

One seeded random positive combination of the matrices fixes a common
orthonormal eigenbasis; eigenvalues of each individual operator are then
Rayleigh quotients.  The all-ones direction (eigenvalue ell+1 on every
operator) is the Eisenstein direction and is excluded from the form list.
Eigenvalue data is extended to all n coprime to the level through the
multiplicative structure and the prime-power recurrence
lam(q^{k+1}) = lam(q) lam(q^k) - lam(q^{k-1}).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError, CoverageError, DegeneracyError
from .isograph import IsogenyGraph, build_graph, commutator_is_zero
from .jacobi import eig_sym
from .ntutils import dim_weight2, factorize, is_prime

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)
RESIDUAL_CAP = 1e-8
RAMANUJAN_SLACK = 1e-9


@dataclass
class Form:
    """One Hecke eigenform: eigenvalue data across the supported primes."""

    id: str
    level: int
    a: dict[int, float]
    lam: dict[int, float]
    theta: dict[int, float]
    residual: float

    def lambda_at(self, n: int) -> float:
        """lam(n) for any n coprime to the level whose prime factors are
        covered by this form's prime list."""
        if n < 1:
            raise ValueError("n must be positive")
        if math.gcd(n, self.level) != 1:
            raise ValueError(f"n={n} is not coprime to the level {self.level}")
        out = 1.0
        for q, e in factorize(n).items():
            if q not in self.lam:
                raise CoverageError(
                    f"prime {q} outside supported list {sorted(self.lam)} for level {self.level}"
                )
            out *= _lambda_prime_power(self.lam[q], e)
        return out

    def a_at(self, n: int) -> float:
        return self.lambda_at(n) * math.sqrt(n)


def _lambda_prime_power(lam_q: float, e: int) -> float:
    prev, cur = 1.0, lam_q
    if e == 0:
        return 1.0
    for _ in range(e - 1):
        prev, cur = cur, lam_q * cur - prev
    return cur


@dataclass
class EigenSystem:
    """Per-level table of eigenforms over a fixed prime list."""

    p: int
    primes: tuple[int, ...]
    forms: list[Form]
    n_vertices: int
    seed: int
    trivial_residual: float = 0.0
    graphs: dict[int, IsogenyGraph] = field(default_factory=dict, repr=False)

    @property
    def s(self) -> int:
        return len(self.forms)

    def lambda_at(self, form: Form, n: int) -> float:
        if math.gcd(n, self.p) != 1:
            raise ValueError(f"n={n} shares a factor with the level {self.p}")
        return form.lambda_at(n)

    def lambda_column(self, n: int) -> np.ndarray:
        """Vector of lam_f(n) over all forms."""
        return np.array([f.lambda_at(n) for f in self.forms])


def eigensystem(
    p: int,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    seed: int = 0,
    graphs: dict[int, IsogenyGraph] | None = None,
    max_retries: int = 8,
) -> EigenSystem:
    """Diagonalize the commuting family {B(ell)} at level p and return the
    nontrivial joint eigensystem, ordered by the eigenvalue at the smallest
    prime (ascending, ties broken at the next primes)."""
    if not is_prime(p) or p % 12 != 1:
        raise ValueError(f"level must be a prime = 1 mod 12, got {p}")
    primes = tuple(primes)
    if len(set(primes)) != len(primes):
        raise ValueError("prime list must be distinct")
    if any(q == p for q in primes):
        raise ValueError("walk primes must differ from the level")

    graphs = dict(graphs) if graphs else {}
    for q in primes:
        if q not in graphs:
            graphs[q] = build_graph(p, q, seed=seed)
    mats = {q: graphs[q].adjacency for q in primes}
    n = graphs[primes[0]].n

    for q1 in primes:
        for q2 in primes:
            if q1 < q2 and not commutator_is_zero(graphs[q1], graphs[q2]):
                raise ConstructionError(f"B({q1}) and B({q2}) do not commute at p={p}")

    floats = {q: mats[q].astype(float) for q in primes}
    last_gap = None
    for attempt in range(max_retries):
        rng = random.Random(f"{seed}:{attempt}:{p}")
        coeffs = [1.0 + rng.random() for _ in primes]
        combined = sum(c * floats[q] for c, q in zip(coeffs, primes))
        w, V = eig_sym(combined, tol=1e-12)

        a_table = np.empty((n, len(primes)))
        residuals = np.empty(n)
        for j in range(n):
            v = V[:, j]
            res = 0.0
            for idx, q in enumerate(primes):
                bv = floats[q] @ v
                a = float(v @ bv)
                a_table[j, idx] = a
                res = max(res, float(np.abs(bv - a * v).max()))
            residuals[j] = res
        if residuals.max() <= RESIDUAL_CAP:
            return _assemble(p, primes, n, seed, a_table, residuals, V, graphs)
        gaps = np.diff(np.sort(w))
        last_gap = float(gaps.min()) if len(gaps) else 0.0
    raise DegeneracyError(
        f"residual above {RESIDUAL_CAP} after {max_retries} reseedings at p={p}; "
        f"smallest combined-eigenvalue gap {last_gap:.3e}"
    )


def _assemble(p, primes, n, seed, a_table, residuals, V, graphs) -> EigenSystem:
    ones_overlap = np.abs(V.sum(axis=0))
    trivial = int(np.argmax(ones_overlap))
    expected = np.array([q + 1 for q in primes], dtype=float)
    if float(np.abs(a_table[trivial] - expected).max()) > 1e-6:
        raise ConstructionError(
            f"constant-direction eigenvector at p={p} does not carry eigenvalues ell+1"
        )

    order = sorted(
        (j for j in range(n) if j != trivial),
        key=lambda j: tuple(a_table[j]),
    )
    if len(order) != dim_weight2(p):
        raise ConstructionError(
            f"form count {len(order)} != s({p}) = {dim_weight2(p)}"
        )
    forms = []
    for rank, j in enumerate(order):
        a = {}
        lam = {}
        theta = {}
        for idx, q in enumerate(primes):
            a_val = float(a_table[j, idx])
            lam_val = a_val / math.sqrt(q)
            if abs(lam_val) > 2.0 + RAMANUJAN_SLACK:
                raise ConstructionError(
                    f"Ramanujan bound violated at p={p}, ell={q}: lambda={lam_val!r}"
                )
            lam_val = min(2.0, max(-2.0, lam_val))
            a[q] = a_val
            lam[q] = lam_val
            theta[q] = math.acos(lam_val / 2.0)
        forms.append(
            Form(
                id=f"f{rank}",
                level=p,
                a=a,
                lam=lam,
                theta=theta,
                residual=float(residuals[j]),
            )
        )
    return EigenSystem(
        p=p,
        primes=primes,
        forms=forms,
        n_vertices=n,
        seed=seed,
        trivial_residual=float(residuals[trivial]),
        graphs=graphs,
    )
