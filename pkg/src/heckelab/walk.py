"""Non-backtracking walk analysis on the isogeny graphs: the orthogonal
polynomials R_t for the p-adic measure, exact integer walk-count matrices,
the L2-variance of the t-step walk distribution in both its spectral and
combinatorial forms, and the cutoff profile W2(t) / N(t).

R_t in the U-basis is R_0 = 1, R_1 = U_1 and R_t = U_t - U_{t-2}/ell for
t >= 2; with the closed-form inner products this family is orthogonal with
squared norm (ell+1)/ell for every t >= 1, which is checked in the tests
rather than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CoverageError
from .isograph import IsogenyGraph
from .plancherel import chebyshev_U, inner_UU_closed
from .spectra import EigenSystem

_WORD_GUARD = 1 << 62


@dataclass(frozen=True)
class RPoly:
    """Orthogonal polynomial R_t in the Chebyshev-U basis."""

    t: int
    ell: int
    coeffs: dict[int, Fraction]

    def evaluate(self, x: float) -> float:
        return float(sum(float(c) * chebyshev_U(k, x) for k, c in self.coeffs.items()))

    def norm_sq_closed(self) -> Fraction:
        """Exact ||R_t||^2 against the ell-adic measure."""
        total = Fraction(0)
        for k1, c1 in self.coeffs.items():
            for k2, c2 in self.coeffs.items():
                total += c1 * c2 * inner_UU_closed(k1, k2, self.ell)
        return total


def r_poly(t: int, ell: int) -> RPoly:
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        coeffs = {0: Fraction(1)}
    elif t == 1:
        coeffs = {1: Fraction(1)}
    else:
        coeffs = {t: Fraction(1), t - 2: Fraction(-1, ell)}
    return RPoly(t=t, ell=ell, coeffs=coeffs)


def walk_count_total(ell: int, t: int) -> int:
    """N(t), the number of non-backtracking walks of length t from a vertex:
    (ell+1) ell^(t-1) for t >= 1, and 1 for t = 0."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return 1 if t == 0 else (ell + 1) * ell ** (t - 1)


@dataclass
class NBWalkSet:
    """Exact integer matrices A_t counting non-backtracking walks."""

    graph: IsogenyGraph
    tmax: int
    matrices: list[np.ndarray]

    def counts(self, t: int) -> np.ndarray:
        return self.matrices[t]


def nb_counts(graph: IsogenyGraph, tmax: int) -> NBWalkSet:
    """A_0 = I, A_1 = A, A_2 = A^2 - (ell+1) I, and
    A_{t+1} = A A_t - ell A_{t-1}; entries switch to arbitrary-precision
    integers once (ell+1) ell^(t-1) n would overflow a machine word."""
    if tmax < 1:
        raise ValueError("tmax must be >= 1")
    ell = graph.ell
    n = graph.n
    big = walk_count_total(ell, tmax) * max(n, 1) > _WORD_GUARD
    dtype = object if big else np.int64
    adj = graph.adjacency.astype(dtype)
    eye = np.eye(n, dtype=np.int64).astype(dtype)
    mats = [eye, adj.copy()]
    if tmax >= 2:
        mats.append(adj @ adj - (ell + 1) * eye)
    for t in range(3, tmax + 1):
        mats.append(adj @ mats[t - 1] - ell * mats[t - 2])
    for t in range(1, tmax + 1):
        target = walk_count_total(ell, t)
        sums = mats[t].sum(axis=1)
        if not all(int(s) == target for s in np.ravel(sums)):
            raise ArithmeticError(f"row sums of A_{t} differ from N({t})")
    return NBWalkSet(graph=graph, tmax=tmax, matrices=mats)


def variance_spectral(es: EigenSystem, ell: int, t: int) -> float:
    """W2(t) = (ell^t / n) * sum_f |R_t(cos theta_f(ell))|^2."""
    if ell not in es.primes:
        raise CoverageError(f"eigensystem at p={es.p} does not cover ell={ell}")
    rp = r_poly(t, ell)
    total = sum(rp.evaluate(math.cos(f.theta[ell])) ** 2 for f in es.forms)
    return (ell**t) * total / es.n_vertices


def variance_combinatorial(walks: NBWalkSet, t: int) -> float:
    """Same quantity from the exact counts: with P_t = A_t / N(t),
    W2(t) = (N(t)^2 / n) sum_{v,w} (P_t(v,w) - 1/n)^2, evaluated exactly as
    (tr A_t^2 - N(t)^2) / n before conversion to float."""
    if t < 1 or t > walks.tmax:
        raise ValueError(f"t={t} outside computed range 1..{walks.tmax}")
    a_t = walks.matrices[t]
    n = walks.graph.n
    tr = int(sum(int(x) for x in np.ravel(a_t * a_t.T)))
    nt = walk_count_total(walks.graph.ell, t)
    return float(Fraction(tr - nt * nt, n))


def matrix_identity_residual(walks: NBWalkSet, t: int) -> float:
    """Max entrywise error of A_t = ell^(t/2) R_t(A / (2 sqrt(ell))), with the
    right-hand side evaluated in floating point."""
    graph = walks.graph
    ell = graph.ell
    adj = graph.adjacency.astype(float)
    n = graph.n
    x = adj / (2.0 * math.sqrt(ell))
    rp = r_poly(t, ell)
    prev = np.eye(n)
    cur = 2.0 * x
    u_mats = {0: prev, 1: cur}
    for k in range(2, t + 1):
        prev, cur = cur, 2.0 * x @ cur - prev
        u_mats[k] = cur
    rhs = sum(float(c) * u_mats[k] for k, c in rp.coeffs.items())
    rhs = rhs * ell ** (t / 2.0)
    lhs = walks.matrices[t].astype(float)
    return float(np.abs(lhs - rhs).max())


def cutoff_profile(es: EigenSystem, ell: int, trange, eta: float = 0.1) -> list[dict]:
    """Per-t rows {t, W2, N_t, ratio, below_threshold}; the threshold flag
    marks t < (2 - eta) log_ell n."""
    n = es.n_vertices
    thresh = (2.0 - eta) * math.log(n) / math.log(ell) if n > 1 else 0.0
    rows = []
    for t in trange:
        w2 = variance_spectral(es, ell, t)
        nt = walk_count_total(ell, t)
        rows.append(
            {
                "t": t,
                "W2": w2,
                "N_t": nt,
                "ratio": w2 / nt,
                "below_threshold": t < thresh,
            }
        )
    return rows
