"""Eigenvalue-tuple multiplicities, Hecke-field degree statistics from exact
characteristic polynomials, and closed-form evaluators for the three
multiplicity bounds.

Degree statistics: the characteristic polynomial of one Brandt matrix,
stripped of its trivial eigenvalue, is factored over Q.  Exact factorization
(sympy, Zassenhaus) is used up to degree 64; above that the partition is
inferred from distinct-degree factorization patterns modulo several
auxiliary primes and reported as a candidate, flagged inconclusive rather
than silently trusted.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np
import sympy

from .charpoly import IntPoly, charpoly_exact
from .errors import CoverageError
from .ntutils import primes_upto
from .polys import _fp_kernel, _gcd, _Modulus, _exact_div
from .spectra import EigenSystem

CLUSTER_GAP = 2e-6
GRID = 1e-6
EXACT_FACTOR_CAP = 64


# ---------------------------------------------------------------------------
# Tuple multiplicities
# ---------------------------------------------------------------------------

def _cluster_values(values: list[float], gap: float = CLUSTER_GAP) -> list[float]:
    """Map each value to its cluster representative (mean), clusters being
    maximal runs with consecutive gaps <= gap."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    reps = [0.0] * len(values)
    start = 0
    while start < len(order):
        end = start
        while (
            end + 1 < len(order)
            and values[order[end + 1]] - values[order[end]] <= gap
        ):
            end += 1
        members = order[start : end + 1]
        rep = sum(values[i] for i in members) / len(members)
        rep = round(rep / GRID) * GRID
        for i in members:
            reps[i] = rep
        start = end + 1
    return reps


def tuple_keys(es: EigenSystem, y: int) -> list[tuple]:
    """Per-form eigenvalue tuple keys over the primes <= y, on the
    clustering grid."""
    usable = [q for q in es.primes if q <= y]
    if y > max(es.primes):
        raise CoverageError(
            f"y={y} exceeds the supported prime cap; usable primes: {list(es.primes)}"
        )
    if not usable:
        raise CoverageError(f"no supported primes <= y={y}; usable: {list(es.primes)}")
    columns = {q: _cluster_values([f.lam[q] for f in es.forms]) for q in usable}
    return [tuple((q, columns[q][i]) for q in usable) for i in range(len(es.forms))]


def multiplicities(es: EigenSystem, y: int) -> dict[tuple, int]:
    """Partition of the eigenbasis by eigenvalue tuples at primes <= y;
    the value at a form's own key is its multiplicity M(y, form)."""
    out: dict[tuple, int] = {}
    for key in tuple_keys(es, y):
        out[key] = out.get(key, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Degree statistics
# ---------------------------------------------------------------------------

@dataclass
class DegreePartition:
    level: int
    operator_prime: int
    parts: list[int]
    conclusive: bool
    charpoly_nontrivial: IntPoly
    factors: list[IntPoly] = field(default_factory=list)
    candidates: list[list[int]] = field(default_factory=list)
    degree_of_form: list[int] = field(default_factory=list)
    note: str = ""


def _ddf_pattern(coeffs_mod: list[int], q: int) -> list[int] | None:
    """Degrees of irreducible factors of a squarefree monic polynomial over
    F_q via distinct-degree factorization; None when reduction mod q is not
    squarefree (bad prime)."""
    ker = _fp_kernel(q)
    f = ker.from_ints(coeffs_mod)
    if ker.deg(f) < 1:
        return []
    d = ker.derivative(f)
    if ker.is_zero(d) or ker.deg(_gcd(ker, f, d)) > 0:
        return None
    pattern: list[int] = []
    frob = None
    i = 0
    while ker.deg(f) >= 1:
        i += 1
        if 2 * i > ker.deg(f):
            pattern.append(ker.deg(f))
            break
        modctx = _Modulus(ker, f)
        if frob is None:
            frob = modctx.pow(ker.x(), q)
        else:
            frob = modctx.reduce(frob)
            frob = modctx.pow(frob, q)
        g = _gcd(ker, ker.sub(frob, ker.x()), f)
        if ker.deg(g) > 0:
            pattern.extend([i] * (ker.deg(g) // i))
            f = _exact_div(ker, f, g)
    return sorted(pattern)


def _sympy_factor_degrees(poly: IntPoly) -> tuple[list[int], list[IntPoly]]:
    x = sympy.symbols("x")
    expr = sympy.Poly(list(reversed(poly.coefficients)), x)
    _, factors = expr.factor_list()
    parts: list[int] = []
    out: list[IntPoly] = []
    for fac, mult in factors:
        deg = fac.degree()
        coeffs = [int(c) for c in reversed(fac.all_coeffs())]
        for _ in range(mult):
            parts.append(deg)
            out.append(IntPoly(tuple(coeffs)))
    return sorted(parts), out


def _factor_assignment(es: EigenSystem, ell: int, exact_cap: int):
    """Exact factorization of the nontrivial charpoly of B(ell) plus the
    form -> factor assignment by root matching at 1e-6.  Returns
    (nontrivial_poly, factor_polys, assignment) or (poly, None, None) when
    the degree exceeds the exact-reconstruction cap.  Repeated factors share
    one assignment key; the count per key must equal degree * multiplicity.
    """
    cp = charpoly_exact(es.graphs[ell].adjacency.tolist())
    nontrivial = cp.deflate_root(ell + 1)
    n = nontrivial.degree
    if n <= 0:
        return nontrivial, [], []
    if n > exact_cap:
        return nontrivial, None, None
    _, factors = _sympy_factor_degrees(nontrivial)
    distinct: dict[tuple, dict] = {}
    for f in factors:
        rec = distinct.setdefault(f.coefficients, {"poly": f, "mult": 0})
        rec["mult"] += 1
    keys = list(distinct)
    roots = {
        key: np.roots(np.array(list(reversed(key)), dtype=float)) for key in keys
    }
    assignment = []
    for form in es.forms:
        a = form.a[ell]
        best = min(
            ((float(np.min(np.abs(roots[key] - a))), key) for key in keys),
            key=lambda t: t[0],
        )
        if best[0] > 1e-6:
            raise CoverageError(
                f"form {form.id} at p={es.p}: eigenvalue {a} matched no factor root "
                f"of B({ell}) (closest {best[0]:.2e})"
            )
        assignment.append(best[1])
    for key, rec in distinct.items():
        hits = sum(1 for k in assignment if k == key)
        expected = rec["poly"].degree * rec["mult"]
        if hits != expected:
            raise CoverageError(
                f"factor of B({ell}) at p={es.p} matched {hits} forms, expected {expected}"
            )
    return nontrivial, factors, assignment


def degree_partition(
    es: EigenSystem,
    operator_prime: int = 2,
    aux_primes: int = 5,
    exact_cap: int = EXACT_FACTOR_CAP,
    seed: int = 0,
    refine_primes: tuple[int, ...] | None = None,
) -> DegreePartition:
    """Galois-orbit sizes of the eigenbasis, i.e. the observed Hecke-field
    degrees d(f).

    A single operator is not always enough: a conjugate pair can share a
    rational eigenvalue at some prime (observed at p = 193, where B(3) sees
    the degree-2 orbit as two rational roots), so orbits are cut as the
    common refinement of factor membership across all supported operator
    primes.  operator_prime only picks which factorization is exposed in
    `factors` for labelling/grouping downstream.
    """
    if operator_prime not in es.graphs:
        raise CoverageError(f"no graph for ell={operator_prime} at p={es.p}")
    refine = refine_primes or tuple(q for q in es.primes if q in es.graphs)
    if operator_prime not in refine:
        refine = (operator_prime,) + refine

    nontrivial, factors, assignment = _factor_assignment(es, operator_prime, exact_cap)
    if nontrivial.degree <= 0:
        return DegreePartition(es.p, operator_prime, [], True, nontrivial)

    if factors is None:
        # Beyond the exact-reconstruction cap: candidate patterns from
        # modular images; reported, never asserted.
        rng = random.Random(f"{seed}:{es.p}:{operator_prime}")
        pool = [q for q in primes_upto(1 << 23) if q > (1 << 22)]
        patterns: list[list[int]] = []
        while len(patterns) < aux_primes and pool:
            q = pool.pop(rng.randrange(len(pool)))
            pat = _ddf_pattern(nontrivial.mod_coeffs(q), q)
            if pat is not None:
                patterns.append(pat)
        uniq = sorted({tuple(p) for p in patterns})
        coarsest = min(patterns, key=len) if patterns else []
        return DegreePartition(
            es.p,
            operator_prime,
            list(coarsest),
            False,
            nontrivial,
            candidates=[list(u) for u in uniq],
            note=f"degree {nontrivial.degree} exceeds exact cap {exact_cap}",
        )

    orbit_key = [(assignment[i],) for i in range(len(es.forms))]
    for ell in refine:
        if ell == operator_prime:
            continue
        _, facs, assign = _factor_assignment(es, ell, exact_cap)
        if facs is None:
            continue
        orbit_key = [orbit_key[i] + (assign[i],) for i in range(len(es.forms))]
    sizes: dict[tuple, int] = {}
    for key in orbit_key:
        sizes[key] = sizes.get(key, 0) + 1
    degree_of_form = [sizes[key] for key in orbit_key]
    parts = sorted(sizes.values())
    return DegreePartition(
        es.p,
        operator_prime,
        parts,
        True,
        nontrivial,
        factors=factors,
        degree_of_form=degree_of_form,
    )


def tuple_count_by_degree(
    es: EigenSystem, y: int, partition: DegreePartition | None = None
) -> dict[int, int]:
    """Number of distinct eigenvalue-tuple keys carried by forms whose
    observed Hecke-field degree is d, for each d."""
    partition = partition or degree_partition(es)
    if not partition.conclusive:
        raise CoverageError(
            f"degree partition at p={es.p} is inconclusive; counts would be unreliable"
        )
    keys = tuple_keys(es, y)
    by_degree: dict[int, set] = {}
    for i in range(len(es.forms)):
        by_degree.setdefault(partition.degree_of_form[i], set()).add(keys[i])
    return {d: len(ks) for d, ks in sorted(by_degree.items())}


# ---------------------------------------------------------------------------
# Bound evaluators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    kind: str
    params: dict
    coefficient: float
    log_bound_factor: float
    bound_value: float
    vacuous: bool
    o_terms_dropped: bool = True
    empirical_value: int | None = None


def bound_eval(kind: str, params: dict, empirical_value: int | None = None) -> BoundReport:
    """Closed-form multiplicity bounds with every o(.) term set to zero.

    thm3: M(y, form) <= exp(-((1-b)/b) (log N)^b) s(N)      [y = (log N)^b]
    thm4: s(N)_d     <= exp(-c(d,b) (log N)^b) s(N),  c = (1-b)/b - d/2
    thm5: s(N)_d     <= exp(-((1-b)/b - dT/2) y) s(N), N not T-super-smooth
    """
    beta = params["beta"]
    if not 0 < beta < 1:
        raise ValueError("beta must lie in (0, 1)")
    log_n = params.get("log_N")
    if log_n is None:
        log_n = math.log(params["N"])
    y = log_n**beta
    base = (1.0 - beta) / beta
    if kind == "thm3":
        coeff = base
    elif kind == "thm4":
        coeff = base - params["d"] / 2.0
    elif kind == "thm5":
        coeff = base - params["d"] * params["T"] / 2.0
    else:
        raise ValueError(f"unknown bound kind {kind!r}")
    vacuous = coeff <= 0
    log_factor = -coeff * y
    s_n = params.get("s_N")
    bound = math.exp(log_factor) * s_n if s_n is not None else math.exp(log_factor)
    return BoundReport(
        kind=kind,
        params=dict(params),
        coefficient=coeff,
        log_bound_factor=log_factor,
        bound_value=bound,
        vacuous=vacuous,
        empirical_value=empirical_value,
    )
