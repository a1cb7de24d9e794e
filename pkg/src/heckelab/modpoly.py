"""Classical modular polynomials for the isogeny relation of level ell.

The package bundles exact integer coefficient files for ell in
{2, 3, 5, 7, 11, 13}; `derive_modular_poly` recomputes any of them from
scratch out of the integer q-expansion of the j-function (elliptic-function
side: j = E4^3 / Delta) and is what generated the bundled data.

Derivation sketch: the roots of the level-ell relation in X over the
function field are j(ell*tau) and j((tau+b)/ell), b = 0..ell-1.  Their power
sums are integer q-series - the b-sum picks every ell-th coefficient of
powers of the j-expansion, so no root-of-unity arithmetic is needed - and
Newton's identities turn power sums into the elementary symmetric functions,
each of which is then matched against integer polynomials in j by peeling
principal parts.  Every step is exact; divisibility, order, symmetry and the
Kronecker congruence are asserted along the way.
"""

from __future__ import annotations

import importlib.resources
from functools import lru_cache
from pathlib import Path

from .errors import DataFormatError

SUPPORTED_LEVELS = (2, 3, 5, 7, 11, 13)


# ---------------------------------------------------------------------------
# Integer q-series helpers (plain dict: exponent -> coefficient)
# ---------------------------------------------------------------------------

def _series_mul(u: dict[int, int], v: dict[int, int], hi: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for ea, ca in u.items():
        if not ca:
            continue
        for eb, cb in v.items():
            e = ea + eb
            if e > hi or not cb:
                continue
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _series_add(u: dict[int, int], v: dict[int, int], sign: int = 1) -> dict[int, int]:
    out = dict(u)
    for e, c in v.items():
        out[e] = out.get(e, 0) + sign * c
    return {e: c for e, c in out.items() if c}


def _euler_phi_series(n_terms: int) -> list[int]:
    """prod (1 - q^n) up to q^(n_terms-1), via the pentagonal number theorem."""
    out = [0] * n_terms
    out[0] = 1
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= n_terms and e2 >= n_terms:
            break
        sign = -1 if k % 2 else 1
        if e1 < n_terms:
            out[e1] += sign
        if e2 < n_terms:
            out[e2] += sign
        k += 1
    return out


def _list_mul(u: list[int], v: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, ci in enumerate(u):
        if not ci or i >= n:
            continue
        for j, cj in enumerate(v):
            if i + j >= n:
                break
            if cj:
                out[i + j] += ci * cj
    return out


@lru_cache(maxsize=8)
def j_q_expansion(n_terms: int) -> tuple[int, ...]:
    """Coefficients c_{-1}, c_0, c_1, ... of j(tau) = 1/q + 744 + 196884 q + ...
    computed exactly as E4^3 / Delta.  Returns n_terms coefficients starting
    at the 1/q term.
    """
    n = n_terms
    sigma3 = [0] * n
    for d in range(1, n):
        for m in range(d, n, d):
            sigma3[m] += d * d * d
    e4 = [1] + [240 * sigma3[m] for m in range(1, n)]
    e4_3 = _list_mul(_list_mul(e4, e4, n), e4, n)

    phi = _euler_phi_series(n)
    phi2 = _list_mul(phi, phi, n)
    phi4 = _list_mul(phi2, phi2, n)
    phi8 = _list_mul(phi4, phi4, n)
    phi16 = _list_mul(phi8, phi8, n)
    delta_over_q = _list_mul(phi16, phi8, n)  # phi^24

    # Power-series inverse of Delta/q; integral because the series is monic.
    inv = [0] * n
    inv[0] = 1
    for m in range(1, n):
        acc = 0
        for k in range(1, m + 1):
            if delta_over_q[k]:
                acc += delta_over_q[k] * inv[m - k]
        inv[m] = -acc
    j = _list_mul(e4_3, inv, n)
    return tuple(j)


def derive_modular_poly(ell: int, check_terms: int = 1) -> list[list[int]]:
    """Exact coefficient matrix c[i][k] (X^i Y^k) of the level-ell modular
    polynomial, derived from the j-function q-expansion.  `check_terms` extra
    positive q-coefficients are verified to vanish after matching.
    """
    if ell < 2 or ell in (1,) or not all(ell % d for d in range(2, ell)):
        raise ValueError(f"ell must be prime >= 2, got {ell}")
    deg = ell + 1
    prec = check_terms
    hi = prec + ell * deg + ell + 2      # series precision for resynthesis
    s_hi = ell * (deg + 1 + prec) + ell  # s-precision feeding power-sum extraction
    n_j = max(hi, s_hi) + deg + 4

    j_coeffs = j_q_expansion(n_j + 1)
    J = {m - 1: c for m, c in enumerate(j_coeffs)}

    # Powers of J, truncated high; exact from below.
    J_pow: list[dict[int, int]] = [{0: 1}, dict(J)]
    for _ in range(2, deg + 1):
        J_pow.append(_series_mul(J_pow[-1], J, n_j))

    # Power sums of the deg roots, accurate on [-k*ell, ell + 1 + prec].
    t_s = deg + prec
    power_sums: list[dict[int, int]] = [{}]
    for k in range(1, deg + 1):
        s_k: dict[int, int] = {}
        for m, c in J_pow[k].items():
            if m % ell == 0 and m // ell <= t_s:
                s_k[m // ell] = s_k.get(m // ell, 0) + ell * c
            if ell * m <= t_s:
                s_k[ell * m] = s_k.get(ell * m, 0) + c
        power_sums.append(s_k)

    # Newton's identities; each e_k is matched to a polynomial in j as soon
    # as it is known, then resynthesized to full precision for later rounds.
    e_series: list[dict[int, int]] = [{0: 1}]
    e_polys: list[list[int]] = [[1]]
    for k in range(1, deg + 1):
        rhs: dict[int, int] = {}
        for i in range(1, k + 1):
            term = _series_mul(e_series[k - i], power_sums[i], prec)
            rhs = _series_add(rhs, term, 1 if i % 2 else -1)
        e_k: dict[int, int] = {}
        for e, c in rhs.items():
            if c % k:
                raise ArithmeticError(f"Newton identity not divisible by {k} at level {ell}")
            e_k[e] = c // k
        if e_k and min(e_k) < -deg:
            raise ArithmeticError(f"e_{k} has order below -(ell+1) at level {ell}")

        # Match against integer polynomials in j by peeling principal parts.
        gamma = [0] * (deg + 1)
        residue = dict(e_k)
        for m in range(deg, -1, -1):
            g = residue.get(-m, 0)
            gamma[m] = g
            if g:
                residue = _series_add(residue, {e: g * c for e, c in J_pow[m].items() if e <= prec}, -1)
        bad = {e: c for e, c in residue.items() if e <= prec and c}
        if bad:
            raise ArithmeticError(f"series residue after j-matching at level {ell}: {bad}")
        e_polys.append(gamma)

        resynth: dict[int, int] = {0: gamma[0]}
        for m in range(1, deg + 1):
            if gamma[m]:
                resynth = _series_add(resynth, {e: gamma[m] * c for e, c in J_pow[m].items() if e <= hi})
        e_series.append(resynth)

    coeffs = [[0] * (deg + 1) for _ in range(deg + 1)]
    for k in range(deg + 1):
        sign = -1 if k % 2 else 1
        for m, g in enumerate(e_polys[k]):
            coeffs[deg - k][m] = sign * g

    _validate(ell, coeffs)
    return coeffs


def _validate(ell: int, coeffs: list[list[int]]) -> None:
    deg = ell + 1
    if len(coeffs) != deg + 1 or any(len(row) != deg + 1 for row in coeffs):
        raise DataFormatError(f"level {ell}: coefficient matrix has wrong shape")
    for i in range(deg + 1):
        for k in range(i):
            if coeffs[i][k] != coeffs[k][i]:
                raise DataFormatError(f"level {ell}: asymmetric at ({i},{k})")
    if coeffs[deg][0] != 1 or any(coeffs[deg][k] for k in range(1, deg + 1)):
        raise DataFormatError(f"level {ell}: not monic of degree {deg}")
    # Kronecker congruence: Phi = (X^ell - Y)(X - Y^ell) mod ell.
    kron = [[0] * (deg + 1) for _ in range(deg + 1)]
    kron[deg][0] += 1
    kron[ell][ell] -= 1
    kron[1][1] -= 1
    kron[0][deg] += 1
    for i in range(deg + 1):
        for k in range(deg + 1):
            if (coeffs[i][k] - kron[i][k]) % ell:
                raise DataFormatError(f"level {ell}: Kronecker congruence fails at ({i},{k})")


# ---------------------------------------------------------------------------
# Bundled data
# ---------------------------------------------------------------------------

class ModularPolynomial:
    """Symmetric integer coefficient matrix of the level-ell modular
    polynomial, with per-prime reductions cached for graph construction."""

    def __init__(self, ell: int, coeffs: list[list[int]]):
        _validate(ell, coeffs)
        self.ell = ell
        self.coeffs = coeffs
        self._reduced: dict[int, list[list[int]]] = {}

    def coefficient(self, i: int, k: int) -> int:
        return self.coeffs[i][k]

    def reduced_mod(self, p: int) -> list[list[int]]:
        if p not in self._reduced:
            self._reduced[p] = [[c % p for c in row] for row in self.coeffs]
        return self._reduced[p]

    def evaluate(self, x: int, y: int) -> int:
        """Exact integer evaluation (used by tests and sanity checks)."""
        xs = [x ** i for i in range(self.ell + 2)]
        ys = [y ** k for k in range(self.ell + 2)]
        return sum(
            c * xs[i] * ys[k]
            for i, row in enumerate(self.coeffs)
            for k, c in enumerate(row)
            if c
        )


def _data_dir() -> Path:
    return Path(str(importlib.resources.files("heckelab") / "data"))


def write_data_file(ell: int, coeffs: list[list[int]], directory: Path) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"modpoly_{ell}.txt"
    lines = [f"# modular polynomial level {ell}; lines: ell i j coefficient (i >= j)"]
    for i in range(ell + 2):
        for k in range(i + 1):
            if coeffs[i][k]:
                lines.append(f"{ell} {i} {k} {coeffs[i][k]}")
    path.write_text("\n".join(lines) + "\n")
    return path


def read_data_file(path: Path, ell: int) -> list[list[int]]:
    deg = ell + 1
    coeffs = [[0] * (deg + 1) for _ in range(deg + 1)]
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise DataFormatError(f"{path}:{lineno}: expected 'ell i j coefficient'")
        file_ell, i, k, c = (int(x) for x in parts)
        if file_ell != ell:
            raise DataFormatError(f"{path}:{lineno}: level mismatch")
        if not (0 <= i <= deg and 0 <= k <= deg):
            raise DataFormatError(f"{path}:{lineno}: exponent out of range")
        coeffs[i][k] = c
        coeffs[k][i] = c
    return coeffs


@lru_cache(maxsize=None)
def modular_poly(ell: int) -> ModularPolynomial:
    """The bundled level-ell modular polynomial (ell in 2,3,5,7,11,13)."""
    if ell not in SUPPORTED_LEVELS:
        raise ValueError(f"modular polynomial data bundled only for {SUPPORTED_LEVELS}")
    path = _data_dir() / f"modpoly_{ell}.txt"
    if not path.exists():
        raise DataFormatError(f"missing bundled data file {path}")
    return ModularPolynomial(ell, read_data_file(path, ell))


def regenerate_data(levels=SUPPORTED_LEVELS, directory: Path | None = None) -> list[Path]:
    """Offline derivation path: recompute coefficient files from q-expansions."""
    directory = directory or _data_dir()
    return [write_data_file(ell, derive_modular_poly(ell), directory) for ell in levels]
