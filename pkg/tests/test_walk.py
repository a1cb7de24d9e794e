from fractions import Fraction

import numpy as np

from heckelab.isograph import build_graph
from heckelab.plancherel import plancherel_measure, quad_measure
from heckelab.spectra import eigensystem
from heckelab.walk import (
    cutoff_profile,
    matrix_identity_residual,
    nb_counts,
    r_poly,
    variance_combinatorial,
    variance_spectral,
    walk_count_total,
)


def test_r_poly_coefficients():
    assert dict(r_poly(0, 2).coeffs) == {0: Fraction(1)}
    assert dict(r_poly(1, 2).coeffs) == {1: Fraction(1)}
    assert dict(r_poly(2, 2).coeffs) == {2: Fraction(1), 0: Fraction(-1, 2)}


def test_r_poly_normalization_closed_form():
    for ell in (2, 3, 5, 7):
        assert r_poly(0, ell).norm_sq_closed() == 1
        for t in range(1, 9):
            assert r_poly(t, ell).norm_sq_closed() == Fraction(ell + 1, ell)


def test_r_family_gram_by_quadrature():
    for ell in (2, 3, 5):
        mu = plancherel_measure(ell)
        polys = [r_poly(t, ell) for t in range(9)]
        for i, pi in enumerate(polys):
            for j, pj in enumerate(polys):
                got = quad_measure(
                    lambda th: np.vectorize(pi.evaluate)(np.cos(th))
                    * np.vectorize(pj.evaluate)(np.cos(th)),
                    mu,
                )
                want = 0.0 if i != j else (1.0 if i == 0 else (ell + 1) / ell)
                assert abs(got - want) <= 1e-9, (ell, i, j, got)


def test_nb_counts_examples():
    g = build_graph(37, 2)
    walks = nb_counts(g, 6)
    assert np.array_equal(walks.matrices[1], g.adjacency)
    a2 = g.adjacency @ g.adjacency - 3 * np.eye(3, dtype=np.int64)
    assert np.array_equal(walks.matrices[2], a2)
    for t in range(1, 7):
        assert (walks.matrices[t].sum(axis=1) == walk_count_total(2, t)).all()

    g13 = build_graph(13, 2)
    w13 = nb_counts(g13, 3)
    assert w13.matrices[3].tolist() == [[12]]


def test_walk_counts_nonnegative_and_exact_polynomial_identity():
    """A_t equals the integer polynomial Q_t(A) - Q_{t-2}(A) with
    Q_0 = 1, Q_1 = x, Q_{k+1} = x Q_k - ell Q_{k-1}; both sides exact."""
    for (p, ell) in ((37, 2), (61, 3), (73, 5)):
        g = build_graph(p, ell)
        walks = nb_counts(g, 8)
        adj = g.adjacency.astype(object)
        for t in range(1, 9):
            rhs = _q_poly(adj, ell, t)
            if t >= 2:
                rhs = rhs - _q_poly(adj, ell, t - 2)
            assert np.array_equal(walks.matrices[t].astype(object), rhs), (p, ell, t)
            assert (walks.matrices[t].astype(object) >= 0).all()


def _q_poly(adj, ell, k):
    n = adj.shape[0]
    prev = np.eye(n, dtype=object)
    if k == 0:
        return prev
    cur = adj.copy()
    for _ in range(k - 1):
        prev, cur = cur, adj @ cur - ell * prev
    return cur


def test_matrix_identity_float(es37):
    walks = nb_counts(es37.graphs[2], 10)
    for t in range(1, 11):
        assert matrix_identity_residual(walks, t) <= 1e-6


def test_variances_agree(es37):
    walks = nb_counts(es37.graphs[2], 10)
    for t in range(1, 11):
        ws = variance_spectral(es37, 2, t)
        wc = variance_combinatorial(walks, t)
        assert abs(ws - wc) <= 1e-6 * max(1.0, ws), (t, ws, wc)


def test_variance_examples(es37):
    assert abs(variance_spectral(es37, 2, 1) - 4.0 / 3.0) < 1e-12
    walks = nb_counts(es37.graphs[2], 2)
    assert abs(variance_combinatorial(walks, 1) - 4.0 / 3.0) < 1e-12
    # t = 0: (1/n) sum over forms of 1 = s/n
    assert abs(variance_spectral(es37, 2, 0) - 2.0 / 3.0) < 1e-15
    es13 = eigensystem(13, primes=(2, 3, 5, 7, 11))
    assert variance_spectral(es13, 2, 3) == 0.0


def test_big_t_switches_to_bigint():
    g = build_graph(37, 13)
    walks = nb_counts(g, 18)  # 14 * 13^17 overflows int64
    assert walks.matrices[18].dtype == object
    assert (walks.matrices[18].sum(axis=1) == walk_count_total(13, 18)).all()


def test_cutoff_profile_rows(es37):
    rows = cutoff_profile(es37, 2, range(1, 4))
    assert [r["t"] for r in rows] == [1, 2, 3]
    assert rows[0]["N_t"] == 3 and rows[1]["N_t"] == 6
    assert abs(rows[0]["ratio"] - 4.0 / 9.0) < 1e-12
