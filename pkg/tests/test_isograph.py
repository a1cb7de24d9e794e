import numpy as np
import pytest

from heckelab.isograph import build_graph, commutator_is_zero, hasse_polynomial, supersingular_j
from heckelab.modpoly import modular_poly


def _supersingular_js_by_point_count(p: int) -> set[tuple[int, int]]:
    """Independent oracle: sweep every j in F_{p^2}, count points of a curve
    with that j-invariant over F_{p^2}, and keep those with trace = 0 mod p.
    Curves: y^2 = x^3 + 3k x + 2k with k = j/(1728 - j), special-cased at
    j = 0 and j = 1728.
    """
    from heckelab.fields import quadratic_field

    ctx = quadratic_field(p)
    c = ctx.c
    q = p * p

    # All field elements as coordinate arrays, plus their cubes.
    aa, bb = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64))
    xa, xb = aa.ravel(), bb.ravel()

    def fmul(ua, ub, va, vb):
        return (ua * va + c * ub * vb) % p, (ua * vb + ub * va) % p

    x2a, x2b = fmul(xa, xb, xa, xb)
    x3a, x3b = fmul(x2a, x2b, xa, xb)

    # chi(u) via a lookup of the nonzero squares, encoded as a*p + b.
    is_sq = np.zeros(q, dtype=bool)
    sqa, sqb = fmul(xa, xb, xa, xb)
    is_sq[sqa * p + sqb] = True

    def chi_sum(A, B):
        """sum over x of chi(x^3 + A x + B) for field scalars A, B."""
        ta, tb = fmul(np.full_like(xa, A[0]), np.full_like(xb, A[1]), xa, xb)
        fa = (x3a + ta + B[0]) % p
        fb = (x3b + tb + B[1]) % p
        code = fa * p + fb
        nonzero = (fa != 0) | (fb != 0)
        return int(np.where(~nonzero, 0, np.where(is_sq[code], 1, -1)).sum())

    out = set()
    for ja in range(p):
        for jb in range(p):
            j = ctx(ja, jb)
            if j == ctx(0):
                A, B = (0, 0), (1, 0)
            elif j == ctx(1728 % p):
                A, B = (1, 0), (0, 0)
            else:
                k = j * (ctx(1728) - j).inverse()  # A = 3k, B = 2k via scaling trick
                a_el = ctx(3) * k
                b_el = ctx(2) * k
                A, B = (a_el.a, a_el.b), (b_el.a, b_el.b)
            n_points = q + 1 + chi_sum(A, B)
            trace = q + 1 - n_points
            if trace % p == 0:
                out.add((ja, jb))
    return out


@pytest.mark.parametrize("p,expected_count", [(11, 2), (13, 1), (37, 3)])
def test_supersingular_enumeration_matches_point_counts(p, expected_count):
    got = {(v.a, v.b) for v in supersingular_j(p)}
    oracle = _supersingular_js_by_point_count(p)
    assert got == oracle
    assert len(got) == expected_count


@pytest.mark.parametrize("p", [17, 19, 23, 29, 41])
def test_supersingular_enumeration_other_residue_classes(p):
    """The enumerator is not restricted to p = 1 mod 12; check every other
    residue class against the point-count sweep."""
    got = {(v.a, v.b) for v in supersingular_j(p)}
    assert got == _supersingular_js_by_point_count(p)


def test_supersingular_13_and_11_values():
    assert [str(v) for v in supersingular_j(13)] == ["5"]
    js11 = {str(v) for v in supersingular_j(11)}
    assert js11 == {"0", "1"}  # 1728 = 1 mod 11


def test_hasse_polynomial_shape():
    h = hasse_polynomial(13)
    assert h.degree == 6
    assert [c.a for c in h.coefficients] == [1, 36 % 13, 225 % 13, 400 % 13, 225 % 13, 36 % 13, 1]


def test_build_graph_13():
    g = build_graph(13, 2)
    assert g.adjacency.tolist() == [[3]]
    assert [str(v) for v in g.vertices] == ["5"]


def test_build_graph_37_spectrum():
    g = build_graph(37, 2)
    assert g.n == 3
    assert (g.row_sums() == 3).all()
    assert np.array_equal(g.adjacency, g.adjacency.T)
    eigs = sorted(np.linalg.eigvalsh(g.adjacency.astype(float)))
    assert np.allclose(eigs, [-2.0, 0.0, 3.0], atol=1e-8)


def test_build_graph_61():
    g = build_graph(61, 2)
    assert g.n == 5 and (g.row_sums() == 3).all()


def test_vertex_count_and_regularity_small_ladder():
    for p in (73, 97, 109):
        for ell in (2, 3):
            g = build_graph(p, ell)
            assert g.n == (p - 1) // 12
            assert (g.row_sums() == ell + 1).all()
            assert np.array_equal(g.adjacency, g.adjacency.T)
            assert g.is_connected()


def test_commutators_vanish_small():
    graphs = {ell: build_graph(97, ell) for ell in (2, 3, 5)}
    for e1 in (2, 3, 5):
        for e2 in (2, 3, 5):
            if e1 < e2:
                assert commutator_is_zero(graphs[e1], graphs[e2])


def test_build_graph_rejects_bad_levels():
    with pytest.raises(ValueError):
        build_graph(17, 2)  # 17 = 5 mod 12
    with pytest.raises(ValueError):
        build_graph(37, 37)
    with pytest.raises(ValueError):
        build_graph(37, 4)


def test_kronecker_congruence_all_levels():
    for ell in (2, 3, 5, 7, 11, 13):
        mp = modular_poly(ell)
        deg = ell + 1
        for i in range(deg + 1):
            for k in range(deg + 1):
                expected = 0
                if (i, k) == (deg, 0) or (i, k) == (0, deg):
                    expected = 1
                elif (i, k) in ((ell, ell), (1, 1)):
                    expected = -1
                assert (mp.coefficient(i, k) - expected) % ell == 0


def test_build_graph_seed_invariance():
    """Canonical vertex ordering makes the graph independent of the
    root-splitting seed."""
    g0 = build_graph(61, 2, seed=0)
    g1 = build_graph(61, 2, seed=12345)
    assert [str(v) for v in g0.vertices] == [str(v) for v in g1.vertices]
    assert np.array_equal(g0.adjacency, g1.adjacency)
