import numpy as np
import pytest

from heckelab.errors import NumericError
from heckelab.jacobi import eig_sym


def test_examples():
    w, _ = eig_sym(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(w, [1.0, 3.0], atol=1e-12)
    w, _ = eig_sym(np.array([[3.0]]))
    assert w.tolist() == [3.0]
    w, _ = eig_sym(np.ones((3, 3)))
    assert np.allclose(w, [0.0, 0.0, 3.0], atol=1e-12)


def test_residual_contract_random():
    rng = np.random.default_rng(11)
    for n in (2, 5, 17, 40):
        A = rng.normal(size=(n, n))
        A = A + A.T
        w, V = eig_sym(A, tol=1e-12)
        norm = np.abs(A).max()
        assert np.abs(A @ V - V * w).max() <= 1e-12 * norm
        assert np.abs(V.T @ V - np.eye(n)).max() < 1e-12
        assert np.all(np.diff(w) >= 0)


def test_agrees_with_lapack_oracle():
    rng = np.random.default_rng(3)
    for n in (3, 8, 23):
        A = rng.integers(-5, 6, size=(n, n)).astype(float)
        A = A + A.T
        w, _ = eig_sym(A)
        ref = np.linalg.eigvalsh(A)
        assert np.allclose(w, ref, atol=1e-9)


def test_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        eig_sym(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        eig_sym(np.zeros((2, 3)))


def test_sweep_cap(monkeypatch):
    A = np.array([[2.0, 1.0], [1.0, 2.0]])
    with pytest.raises(NumericError):
        eig_sym(A, tol=1e-12, max_sweeps=0)
