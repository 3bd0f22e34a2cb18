"""Kernel checks: both eigensolver lanes against LAPACK and each other."""

import numpy as np
import pytest

from entkit import _jacobi_py
from entkit.kernel import KERNEL_BACKEND, jacobi_eigh


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = (g + g.conj().T) / 2
    return h / max(1.0, np.abs(h).max())


LANES = [("active", jacobi_eigh), ("python", _jacobi_py.jacobi_eigh)]


@pytest.mark.parametrize("name,eig", LANES, ids=[n for n, _ in LANES])
def test_against_lapack_oracle(name, eig):
    for seed in range(60):
        n = int(np.random.default_rng(1000 + seed).integers(2, 33))
        h = random_hermitian(n, seed)
        w, v = eig(h)
        assert np.all(np.diff(w) >= 0)
        np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-12)
        assert np.abs(v @ np.diag(w) @ v.conj().T - h).max() <= 1e-10
        assert np.abs(v.conj().T @ v - np.eye(n)).max() <= 1e-10


@pytest.mark.parametrize("name,eig", LANES, ids=[n for n, _ in LANES])
def test_degenerate_and_trivial_inputs(name, eig):
    cases = [
        np.zeros((4, 4), dtype=complex),
        np.eye(5, dtype=complex) * 0.25,
        np.diag([1.0, 1.0, 1.0, 0.0]).astype(complex),
        np.diag([3.0, 1.0, 2.0]).astype(complex),
    ]
    for h in cases:
        w, v = eig(h)
        assert np.abs(v @ np.diag(w) @ v.conj().T - h).max() <= 1e-12
        np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-13)


def test_lane_parity():
    if KERNEL_BACKEND != "cython":
        pytest.skip("compiled kernel not available; nothing to compare")
    for seed in range(30):
        h = random_hermitian(4 + seed % 13, 2000 + seed)
        w_c, v_c = jacobi_eigh(h)
        w_p, v_p = _jacobi_py.jacobi_eigh(h)
        # identical rotation sequence; only summation-order noise may differ
        assert np.abs(w_c - w_p).max() <= 1e-11
        assert np.abs(v_c - v_p).max() <= 1e-11


def test_large_dimension_budget():
    h = random_hermitian(64, 7)
    w, v = jacobi_eigh(h)
    assert np.abs(v @ np.diag(w) @ v.conj().T - h).max() <= 1e-10
