"""Dense complex matrix kernel: tensor products, partial trace/transpose,
subsystem permutations, and the Hermitian eigendecomposition.

All operators are numpy complex128 arrays in row-major layout; subsystem
dimensions are passed alongside as a list/tuple. Everything here is a pure
function of its inputs.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .kernel import jacobi_eigh

HERMITICITY_TOL = 1e-10


class HermitianEigenResult(NamedTuple):
    """Spectrum (ascending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m, square=False) -> np.ndarray:
    """Validate and convert to a 2-D complex128 array with finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    if square and a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def as_vector(v) -> np.ndarray:
    """Validate and convert to a 1-D complex128 array with finite entries."""
    a = np.asarray(v, dtype=np.complex128).ravel()
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("vector entries must be finite (no NaN/Inf)")
    return a


def dagger(a) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def tensor(a, b, *rest) -> np.ndarray:
    """Kronecker product with block ordering (a ox b)[i*rb+k, j*cb+l] = a[i,j] b[k,l]."""
    out = np.kron(as_matrix(a), as_matrix(b))
    for m in rest:
        out = np.kron(out, as_matrix(m))
    return out


def _check_dims(rho: np.ndarray, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be positive, got {dims}")
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(f"matrix shape {rho.shape} does not match dims {dims}")
    return dims


def partial_trace(rho, dims: Sequence[int], keep) -> np.ndarray:
    """Trace out all subsystems except ``keep`` (an index or a tuple of indices).

    The kept subsystems stay in their original relative order; the trace of
    the input is preserved.
    """
    rho = as_matrix(rho, square=True)
    dims = _check_dims(rho, dims)
    n = len(dims)
    keep_t = (keep,) if np.isscalar(keep) else tuple(keep)
    keep_t = tuple(int(k) for k in keep_t)
    if any(k < 0 or k >= n for k in keep_t) or len(set(keep_t)) != len(keep_t):
        raise ValueError(f"invalid keep={keep!r} for {n} subsystems")
    t = rho.reshape(dims + dims)
    # row axis k gets label k; column axis k shares the label iff traced out
    row = list(range(n))
    col = [k if k not in keep_t else n + k for k in range(n)]
    out_axes = [k for k in keep_t] + [n + k for k in keep_t]
    reduced = np.einsum(t, row + col, out_axes)
    d_keep = int(np.prod([dims[k] for k in keep_t]))
    return reduced.reshape(d_keep, d_keep)


def partial_transpose(rho, dims: Sequence[int], subsystem: int) -> np.ndarray:
    """Transpose a single subsystem: (rho^{T_A})_{m mu, n nu} = rho_{n mu, m nu}."""
    rho = as_matrix(rho, square=True)
    dims = _check_dims(rho, dims)
    n = len(dims)
    if not 0 <= subsystem < n:
        raise ValueError(f"invalid subsystem {subsystem} for {n} subsystems")
    t = rho.reshape(dims + dims)
    axes = list(range(2 * n))
    axes[subsystem], axes[n + subsystem] = axes[n + subsystem], axes[subsystem]
    total = rho.shape[0]
    return t.transpose(axes).reshape(total, total)


def permute_subsystems(rho, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder subsystems so that output slot k carries input subsystem perm[k]."""
    rho = as_matrix(rho, square=True)
    dims = _check_dims(rho, dims)
    n = len(dims)
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        raise ValueError(f"perm {perm} is not a permutation of 0..{n - 1}")
    t = rho.reshape(dims + dims)
    axes = perm + [n + p for p in perm]
    total = rho.shape[0]
    return t.transpose(axes).reshape(total, total)


def permute_vector(psi, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Same reordering as permute_subsystems, for state vectors."""
    psi = as_vector(psi)
    dims = tuple(int(d) for d in dims)
    if psi.size != int(np.prod(dims)):
        raise ValueError(f"vector size {psi.size} does not match dims {dims}")
    n = len(dims)
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        raise ValueError(f"perm {perm} is not a permutation of 0..{n - 1}")
    return psi.reshape(dims).transpose(perm).ravel()


def hermiticity_defect(m) -> float:
    """Max-entry distance from the Hermitian part, ||m - m^dag||_max."""
    m = np.asarray(m)
    return float(np.abs(m - dagger(m)).max()) if m.size else 0.0


def require_hermitian(m, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Check Hermiticity within ``tol`` and return the symmetrized matrix."""
    m = as_matrix(m, square=True)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian: ||m - m^dag||_max = {defect:.3e} > {tol:.1e}")
    return (m + dagger(m)) / 2.0


def hermitian_eig(h, tol: float = HERMITICITY_TOL) -> HermitianEigenResult:
    """Full spectrum and orthonormal eigenbasis of a Hermitian matrix.

    Cyclic Jacobi rotations (compiled kernel when available). The input is
    symmetrized before diagonalization; inputs farther than ``tol`` from
    Hermitian are rejected.
    """
    h = require_hermitian(h, tol=tol)
    w, v = jacobi_eigh(h)
    return HermitianEigenResult(eigenvalues=w, eigenvectors=v)


def min_eigenvalue(h, tol: float = HERMITICITY_TOL) -> float:
    return float(hermitian_eig(h, tol=tol).eigenvalues[0])


def eigenvalues_descending(h, tol: float = HERMITICITY_TOL) -> np.ndarray:
    return hermitian_eig(h, tol=tol).eigenvalues[::-1].copy()
