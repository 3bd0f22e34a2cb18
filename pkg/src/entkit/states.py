"""State containers and factories: Bell/GHZ/W vectors, isotropic (Werner)
states, the symmetric/antisymmetric projector family, and seeded random
states used across the test and CLI surfaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg

TRACE_TOL = 1e-10
NORM_TOL = 1e-12
DEFAULT_PSD_TOL = 1e-10

BELL_KINDS = ("phi+", "phi-", "psi+", "psi-")


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator with subsystem dims.

    The stored matrix is the symmetrized ((M + M^dag)/2) version of the input;
    construction fails if any invariant is violated beyond its tolerance.
    """

    mat: np.ndarray
    dims: tuple[int, ...]
    psd_tol: float = DEFAULT_PSD_TOL

    def __post_init__(self):
        mat = linalg.as_matrix(self.mat, square=True)
        dims = tuple(int(d) for d in self.dims)
        if int(np.prod(dims)) != mat.shape[0]:
            raise ValueError(f"dims {dims} do not match matrix of size {mat.shape[0]}")
        mat = linalg.require_hermitian(mat)
        tr = float(np.trace(mat).real)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace must be 1, got {tr!r} (defect {abs(tr - 1.0):.3e})")
        lo = linalg.min_eigenvalue(mat)
        if lo < -self.psd_tol:
            raise ValueError(f"not positive semidefinite: min eigenvalue {lo:.3e} < -{self.psd_tol:.1e}")
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class PureState:
    """Normalized complex state vector with subsystem dims."""

    vec: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        vec = linalg.as_vector(self.vec)
        dims = tuple(int(d) for d in self.dims)
        if int(np.prod(dims)) != vec.size:
            raise ValueError(f"dims {dims} do not match vector of size {vec.size}")
        nrm = float(np.linalg.norm(vec))
        if abs(nrm - 1.0) > NORM_TOL:
            raise ValueError(f"vector must be normalized, ||v|| = {nrm!r}")
        object.__setattr__(self, "vec", vec)
        object.__setattr__(self, "dims", dims)

    def to_density(self, psd_tol: float = DEFAULT_PSD_TOL) -> DensityMatrix:
        return DensityMatrix(np.outer(self.vec, np.conj(self.vec)), self.dims, psd_tol)


def ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=np.complex128)
    v[index] = 1.0
    return v


def max_entangled(d: int) -> PureState:
    """The d x d maximally entangled vector sum_i |ii> / sqrt(d)."""
    v = np.zeros(d * d, dtype=np.complex128)
    for i in range(d):
        v[i * d + i] = 1.0
    return PureState(v / np.sqrt(d), (d, d))


def max_entangled_projector(d: int) -> np.ndarray:
    psi = max_entangled(d).vec
    return np.outer(psi, np.conj(psi))


def maximally_mixed(dims) -> DensityMatrix:
    dims = tuple(int(d) for d in dims)
    n = int(np.prod(dims))
    return DensityMatrix(np.eye(n, dtype=np.complex128) / n, dims)


def bell(kind: str) -> PureState:
    """One of the four Bell states: kind in {phi+, phi-, psi+, psi-}."""
    kind = kind.lower()
    s = np.sqrt(0.5)
    table = {
        "phi+": [s, 0, 0, s],
        "phi-": [s, 0, 0, -s],
        "psi+": [0, s, s, 0],
        "psi-": [0, s, -s, 0],
    }
    if kind not in table:
        raise ValueError(f"unknown Bell state {kind!r}; expected one of {BELL_KINDS}")
    return PureState(np.array(table[kind], dtype=np.complex128), (2, 2))


def isotropic(p: float, d: int = 2) -> DensityMatrix:
    """(1-p) * identity/d^2 + p * projector onto the maximally entangled state.

    For d = 2 this is the Werner family: an admixture of |phi+> to the
    identity, entangled exactly for p > 1/3.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter p must be in [0, 1], got {p}")
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    n = d * d
    mat = (1.0 - p) * np.eye(n, dtype=np.complex128) / n + p * max_entangled_projector(d)
    return DensityMatrix(mat, (d, d))


def werner(p: float) -> DensityMatrix:
    """Two-qubit isotropic state (the Werner family of the two-qubit case)."""
    return isotropic(p, d=2)


def ghz() -> PureState:
    v = np.zeros(8, dtype=np.complex128)
    v[0] = v[7] = np.sqrt(0.5)
    return PureState(v, (2, 2, 2))


def w_state() -> PureState:
    v = np.zeros(8, dtype=np.complex128)
    v[1] = v[2] = v[4] = 1.0 / np.sqrt(3.0)
    return PureState(v, (2, 2, 2))


def swap_operator(d: int) -> np.ndarray:
    """Swap on C^d ox C^d: S |i j> = |j i>."""
    s = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            s[i * d + j, j * d + i] = 1.0
    return s


def sym_antisym_family(n: int, alpha: float) -> DensityMatrix:
    """Mixture of the normalized symmetric and antisymmetric projectors on C^n ox C^n.

    alpha is the weight of the symmetric part. The projectors are built from
    the swap operator S as (1 +/- S)/2 and normalized by their traces
    n(n+1)/2 and n(n-1)/2. NPT for alpha < 1/2, PPT for alpha >= 1/2.
    """
    if n < 2:
        raise ValueError(f"local dimension must be >= 2, got {n}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    s = swap_operator(n)
    eye = np.eye(n * n, dtype=np.complex128)
    p_sym = (eye + s) / 2.0
    p_anti = (eye - s) / 2.0
    mat = alpha * p_sym / (n * (n + 1) / 2.0) + (1.0 - alpha) * p_anti / (n * (n - 1) / 2.0)
    return DensityMatrix(mat, (n, n))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_pure(dims, seed) -> PureState:
    """Unitarily invariant random pure state (normalized complex Gaussian vector)."""
    rng = np.random.default_rng(seed)
    dims = tuple(int(d) for d in dims)
    v = _complex_gaussian(rng, int(np.prod(dims)))
    return PureState(v / np.linalg.norm(v), dims)


def random_density(dims, rank, seed) -> DensityMatrix:
    """Random density matrix rho = G G^dag / tr(G G^dag), G complex Gaussian (dim x rank)."""
    rng = np.random.default_rng(seed)
    dims = tuple(int(d) for d in dims)
    n = int(np.prod(dims))
    rank = int(rank)
    if not 1 <= rank <= n:
        raise ValueError(f"rank must be in 1..{n}, got {rank}")
    g = _complex_gaussian(rng, (n, rank))
    m = g @ linalg.dagger(g)
    return DensityMatrix(m / np.trace(m).real, dims)


def random_product_pure(dims, seed) -> PureState:
    """Random product pure state: an independent Gaussian ket on every subsystem."""
    rng = np.random.default_rng(seed)
    dims = tuple(int(d) for d in dims)
    v = np.ones(1, dtype=np.complex128)
    for d in dims:
        f = _complex_gaussian(rng, d)
        v = np.kron(v, f / np.linalg.norm(f))
    return PureState(v, dims)


def random_separable(dims, n_terms, seed) -> DensityMatrix:
    """Explicit convex mixture of ``n_terms`` random product pure states.

    Separable by construction; the workhorse for every "constructed separable
    state" check.
    """
    rng = np.random.default_rng(seed)
    dims = tuple(int(d) for d in dims)
    n = int(np.prod(dims))
    weights = rng.dirichlet(np.ones(int(n_terms)))
    mat = np.zeros((n, n), dtype=np.complex128)
    for wgt in weights:
        v = np.ones(1, dtype=np.complex128)
        for d in dims:
            f = _complex_gaussian(rng, d)
            v = np.kron(v, f / np.linalg.norm(f))
        mat += wgt * np.outer(v, np.conj(v))
    return DensityMatrix(mat, dims)


def random_biseparable(seed) -> PureState:
    """Random pure three-qubit state entangled across at most one bipartition.

    A random single-qubit ket is tensored with a random two-qubit ket and the
    qubits are permuted so each of the partitions A-BC, B-AC, C-AB occurs
    with probability 1/3.
    """
    rng = np.random.default_rng(seed)
    single = _complex_gaussian(rng, 2)
    single /= np.linalg.norm(single)
    pair = _complex_gaussian(rng, 4)
    pair /= np.linalg.norm(pair)
    v = np.kron(single, pair)
    cut = int(rng.integers(3))
    perms = {0: (0, 1, 2), 1: (1, 0, 2), 2: (1, 2, 0)}
    v = linalg.permute_vector(v, (2, 2, 2), perms[cut])
    return PureState(v, (2, 2, 2))


def random_w_class(seed, cond_max: float = 1e3) -> PureState:
    """Random state in the W class: invertible local maps applied to |psi_W>.

    Each 2x2 factor is complex Gaussian, redrawn while its condition number
    exceeds ``cond_max``.
    """
    rng = np.random.default_rng(seed)
    v = w_state().vec
    ops = []
    while len(ops) < 3:
        m = _complex_gaussian(rng, (2, 2))
        sv = np.linalg.svd(m, compute_uv=False)
        if sv[-1] > 0 and sv[0] / sv[-1] <= cond_max:
            ops.append(m)
    full = linalg.tensor(ops[0], ops[1], ops[2])
    v = full @ v
    return PureState(v / np.linalg.norm(v), (2, 2, 2))
