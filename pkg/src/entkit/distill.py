"""Two-pair recurrence distillation protocol (exact 16-dimensional simulation)
and the n-copy distillability test over Schmidt-rank-2 vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .states import DensityMatrix, bell, isotropic

DISTILLABLE = "distillable"
INCONCLUSIVE = "inconclusive"

_FIDELITY_CONSISTENCY_TOL = 1e-12

# |a1 a2> -> |a1, a1+a2 mod 2>, control first
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)


class NonImprovingError(ValueError):
    """Starting fidelity is in the regime where the recurrence cannot improve."""


@dataclass(frozen=True)
class IsotropicParams:
    """Mixing parameter and maximally-entangled-state fidelity of an isotropic
    two-qubit state; the two are locked by fidelity = (1 + 3p)/4."""

    p: float
    fidelity: float

    def __post_init__(self):
        if abs(self.fidelity - (1.0 + 3.0 * self.p) / 4.0) > _FIDELITY_CONSISTENCY_TOL:
            raise ValueError(
                f"inconsistent isotropic parameters: fidelity {self.fidelity} vs (1+3p)/4 = {(1 + 3 * self.p) / 4}"
            )

    @classmethod
    def from_fidelity(cls, f: float) -> "IsotropicParams":
        return cls(p=(4.0 * f - 1.0) / 3.0, fidelity=float(f))


class TraceStep(NamedTuple):
    fidelity_before: float
    fidelity_after: float
    success_probability: float


@dataclass(frozen=True)
class RecurrenceTrace:
    steps: tuple[TraceStep, ...]
    pairs_consumed_estimate: float

    @property
    def final_fidelity(self) -> float:
        return self.steps[-1].fidelity_after if self.steps else np.nan


@dataclass(frozen=True)
class DistillabilityCertificate:
    """Best found <psi|(rho^{T_A})^{ox n}|psi> over Schmidt-rank-2 vectors.

    verdict is "distillable" exactly when value < -1e-10; otherwise the test
    is inconclusive (it never certifies undistillability).
    """

    n: int
    value: float
    witness_vector: np.ndarray
    verdict: str

    @property
    def distillable(self) -> bool:
        return self.verdict == DISTILLABLE


def _phi_plus_fidelity(mat: np.ndarray) -> float:
    phi = bell("phi+").vec
    return float(np.real(np.conj(phi) @ mat @ phi))


def twirl_to_isotropic(rho: DensityMatrix) -> IsotropicParams:
    """Parameters of the isotropic state a local twirl would produce.

    Only the fidelity F = <phi+|rho|phi+> survives the twirl; p = (4F-1)/3.
    """
    if rho.dims != (2, 2):
        raise ValueError(f"two-qubit state required, got dims {rho.dims}")
    return IsotropicParams.from_fidelity(_phi_plus_fidelity(rho.mat))


def recurrence_step(rho: DensityMatrix) -> tuple[DensityMatrix, float]:
    """One round of the two-pair recurrence on a two-qubit state.

    Exact 16-dimensional computation: form rho ox rho, reorder the qubits to
    (A1, A2, B1, B2), apply the two local CNOTs (controls A1 and B1), project
    the second pair onto equal computational outcomes (00 or 11), sum the two
    kept branches and renormalize. Returns the post-selected pair-1 state and
    the total success probability.
    """
    if rho.dims != (2, 2):
        raise ValueError(f"two-qubit state required, got dims {rho.dims}")
    big = np.kron(rho.mat, rho.mat)  # order (A1, B1, A2, B2)
    big = linalg.permute_subsystems(big, (2, 2, 2, 2), (0, 2, 1, 3))  # (A1, A2, B1, B2)
    u = np.kron(CNOT, CNOT)
    big = u @ big @ linalg.dagger(u)
    t = big.reshape((2,) * 8)
    kept = np.zeros((2, 2, 2, 2), dtype=np.complex128)
    for a in (0, 1):
        kept += t[:, a, :, a, :, a, :, a]
    kept = kept.reshape(4, 4)  # remaining order (A1, B1)
    success = float(np.trace(kept).real)
    if success < 1e-12:
        raise ValueError(f"degenerate input: success probability {success:.3e}")
    return DensityMatrix(kept / success, (2, 2)), success


def fidelity_map(f: float) -> tuple[float, float]:
    """New fidelity and success probability after one recurrence round applied
    to the isotropic state of fidelity ``f``, re-twirled afterwards."""
    if not 0.25 <= f <= 1.0:
        raise ValueError(f"fidelity must lie in [1/4, 1], got {f}")
    rho = isotropic((4.0 * f - 1.0) / 3.0, 2)
    out, success = recurrence_step(rho)
    return _phi_plus_fidelity(out.mat), success


def iterate(f0: float, target: float, max_steps: int, retwirl: bool = True) -> RecurrenceTrace:
    """Repeat the recurrence from fidelity ``f0`` until ``target`` (or the step cap).

    Default behaviour re-twirls to isotropic form between rounds so the scalar
    fidelity map drives the iteration. ``retwirl=False`` iterates the raw
    post-selected state instead (exploratory variant, no improvement claim).
    The pairs-consumed estimate is 2^k / prod(success probabilities).
    """
    if not 0.0 <= target <= 1.0:
        raise ValueError(f"target fidelity must lie in [0, 1], got {target}")
    if f0 >= target:
        return RecurrenceTrace(steps=(), pairs_consumed_estimate=1.0)
    if f0 <= 0.5:
        raise NonImprovingError(
            f"f0 = {f0} <= 1/2: the recurrence does not improve the fidelity there"
        )
    if f0 > 1.0:
        raise ValueError(f"fidelity must lie in [1/4, 1], got {f0}")
    steps = []
    success_product = 1.0
    f = float(f0)
    rho = None if retwirl else isotropic((4.0 * f - 1.0) / 3.0, 2)
    for _ in range(int(max_steps)):
        if retwirl:
            f_next, success = fidelity_map(f)
        else:
            rho, success = recurrence_step(rho)
            f_next = _phi_plus_fidelity(rho.mat)
        steps.append(TraceStep(f, f_next, success))
        success_product *= success
        f = f_next
        if f >= target:
            break
    pairs = 2.0 ** len(steps) / success_product
    return RecurrenceTrace(steps=tuple(steps), pairs_consumed_estimate=pairs)


def _orthonormal_pair(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, 2)) + 1j * rng.normal(size=(dim, 2))
    q, _ = np.linalg.qr(g)
    return q[:, :2]


def _top2_frame(gram: np.ndarray) -> np.ndarray:
    w, v = linalg.hermitian_eig(gram)
    return v[:, [-1, -2]]


def _rank2_minimize(x4, da, db, e_frame, max_iters=300, tol=1e-12):
    """Alternating exact minimization over Schmidt-rank-2 vectors.

    Each half-step restricts one side to a 2-dim frame and solves the
    restricted eigenproblem exactly, so the objective never increases and
    every iterate has Schmidt rank <= 2.
    """
    e = e_frame
    psi_mat = None
    val = np.inf
    for _ in range(max_iters):
        prev = val
        # best vector in span(e) ox B
        m = np.einsum("ia,ijkl,kc->ajcl", np.conj(e), x4, e).reshape(2 * db, 2 * db)
        res = linalg.hermitian_eig(m)
        val = float(res.eigenvalues[0])
        g = res.eigenvectors[:, 0].reshape(2, db)
        psi_mat = e @ g
        # best vector in A ox span(f), f from the right Schmidt frame
        f = _top2_frame(linalg.dagger(psi_mat) @ psi_mat)
        m = np.einsum("jb,ijkl,ld->ibkd", np.conj(f), x4, f).reshape(2 * da, 2 * da)
        # stacked index (i, b): reshape solution to (da, 2)
        res = linalg.hermitian_eig(m)
        val = float(res.eigenvalues[0])
        h = res.eigenvectors[:, 0].reshape(da, 2)
        psi_mat = h @ f.T
        e = _top2_frame(psi_mat @ linalg.dagger(psi_mat))
        if abs(prev - val) < tol:
            break
    return val, psi_mat.ravel()


def distillability_test(rho: DensityMatrix, n: int, restarts: int, seed) -> DistillabilityCertificate:
    """Search for a Schmidt-rank-2 vector with negative expectation on
    (rho^{T_A})^{ox n}; a negative best value certifies n-distillability.

    n is limited to {1, 2} and the total dimension to 256. Restarts use random
    orthonormal frames; the first start is seeded from the Schmidt frame of
    the most negative eigenvector.
    """
    if len(rho.dims) != 2:
        raise ValueError(f"bipartite input required, got dims {rho.dims}")
    if n not in (1, 2):
        raise ValueError(f"n must be 1 or 2, got {n}")
    da, db = rho.dims
    total = (da * db) ** n
    if total > 256:
        raise ValueError(f"dimension budget exceeded: {total} > 256")
    pt = linalg.partial_transpose(rho.mat, rho.dims, 0)
    if n == 1:
        x = pt
        dda, ddb = da, db
    else:
        x = np.kron(pt, pt)  # (A1, B1, A2, B2)
        x = linalg.permute_subsystems(x, (da, db, da, db), (0, 2, 1, 3))
        dda, ddb = da * da, db * db
    x4 = x.reshape(dda, ddb, dda, ddb)

    rng = np.random.default_rng(seed)
    # informed start: Schmidt frame of the most negative eigenvector
    ground = linalg.hermitian_eig(x).eigenvectors[:, 0].reshape(dda, ddb)
    starts = [_top2_frame(ground @ linalg.dagger(ground))]
    starts += [_orthonormal_pair(rng, dda) for _ in range(max(0, int(restarts) - 1))]

    best_val = np.inf
    best_vec = None
    for e0 in starts:
        val, vec = _rank2_minimize(x4, dda, ddb, e0)
        if val < best_val:
            best_val = val
            best_vec = vec
    verdict = DISTILLABLE if best_val < -1e-10 else INCONCLUSIVE
    return DistillabilityCertificate(n=n, value=best_val, witness_vector=best_vec, verdict=verdict)
