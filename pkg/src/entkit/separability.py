"""Operational separability tests and the combined verdict.

Three criteria in the strength order PPT >= reduction >= majorization, plus
the Schmidt decomposition for pure states. In 2x2 and 2x3 the PPT margin
decides separability outright; in higher dimensions a clean bill from all
criteria only means "undecided".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .states import DensityMatrix, PureState

MARGIN_TOL = 1e-10

SEPARABLE = "separable"
ENTANGLED = "entangled"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of one criterion: signed margin, satisfied iff margin >= -1e-10.

    ``boundary`` flags margins within the numerical-zero band; the raw margin
    is kept so callers can re-threshold.
    """

    criterion: str
    satisfied: bool
    margin: float
    boundary: bool = False


@dataclass(frozen=True)
class Verdict:
    status: str
    basis: tuple[CriterionReport, ...]
    dims: tuple[int, ...]


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Bi-orthogonal form sum_k a_k |e_k>|f_k| with descending positive a_k.

    ``left_basis`` / ``right_basis`` hold the vectors as rows.
    """

    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray
    rank: int

    def reconstruct(self) -> np.ndarray:
        vec = np.zeros(self.left_basis.shape[1] * self.right_basis.shape[1], dtype=np.complex128)
        for a, e, f in zip(self.coefficients, self.left_basis, self.right_basis):
            vec += a * np.kron(e, f)
        return vec


def _require_bipartite(dims) -> tuple[int, int]:
    if len(dims) != 2:
        raise ValueError(f"bipartite input required, got dims {tuple(dims)}")
    return int(dims[0]), int(dims[1])


def _report(criterion: str, margin: float) -> CriterionReport:
    margin = float(margin)
    return CriterionReport(
        criterion=criterion,
        satisfied=margin >= -MARGIN_TOL,
        margin=margin,
        boundary=abs(margin) <= MARGIN_TOL,
    )


def schmidt_decompose(psi: PureState, rank_tol: float = 1e-8) -> SchmidtDecomposition:
    """Schmidt decomposition of a bipartite pure state.

    The squared coefficients are the eigenvalues of either reduced matrix;
    coefficients at or below ``rank_tol`` are dropped from the rank.
    """
    da, db = _require_bipartite(psi.dims)
    c = psi.vec.reshape(da, db)
    rho_a = c @ linalg.dagger(c)
    w, v = linalg.hermitian_eig(rho_a)
    order = np.argsort(w, kind="stable")[::-1]
    coeffs = []
    left = []
    right = []
    for idx in order:
        a = float(np.sqrt(max(w[idx], 0.0)))
        if a <= rank_tol:
            continue
        e = v[:, idx]
        f = (c.T @ np.conj(e)) / a
        coeffs.append(a)
        left.append(e)
        right.append(f)
    return SchmidtDecomposition(
        coefficients=np.array(coeffs),
        left_basis=np.array(left),
        right_basis=np.array(right),
        rank=len(coeffs),
    )


def ppt_criterion(rho: DensityMatrix) -> CriterionReport:
    """Positive partial transpose: margin is the minimum eigenvalue of rho^{T_A}."""
    _require_bipartite(rho.dims)
    pt = linalg.partial_transpose(rho.mat, rho.dims, 0)
    return _report("PPT", linalg.min_eigenvalue(pt))


def reduction_criterion(rho: DensityMatrix) -> CriterionReport:
    """Reduction criterion: rho_A ox 1 - rho >= 0 and 1 ox rho_B - rho >= 0.

    The margin is the smaller of the two minimum eigenvalues.
    """
    da, db = _require_bipartite(rho.dims)
    rho_a = linalg.partial_trace(rho.mat, rho.dims, keep=0)
    rho_b = linalg.partial_trace(rho.mat, rho.dims, keep=1)
    lhs_a = linalg.tensor(rho_a, np.eye(db)) - rho.mat
    lhs_b = linalg.tensor(np.eye(da), rho_b) - rho.mat
    margin = min(linalg.min_eigenvalue(lhs_a), linalg.min_eigenvalue(lhs_b))
    return _report("Reduction", margin)


def majorization_criterion(rho: DensityMatrix) -> CriterionReport:
    """Majorization criterion: the global spectrum must be majorized by both
    reduced spectra (zero-padded to the global dimension).

    The margin is the most negative partial-sum slack
    sum_k lambda(reduced) - sum_k lambda(global) over k = 1..d-1 and both sides.
    """
    _require_bipartite(rho.dims)
    d = rho.dim
    glob = linalg.eigenvalues_descending(rho.mat)
    margin = np.inf
    for keep in (0, 1):
        red = linalg.eigenvalues_descending(linalg.partial_trace(rho.mat, rho.dims, keep=keep))
        padded = np.zeros(d)
        padded[: red.size] = red
        slack = np.cumsum(padded)[: d - 1] - np.cumsum(glob)[: d - 1]
        if d > 1:
            margin = min(margin, float(slack.min()))
    if not np.isfinite(margin):
        margin = 0.0
    return _report("Majorization", margin)


def analyze(rho: DensityMatrix) -> Verdict:
    """Run all three criteria and combine them.

    2x2 and 2x3: PPT is necessary and sufficient, so the verdict is decisive.
    Otherwise any violated criterion certifies entanglement and a clean sheet
    is reported as undecided.
    """
    dims = _require_bipartite(rho.dims)
    reports = (ppt_criterion(rho), reduction_criterion(rho), majorization_criterion(rho))
    low_dim = sorted(dims) in ([2, 2], [2, 3])
    if low_dim:
        status = SEPARABLE if reports[0].satisfied else ENTANGLED
    elif any(not r.satisfied for r in reports):
        status = ENTANGLED
    else:
        status = UNDECIDED
    return Verdict(status=status, basis=reports, dims=rho.dims)
