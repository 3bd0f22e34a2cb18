"""State and witness files: JSON text with a dims header and [re, im] decimal
pairs, 17 significant digits per component so doubles round-trip bit-exactly.

A document carries either a "matrix" (density matrix, or witness when a
"kind" tag is present) or a "vector" (pure state), plus optional seed and
provenance records. One state per file.
"""

from __future__ import annotations

import json

import numpy as np

from .states import DensityMatrix, PureState
from .witness import WitnessOperator


class StateFileError(ValueError):
    """Malformed or invariant-violating state file."""


def _emit(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_emit(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_emit(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    return json.dumps(obj)


def _matrix_to_pairs(mat: np.ndarray):
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


def _vector_to_pairs(vec: np.ndarray):
    return [[float(z.real), float(z.imag)] for z in vec]


def _document(dims, *, matrix=None, vector=None, kind=None, provenance=None, seed=None) -> dict:
    doc = {"dims": [int(d) for d in dims]}
    if matrix is not None:
        doc["matrix"] = _matrix_to_pairs(matrix)
    if vector is not None:
        doc["vector"] = _vector_to_pairs(vector)
    if kind is not None:
        doc["kind"] = kind
    if provenance is not None:
        doc["provenance"] = provenance
    if seed is not None:
        doc["seed"] = int(seed)
    return doc


def _write(doc: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_emit(doc))
        fh.write("\n")


def save_density(rho: DensityMatrix, path, provenance=None, seed=None) -> None:
    _write(_document(rho.dims, matrix=rho.mat, provenance=provenance, seed=seed), path)


def save_pure(psi: PureState, path, provenance=None, seed=None) -> None:
    _write(_document(psi.dims, vector=psi.vec, provenance=provenance, seed=seed), path)


def save_witness(w: WitnessOperator, path, seed=None) -> None:
    _write(
        _document(w.dims, matrix=w.mat, kind=w.kind, provenance=w.provenance or None, seed=seed),
        path,
    )


def _pairs_to_matrix(rows) -> np.ndarray:
    try:
        arr = np.array(
            [[complex(float(p[0]), float(p[1])) for p in row] for row in rows],
            dtype=np.complex128,
        )
    except (TypeError, ValueError, IndexError) as exc:
        raise StateFileError(f"matrix entries must be [re, im] pairs: {exc}") from exc
    if arr.ndim != 2:
        raise StateFileError(f"matrix must be 2-D, got ndim={arr.ndim}")
    return arr


def _pairs_to_vector(entries) -> np.ndarray:
    try:
        return np.array(
            [complex(float(p[0]), float(p[1])) for p in entries], dtype=np.complex128
        )
    except (TypeError, ValueError, IndexError) as exc:
        raise StateFileError(f"vector entries must be [re, im] pairs: {exc}") from exc


def load(path):
    """Load a state file: DensityMatrix, PureState, or WitnessOperator.

    A "kind" tag marks a witness (checked for Hermiticity only); a "vector"
    entry marks a pure state; a bare "matrix" must satisfy every density
    matrix invariant. Violations raise StateFileError with the offending
    invariant and its magnitude.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "dims" not in doc:
        raise StateFileError("missing dims header")
    dims = tuple(int(d) for d in doc["dims"])
    kind = doc.get("kind")
    provenance = doc.get("provenance", "")
    try:
        if "vector" in doc:
            return PureState(_pairs_to_vector(doc["vector"]), dims)
        if "matrix" not in doc:
            raise StateFileError("document has neither matrix nor vector")
        mat = _pairs_to_matrix(doc["matrix"])
        if kind is not None:
            return WitnessOperator(mat, dims, kind=kind, provenance=provenance)
        return DensityMatrix(mat, dims)
    except StateFileError:
        raise
    except ValueError as exc:
        raise StateFileError(str(exc)) from exc
