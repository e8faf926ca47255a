"""Dense complex linear algebra for Hilbert spaces of dimension 2 to 8.

All functions operate on plain numpy arrays and are pure: no argument is
mutated and no state is shared between calls.  Logarithms are base 2
throughout, so every derived entropy is reported in bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DimensionMismatch, NegativeEigenvalue, NotHermitian

#: Eigenvalues at or below this magnitude are treated as lying outside the
#: support of a positive-semidefinite matrix.
SUPPORT_CUTOFF = 1e-10

HERMITICITY_TOL = 1e-10


@dataclass(frozen=True)
class HermitianEigenSystem:
    """Spectral decomposition of a Hermitian matrix.

    ``eigenvalues`` is sorted ascending and ``eigenvectors`` holds the
    matching eigenvectors as columns of a unitary matrix, each with a
    deterministic phase (first significant component real and positive).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _as_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation between ``m`` and its adjoint."""
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def require_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    m = _as_square(m)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitian(f"matrix deviates from Hermiticity by {defect:.3e} (tol {tol:.1e})")
    return m


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with row-major composite indexing.

    Entry ``((i*db + k), (j*db + l))`` of the result is ``a[i, j] * b[k, l]``.
    """
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermitian_eig(m: np.ndarray, tol: float = HERMITICITY_TOL) -> HermitianEigenSystem:
    """Eigendecomposition of a Hermitian matrix with deterministic output.

    Eigenvalues come back ascending; each eigenvector is rescaled by a unit
    phase so that its first component of significant magnitude is real and
    positive.  Raises :class:`NotHermitian` when the input deviates from its
    adjoint by more than ``tol``.
    """
    m = require_hermitian(m, tol)
    vals, vecs = np.linalg.eigh(m)
    vecs = vecs.copy()
    n = m.shape[0]
    for j in range(n):
        col = vecs[:, j]
        idx = np.argmax(np.abs(col) > 1e-8)
        pivot = col[idx]
        if abs(pivot) > 0:
            vecs[:, j] = col * (pivot.conj() / abs(pivot))
    return HermitianEigenSystem(eigenvalues=vals, eigenvectors=vecs)


def matrix_log_on_support(m: np.ndarray, cutoff: float = SUPPORT_CUTOFF) -> np.ndarray:
    """Base-2 logarithm of a PSD matrix, projected onto its support.

    Eigenvalues below ``-cutoff`` raise :class:`NegativeEigenvalue`;
    eigenvalues in ``[-cutoff, cutoff]`` are treated as zero and contribute
    nothing to the result.
    """
    eig = hermitian_eig(m)
    vals = eig.eigenvalues
    if np.any(vals < -cutoff):
        raise NegativeEigenvalue(
            f"eigenvalue {vals.min():.3e} below -{cutoff:.1e}; matrix is not PSD"
        )
    logs = np.where(vals > cutoff, np.log2(np.maximum(vals, cutoff)), 0.0)
    v = eig.eigenvectors
    return (v * logs) @ v.conj().T


def partial_trace(
    m: np.ndarray, dims: Iterable[int], keep: Iterable[int]
) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` is the subsystem-dimension signature of ``m`` (row-major
    composite index); ``keep`` holds the indices of the subsystems that
    survive, in their original order.
    """
    m = _as_square(m)
    dims = tuple(int(d) for d in dims)
    keep = sorted(set(int(k) for k in keep))
    n = len(dims)
    if int(np.prod(dims)) != m.shape[0]:
        raise DimensionMismatch(
            f"dims {dims} imply total dimension {int(np.prod(dims))}, matrix has {m.shape[0]}"
        )
    if not keep:
        raise DimensionMismatch("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= n:
        raise DimensionMismatch(f"keep {keep} out of range for {n} subsystems")
    if len(keep) == n:
        return m.copy()

    tensor = m.reshape(dims + dims)
    # Contract row axis i with its column twin at i + ndim/2; visiting the
    # traced subsystems in descending order keeps that pairing valid as axes
    # disappear.
    for i in sorted((i for i in range(n) if i not in keep), reverse=True):
        tensor = np.trace(tensor, axis1=i, axis2=i + tensor.ndim // 2)
    d_keep = int(np.prod([dims[i] for i in keep]))
    return tensor.reshape(d_keep, d_keep)


def realign(t: np.ndarray) -> np.ndarray:
    """Swap the inner index pair of a d^2 x d^2 map matrix.

    With rows and columns read as flattened index pairs, the result R of
    ``realign(M)`` satisfies ``R[(i,k),(j,l)] = M[(i,j),(k,l)]``.  Applying
    the operation twice restores the input exactly, and it converts between
    the two standard matrix arrangements of a linear map on operators.
    """
    t = _as_square(t)
    d = int(round(np.sqrt(t.shape[0])))
    if d * d != t.shape[0]:
        raise DimensionMismatch(f"side {t.shape[0]} is not a perfect square")
    return t.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)
