"""Shannon and von Neumann entropies, relative entropy, mutual information.

Everything is measured in bits.  Relative entropy returns ``math.inf``
instead of raising when the first argument has weight outside the support
of the second; optimizers treat that value as "worst possible".
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, NotProbability
from .linalg import SUPPORT_CUTOFF, hermitian_eig, matrix_log_on_support, tensor_product
from .states import DensityMatrix

#: Weight of rho tolerated outside supp(sigma) before reporting infinity.
SUPPORT_LEAK_TOL = 1e-8


def _check_probability_vector(p: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    p = np.asarray(p, dtype=float).reshape(-1)
    if np.any(p < -tol):
        raise NotProbability(f"negative entry {p.min()}")
    if abs(p.sum() - 1.0) > tol:
        raise NotProbability(f"entries sum to {p.sum()}")
    return np.maximum(p, 0.0)


def shannon_entropy(p) -> float:
    """H(p) = -sum p log2 p with the 0 log 0 = 0 convention."""
    p = _check_probability_vector(p)
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def shannon_mutual_information(table) -> float:
    """H(A) + H(B) - H(A,B) of a joint probability table P(a, b)."""
    t = np.asarray(table, dtype=float)
    if t.ndim != 2:
        raise NotProbability(f"expected a 2-D table, got ndim {t.ndim}")
    flat = _check_probability_vector(t.reshape(-1))
    t = flat.reshape(t.shape)
    return shannon_entropy(t.sum(axis=1)) + shannon_entropy(t.sum(axis=0)) - shannon_entropy(flat)


def _matrix_of(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def von_neumann_entropy(rho) -> float:
    """Shannon entropy of the spectrum; zero for pure states."""
    m = _matrix_of(rho)
    vals = hermitian_eig(m).eigenvalues
    vals = np.maximum(vals, 0.0)
    nz = vals[vals > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def relative_entropy(rho, sigma, support_tol: float = SUPPORT_LEAK_TOL) -> float:
    """S(rho || sigma) = Tr[rho log2 rho] - Tr[rho log2 sigma].

    Computed on the support of ``sigma``; if ``rho`` carries more than
    ``support_tol`` weight outside it the divergence is infinite.
    """
    r = _matrix_of(rho)
    s = _matrix_of(sigma)
    if r.shape != s.shape:
        raise DimensionMismatch(f"shape mismatch {r.shape} vs {s.shape}")

    eig_s = hermitian_eig(s)
    kernel = eig_s.eigenvalues <= SUPPORT_CUTOFF
    if np.any(kernel):
        v_ker = eig_s.eigenvectors[:, kernel]
        leak = float(np.real(np.einsum("ij,jk,ki->", v_ker.conj().T, r, v_ker)))
        if leak > support_tol:
            return math.inf

    log_s = matrix_log_on_support(s)
    cross = float(np.real(np.trace(r @ log_s)))
    return max(0.0, -von_neumann_entropy(r) - cross)


def mutual_information(rho: DensityMatrix) -> float:
    """S(rho_A) + S(rho_B) - S(rho_AB) for a bipartite state.

    Coincides with the relative entropy between the state and the product
    of its marginals.
    """
    if len(rho.dims) != 2:
        raise DimensionMismatch(f"expected a bipartite signature, got dims {rho.dims}")
    rho_a = rho.marginal([0])
    rho_b = rho.marginal([1])
    return (
        von_neumann_entropy(rho_a)
        + von_neumann_entropy(rho_b)
        - von_neumann_entropy(rho)
    )


def product_of_marginals(rho: DensityMatrix) -> np.ndarray:
    """rho_A (x) rho_B, the uncorrelated reference of a bipartite state."""
    if len(rho.dims) != 2:
        raise DimensionMismatch(f"expected a bipartite signature, got dims {rho.dims}")
    return tensor_product(rho.marginal([0]).matrix, rho.marginal([1]).matrix)
