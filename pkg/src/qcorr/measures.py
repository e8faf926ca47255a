"""Correlation measures of a two-qubit state and the optimizer behind them.

Quantum discord and the one-sided classical correlation are two readings of
one optimization: the maximum of the measured mutual information over
rank-1 projective measurements on subsystem A.  Both measures therefore
share a single optimizer run, which makes the identity

    discord + classical_correlation = mutual_information

hold by construction at the shared argmax.  The optimizer is a dense
(theta, phi) grid over the Bloch sphere followed by Nelder-Mead local
refinement; it is fully deterministic for a fixed configuration, with grid
ties broken toward the lexicographically smallest angle pair.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .entropy import mutual_information, relative_entropy, von_neumann_entropy
from .errors import DegenerateMarginalWarning, DimensionMismatch, OutOfRange, UnsupportedDimension
from .linalg import hermitian_eig, tensor_product
from .measurement import (
    ProjectiveMeasurement,
    _leading_block,
    bloch_projectors,
    measure_subsystem,
)
from .states import DensityMatrix


@dataclass(frozen=True)
class OptimizerConfig:
    """Grid density and refinement budget for the measurement search.

    ``grid_resolution`` is the number of theta samples on [0, pi]; phi gets
    twice as many on [0, 2*pi).
    """

    grid_resolution: int = 64
    refine_iterations: int = 200
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.grid_resolution < 8:
            raise OutOfRange(f"grid_resolution {self.grid_resolution} < 8")
        if self.tolerance <= 0:
            raise OutOfRange(f"tolerance {self.tolerance} must be positive")


@dataclass(frozen=True)
class OptimizationResult:
    value: float
    theta: float
    phi: float
    evaluations: int


@dataclass(frozen=True)
class DiscordDecomposition:
    """Measurement-specific discord evaluated two ways (see module docs)."""

    direct: float
    via_relative_entropies: float


@dataclass(frozen=True)
class MeasureReport:
    """All correlation measures of one state plus optimizer diagnostics."""

    mutual_information: float
    discord: float
    classical_correlation: float
    oneway_deficit: float
    quantum_deficit: float
    optimal_theta: float
    optimal_phi: float
    optimal_measurement: ProjectiveMeasurement
    diagnostics: dict = field(compare=False)
    warnings: tuple = ()


# ---------------------------------------------------------------------------
# Batched objective kernels (pure, used by the grid stage and by refinement
# with single-element arrays so that both stages evaluate identical algebra).
# ---------------------------------------------------------------------------

def _bloch_pair_batch(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Projector pairs along (theta, phi); shape (N, 2, 2, 2) = (point, outcome, row, col)."""
    st, ct = np.sin(theta), np.cos(theta)
    nx, ny, nz = st * np.cos(phi), st * np.sin(phi), ct
    up = 0.5 * np.stack(
        [
            np.stack([1.0 + nz, nx - 1j * ny], axis=-1),
            np.stack([nx + 1j * ny, 1.0 - nz], axis=-1),
        ],
        axis=-2,
    ).astype(complex)
    down = np.eye(2, dtype=complex) - up
    return np.stack([up, down], axis=1)


def _branches(rho4: np.ndarray, projectors: np.ndarray):
    """Post-measurement branches (P (x) I) rho (P (x) I) for a projector batch.

    Returns (probabilities, B-side reduced branches), shapes (..., ) and
    (..., 2, 2); branches are unnormalized so the zero-probability limit
    stays finite throughout.
    """
    eye = np.eye(2, dtype=complex)
    e = np.einsum("...ij,kl->...ikjl", projectors, eye).reshape(projectors.shape[:-2] + (4, 4))
    branch = np.einsum("...ab,bc,...cd->...ad", e, rho4, e)
    probs = np.einsum("...aa->...", branch).real
    sigma_b = np.einsum("...abad->...bd", branch.reshape(branch.shape[:-2] + (2, 2, 2, 2)))
    return probs, sigma_b


def _xlog2x(x: np.ndarray) -> np.ndarray:
    x = np.maximum(x, 0.0)
    return np.where(x > 0.0, x * np.log2(np.where(x > 0.0, x, 1.0)), 0.0)


def _measured_mi_batch(rho4: np.ndarray, s_b: float, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Measured mutual information S(rho_B) - sum_a p_a S(rho_B|a) on an angle batch."""
    pairs = _bloch_pair_batch(theta, phi)
    probs, sigma_b = _branches(rho4, pairs)
    lam = np.linalg.eigvalsh(sigma_b)
    # p * S(sigma/p) = -sum lam log lam + p log p, finite as p -> 0.
    weighted = -_xlog2x(lam).sum(axis=-1) + _xlog2x(probs)
    return s_b - weighted.sum(axis=-1)


def _pinched_entropy_batch(rho4: np.ndarray, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Entropy of sum_a (P_a (x) I) rho (P_a (x) I) on an angle batch."""
    pairs = _bloch_pair_batch(theta, phi)
    eye = np.eye(2, dtype=complex)
    e = np.einsum("noij,kl->noikjl", pairs, eye).reshape(pairs.shape[:2] + (4, 4))
    pinched = np.einsum("noab,bc,nocd->nad", e, rho4, e)
    lam = np.linalg.eigvalsh(pinched)
    return -_xlog2x(lam).sum(axis=-1)


def _optimize_angles(objective, cfg: OptimizerConfig, maximize: bool) -> OptimizationResult:
    """Grid scan plus Nelder-Mead refinement of a smooth angle objective.

    ``objective`` maps equal-shape (theta, phi) arrays to values.  The grid
    winner is the first (lexicographically smallest) angle pair attaining
    the optimum; refinement is kept only when it strictly improves.
    """
    thetas = np.linspace(0.0, math.pi, cfg.grid_resolution)
    phis = np.linspace(0.0, 2.0 * math.pi, 2 * cfg.grid_resolution, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    values = objective(tt.ravel(), pp.ravel())
    idx = int(np.argmax(values) if maximize else np.argmin(values))
    best_value = float(values[idx])
    best_theta = float(tt.ravel()[idx])
    best_phi = float(pp.ravel()[idx])
    evaluations = values.size

    sign = -1.0 if maximize else 1.0

    def scalar(x):
        return sign * float(objective(np.array([x[0]]), np.array([x[1]]))[0])

    result = minimize(
        scalar,
        np.array([best_theta, best_phi]),
        method="Nelder-Mead",
        options={
            "maxiter": cfg.refine_iterations,
            "xatol": 1e-10,
            "fatol": 1e-13,
        },
    )
    evaluations += int(result.nfev)
    refined = sign * float(result.fun)
    better = refined > best_value if maximize else refined < best_value
    if better:
        best_value = refined
        best_theta, best_phi = _canonical_angles(float(result.x[0]), float(result.x[1]))
    return OptimizationResult(best_value, best_theta, best_phi, evaluations)


def _canonical_angles(theta: float, phi: float):
    """Fold arbitrary angles back to theta in [0, pi], phi in [0, 2*pi)."""
    nx = math.sin(theta) * math.cos(phi)
    ny = math.sin(theta) * math.sin(phi)
    nz = math.cos(theta)
    theta_c = math.acos(min(1.0, max(-1.0, nz)))
    phi_c = math.atan2(ny, nx) % (2.0 * math.pi)
    return theta_c, phi_c


def _require_two_qubits(rho: DensityMatrix):
    if tuple(rho.dims) != (2, 2):
        raise UnsupportedDimension(
            f"measurement optimization is defined for dims (2, 2); got {tuple(rho.dims)}"
        )


def _clip_dust(value: float, tolerance: float) -> float:
    return 0.0 if -tolerance < value < 0.0 else value


# ---------------------------------------------------------------------------
# Public measures
# ---------------------------------------------------------------------------

def measured_mutual_information(rho: DensityMatrix, m: ProjectiveMeasurement) -> float:
    """S(rho_B) - sum_a p_a S(rho_B|a) for a fixed measurement on the leading block."""
    outcome = measure_subsystem(rho, m)
    block = _leading_block(rho.dims, m.block_dim)
    rho_b = rho.marginal(range(block, len(rho.dims)))
    avg = 0.0
    for p, cond in zip(outcome.probabilities, outcome.conditional_states):
        if cond is not None:
            avg += p * von_neumann_entropy(cond)
    return von_neumann_entropy(rho_b) - avg


def maximize_measured_mi(rho: DensityMatrix, cfg: Optional[OptimizerConfig] = None) -> OptimizationResult:
    """Shared optimizer for discord and classical correlation (two qubits only)."""
    _require_two_qubits(rho)
    cfg = cfg or OptimizerConfig()
    s_b = von_neumann_entropy(rho.marginal([1]))
    rho4 = rho.matrix
    return _optimize_angles(
        lambda t, p: _measured_mi_batch(rho4, s_b, t, p), cfg, maximize=True
    )


def quantum_discord(rho: DensityMatrix, cfg: Optional[OptimizerConfig] = None):
    """Minimum gap between total and measured mutual information.

    Returns (value in bits, optimizer result carrying the argmax angles).
    """
    cfg = cfg or OptimizerConfig()
    opt = maximize_measured_mi(rho, cfg)
    raw = mutual_information(rho) - opt.value
    return _clip_dust(raw, cfg.tolerance), opt


def classical_correlation_hv(rho: DensityMatrix, cfg: Optional[OptimizerConfig] = None):
    """Maximum entropy reduction of B achievable by measuring A.

    Returns (value in bits, optimizer result).
    """
    cfg = cfg or OptimizerConfig()
    opt = maximize_measured_mi(rho, cfg)
    return _clip_dust(opt.value, cfg.tolerance), opt


def oneway_deficit(rho: DensityMatrix, cfg: Optional[OptimizerConfig] = None) -> float:
    """Minimal entropy increase under a projective measurement on A."""
    _require_two_qubits(rho)
    cfg = cfg or OptimizerConfig()
    s_rho = von_neumann_entropy(rho)
    rho4 = rho.matrix
    opt = _optimize_angles(
        lambda t, p: _pinched_entropy_batch(rho4, t, p), cfg, maximize=False
    )
    return _clip_dust(opt.value - s_rho, cfg.tolerance)


def quantum_deficit(rho: DensityMatrix) -> float:
    """Relative entropy to the state decohered in its marginal eigenbases.

    No optimization is involved.  When a marginal spectrum is nearly
    degenerate its eigenbasis is a convention rather than a property of the
    state, so a :class:`DegenerateMarginalWarning` is emitted.
    """
    if len(rho.dims) != 2:
        raise DimensionMismatch(f"expected a bipartite signature, got dims {rho.dims}")
    eig_a = hermitian_eig(rho.marginal([0]).matrix)
    eig_b = hermitian_eig(rho.marginal([1]).matrix)
    for name, vals in (("A", eig_a.eigenvalues), ("B", eig_b.eigenvalues)):
        if vals.size > 1 and np.min(np.diff(vals)) < 1e-8:
            warnings.warn(
                f"marginal {name} has an eigenvalue gap below 1e-8; "
                "its eigenprojectors follow the deterministic ordering convention",
                DegenerateMarginalWarning,
                stacklevel=2,
            )
    u = tensor_product(eig_a.eigenvectors, eig_b.eigenvectors)
    joint = np.real(np.diag(u.conj().T @ rho.matrix @ u))
    decohered = (u * np.maximum(joint, 0.0)) @ u.conj().T
    return relative_entropy(rho.matrix, decohered)


def discord_relative_entropy_decomposition(
    rho: DensityMatrix, m: ProjectiveMeasurement
) -> DiscordDecomposition:
    """Discord at a fixed measurement, directly and as a relative-entropy gap.

    ``direct`` is mutual information minus measured mutual information;
    ``via_relative_entropies`` is S(rho || rho^pinched) minus
    S(rho_A || rho_A^pinched).  The two agree for rank-1 qubit measurements
    by the pinching identity.
    """
    _require_two_qubits(rho)
    if m.block_dim != 2:
        raise DimensionMismatch(f"expected a qubit measurement, got block dim {m.block_dim}")
    outcome = measure_subsystem(rho, m)
    direct = mutual_information(rho) - measured_mutual_information(rho, m)
    rho_d = outcome.pinched_state
    via = relative_entropy(rho, rho_d) - relative_entropy(
        rho.marginal([0]), rho_d.marginal([0])
    )
    return DiscordDecomposition(direct=direct, via_relative_entropies=via)


def measure_report(rho: DensityMatrix, cfg: Optional[OptimizerConfig] = None) -> MeasureReport:
    """Compute every measure of a two-qubit state in one pass.

    Discord and classical correlation come from a single optimizer run, so
    their sum reproduces the mutual information exactly.
    """
    _require_two_qubits(rho)
    cfg = cfg or OptimizerConfig()
    mi = mutual_information(rho)
    opt = maximize_measured_mi(rho, cfg)
    classical = _clip_dust(opt.value, cfg.tolerance)
    discord = _clip_dust(mi - opt.value, cfg.tolerance)
    deficit = oneway_deficit(rho, cfg)

    with warnings.catch_warnings(record=True) as grabbed:
        warnings.simplefilter("always", DegenerateMarginalWarning)
        qdef = quantum_deficit(rho)
        caught = [str(w.message) for w in grabbed if issubclass(w.category, DegenerateMarginalWarning)]

    return MeasureReport(
        mutual_information=mi,
        discord=discord,
        classical_correlation=classical,
        oneway_deficit=deficit,
        quantum_deficit=qdef,
        optimal_theta=opt.theta,
        optimal_phi=opt.phi,
        optimal_measurement=bloch_projectors(opt.theta, opt.phi),
        diagnostics={
            "evaluations": opt.evaluations,
            "raw_discord": mi - opt.value,
            "raw_classical_correlation": opt.value,
        },
        warnings=tuple(caught),
    )
