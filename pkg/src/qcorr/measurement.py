"""Projective and generalized measurements on a leading subsystem block.

A measurement acts on the first ``k`` subsystems of a state's dimension
signature (k is inferred from the projector dimension); the remaining
subsystems are the undisturbed "B side".  Measurements on interior or
permuted blocks are intentionally unsupported to keep the index
arithmetic auditable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotResolutionOfIdentity
from .linalg import hermiticity_defect, partial_trace, tensor_product
from .states import (
    DensityMatrix,
    KET_0,
    KET_1,
    KET_MINUS,
    KET_PLUS,
    kron_all,
    validate_density,
)

MEASUREMENT_TOL = 1e-10

#: Outcomes with probability below this are flagged absent; their
#: conditional state is undefined and they contribute nothing to entropy
#: averages (the p -> 0 limit of p * S is zero).
ZERO_OUTCOME_TOL = 1e-12


@dataclass(frozen=True)
class ProjectiveMeasurement:
    """Complete set of mutually orthogonal Hermitian projectors."""

    projectors: Tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = tuple(np.asarray(pi, dtype=complex) for pi in self.projectors)
        if not mats:
            raise DimensionMismatch("measurement needs at least one projector")
        d = mats[0].shape[0]
        total = np.zeros((d, d), dtype=complex)
        for i, pi in enumerate(mats):
            if pi.shape != (d, d):
                raise DimensionMismatch(f"projector {i} has shape {pi.shape}, expected {(d, d)}")
            if hermiticity_defect(pi) > MEASUREMENT_TOL:
                raise NotHermitian(f"projector {i} is not Hermitian")
            if np.max(np.abs(pi @ pi - pi)) > MEASUREMENT_TOL:
                raise ValueError(f"projector {i} is not idempotent")
            for j in range(i):
                if np.max(np.abs(mats[j] @ pi)) > MEASUREMENT_TOL:
                    raise ValueError(f"projectors {j} and {i} are not orthogonal")
            total += pi
        if np.max(np.abs(total - np.eye(d))) > MEASUREMENT_TOL:
            raise NotResolutionOfIdentity("projectors do not sum to the identity")
        object.__setattr__(self, "projectors", mats)

    @property
    def block_dim(self) -> int:
        return self.projectors[0].shape[0]

    def __len__(self) -> int:
        return len(self.projectors)


@dataclass(frozen=True)
class MeasurementOutcome:
    """Probabilities, B-side conditional states, and the pinched state."""

    probabilities: np.ndarray
    conditional_states: Tuple[Optional[DensityMatrix], ...]
    pinched_state: DensityMatrix


def bloch_projectors(theta: float, phi: float) -> ProjectiveMeasurement:
    """Two-outcome qubit measurement along the Bloch direction (theta, phi)."""
    nx = math.sin(theta) * math.cos(phi)
    ny = math.sin(theta) * math.sin(phi)
    nz = math.cos(theta)
    up = 0.5 * np.array(
        [[1.0 + nz, nx - 1j * ny], [nx + 1j * ny, 1.0 - nz]], dtype=complex
    )
    down = np.eye(2, dtype=complex) - up
    return ProjectiveMeasurement((up, down))


def _leading_block(dims: Sequence[int], block_dim: int) -> int:
    """Number of leading subsystems whose dimensions multiply to block_dim."""
    prod = 1
    for k, d in enumerate(dims):
        prod *= d
        if prod == block_dim:
            return k + 1
        if prod > block_dim:
            break
    raise DimensionMismatch(
        f"no leading block of dims {tuple(dims)} has total dimension {block_dim}"
    )


def _expand(op: np.ndarray, dims: Sequence[int], block: int) -> np.ndarray:
    rest = int(np.prod(dims[block:], initial=1))
    if rest == 1:
        return np.asarray(op, dtype=complex)
    return tensor_product(op, np.eye(rest, dtype=complex))


def measure_subsystem(rho: DensityMatrix, m: ProjectiveMeasurement) -> MeasurementOutcome:
    """Apply ``m`` to the leading block of ``rho``.

    Returns outcome probabilities, the conditional states of the untouched
    remainder (``None`` when the outcome probability vanishes), and the
    pinched state built from all outcome branches.
    """
    block = _leading_block(rho.dims, m.block_dim)
    if block == len(rho.dims):
        raise DimensionMismatch("measurement block covers the whole system; nothing remains")
    rest = list(range(block, len(rho.dims)))

    probs = []
    conditionals: List[Optional[DensityMatrix]] = []
    pinched = np.zeros_like(rho.matrix)
    for pi in m.projectors:
        e = _expand(pi, rho.dims, block)
        branch = e @ rho.matrix @ e
        p = float(branch.trace().real)
        pinched += branch
        probs.append(p)
        if p < ZERO_OUTCOME_TOL:
            conditionals.append(None)
            continue
        cond = partial_trace(branch, rho.dims, rest) / p
        conditionals.append(validate_density(cond, tuple(rho.dims[i] for i in rest)))
    return MeasurementOutcome(
        probabilities=np.array(probs),
        conditional_states=tuple(conditionals),
        pinched_state=validate_density(pinched, rho.dims),
    )


def pinch(rho: DensityMatrix, m: ProjectiveMeasurement) -> DensityMatrix:
    """sum_a (P_a (x) I) rho (P_a (x) I); idempotent and trace exact."""
    block = _leading_block(rho.dims, m.block_dim)
    out = np.zeros_like(rho.matrix)
    for pi in m.projectors:
        e = _expand(pi, rho.dims, block)
        out += e @ rho.matrix @ e
    return validate_density(out, rho.dims)


def apply_povm_elements(rho: DensityMatrix, elements: Sequence[np.ndarray]):
    """Outcome ensemble of measurement operators V_i acting on the leading block.

    Requires sum V_i^dag V_i = I.  Returns (probabilities, conditional B
    states), with ``None`` conditionals for vanishing-probability outcomes.
    """
    ops = [np.asarray(v, dtype=complex) for v in elements]
    d = ops[0].shape[0]
    total = sum(v.conj().T @ v for v in ops)
    if np.max(np.abs(total - np.eye(d))) > MEASUREMENT_TOL:
        raise NotResolutionOfIdentity(
            f"sum V^dag V deviates from identity by {np.max(np.abs(total - np.eye(d))):.3e}"
        )
    block = _leading_block(rho.dims, d)
    if block == len(rho.dims):
        raise DimensionMismatch("measurement block covers the whole system; nothing remains")
    rest = list(range(block, len(rho.dims)))

    probs = []
    conditionals: List[Optional[DensityMatrix]] = []
    for v in ops:
        e = _expand(v, rho.dims, block)
        branch = e @ rho.matrix @ e.conj().T
        q = float(branch.trace().real)
        probs.append(q)
        if q < ZERO_OUTCOME_TOL:
            conditionals.append(None)
            continue
        cond = partial_trace(branch, rho.dims, rest) / q
        conditionals.append(validate_density(cond, tuple(rho.dims[i] for i in rest)))
    return np.array(probs), tuple(conditionals)


def is_insensitive(rho: DensityMatrix, m: ProjectiveMeasurement, tol: float = 1e-10):
    """Whether pinching by ``m`` leaves ``rho`` unchanged within ``tol``.

    Returns (flag, Frobenius residual).
    """
    residual = float(np.linalg.norm(pinch(rho, m).matrix - rho.matrix))
    return residual <= tol, residual


def example_extension_measurement() -> ProjectiveMeasurement:
    """Four-outcome rank-1 measurement on the ancilla+A block that leaves
    :func:`~qcorr.states.example_extension` unchanged for every mixing weight."""
    vectors = (
        kron_all(KET_0.amplitudes, KET_PLUS.amplitudes),
        kron_all(KET_0.amplitudes, KET_MINUS.amplitudes),
        kron_all(KET_1.amplitudes, KET_0.amplitudes),
        kron_all(KET_1.amplitudes, KET_1.amplitudes),
    )
    return ProjectiveMeasurement(tuple(np.outer(v, v.conj()) for v in vectors))
