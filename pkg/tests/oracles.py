"""Independent brute-force oracles used to pin optimizer results.

Everything here is written against raw numpy with closed-form two-level
algebra (Bloch decomposition of the measurement statistics, quadratic
eigenvalue formula) so that it shares no code path with the package's
generic measurement machinery.
"""

import numpy as np

PAULIS = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def xlog2(x):
    x = np.maximum(np.asarray(x, dtype=float), 0.0)
    return np.where(x > 0, x * np.log2(np.where(x > 0, x, 1.0)), 0.0)


def entropy_bits(matrix):
    """Spectrum entropy via numpy's eigvalsh; no package involvement."""
    vals = np.linalg.eigvalsh(matrix)
    return float(-xlog2(vals).sum())


def eig2x2_batch(mats):
    """Closed-form eigenvalues of a batch of Hermitian 2x2 matrices."""
    tr = np.real(mats[..., 0, 0] + mats[..., 1, 1])
    det = np.real(
        mats[..., 0, 0] * mats[..., 1, 1] - mats[..., 0, 1] * mats[..., 1, 0]
    )
    disc = np.sqrt(np.maximum(tr * tr - 4.0 * det, 0.0))
    return 0.5 * (tr - disc), 0.5 * (tr + disc)


def dense_grid_measures(rho4, n_theta=721, n_phi=1441, chunk=120000):
    """Brute-force (discord, classical correlation, mutual information).

    Scans measured mutual information over an inclusive (theta, phi) grid
    using the Bloch-affine form of the post-measurement statistics:
    the unnormalized B conditional for outcome +/- along direction n is
    (rho_B +/- sum_k n_k Tr_A[(sigma_k (x) I) rho]) / 2 with probability
    (1 +/- n . r) / 2.
    """
    rho4 = np.asarray(rho4, dtype=complex)
    rho_b = rho4.reshape(2, 2, 2, 2).trace(axis1=0, axis2=2)
    rho_a = rho4.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)
    corr = []  # R_k = Tr_A[(sigma_k (x) I) rho]
    bloch_a = []
    for pauli in PAULIS:
        big = np.kron(pauli, np.eye(2)) @ rho4
        corr.append(big.reshape(2, 2, 2, 2).trace(axis1=0, axis2=2))
        bloch_a.append(float(np.real(np.trace(big))))
    corr = np.stack(corr)
    bloch_a = np.asarray(bloch_a)

    s_b = entropy_bits(rho_b)
    mutual = entropy_bits(rho_a) + s_b - entropy_bits(rho4)

    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    tt, pp = tt.ravel(), pp.ravel()

    best = -np.inf
    for start in range(0, tt.size, chunk):
        t = tt[start : start + chunk]
        p = pp[start : start + chunk]
        n = np.stack([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)], axis=1)
        drift = np.einsum("nk,kab->nab", n, corr)
        probs = 0.5 * np.stack([1.0 + n @ bloch_a, 1.0 - n @ bloch_a], axis=0)
        conds = 0.5 * np.stack([rho_b + drift, rho_b - drift], axis=0)
        avg = np.zeros(t.size)
        for branch in range(2):
            lo, hi = eig2x2_batch(conds[branch])
            avg += -xlog2(lo) - xlog2(hi) + xlog2(probs[branch])
        best = max(best, float(np.max(s_b - avg)))

    return mutual - best, best, mutual
