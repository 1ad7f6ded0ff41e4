"""Entropy functionals, all in bits."""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidInputError
from .linalg import partial_trace
from .states import DensityMatrix, as_state

DIST_SUM_TOL = 1e-9
WEIGHT_TOL = 1e-12
EIGEN_CLAMP = 1e-9


def _plogp(p: np.ndarray) -> np.ndarray:
    safe = np.where(p > 0, p, 1.0)
    return np.where(p > 0, p * np.log2(safe), 0.0)


def shannon(dist) -> float:
    """Shannon entropy −Σ p log2 p of a probability vector (0 log 0 = 0)."""
    p = np.asarray(dist, dtype=float).ravel()
    if p.size == 0 or not np.all(np.isfinite(p)):
        raise InvalidInputError("distribution must be a non-empty finite vector")
    if np.any(p < -WEIGHT_TOL) or np.any(p > 1 + WEIGHT_TOL):
        raise InvalidInputError(f"distribution weights must lie in [0, 1], got {p.tolist()}")
    if abs(p.sum() - 1.0) > DIST_SUM_TOL:
        raise InvalidInputError(f"distribution must sum to 1, sums to {p.sum():.12g}")
    p = np.clip(p, 0.0, 1.0)
    return float(max(0.0, -np.sum(_plogp(p))))


def binary_entropy(x) -> float:
    """H(x) = −x log2 x − (1−x) log2 (1−x)."""
    x = float(x)
    if not (-WEIGHT_TOL <= x <= 1 + WEIGHT_TOL):
        raise InvalidInputError(f"binary_entropy argument must lie in [0, 1], got {x}")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def binary_entropy_array(x) -> np.ndarray:
    """Elementwise binary entropy; inputs are clipped to [0, 1]."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    return -(_plogp(x) + _plogp(1.0 - x))


def spectrum_entropy(eigenvalues) -> float:
    lam = np.asarray(eigenvalues, dtype=float)
    lam = np.where((lam < 0) & (lam >= -EIGEN_CLAMP), 0.0, lam)
    return shannon(lam / lam.sum())


def von_neumann(rho) -> float:
    """S(ρ) = −Tr ρ log2 ρ from the Jacobi spectrum."""
    rho = as_state(rho)
    return spectrum_entropy(rho.eigenvalues)


def marginal(rho, keep: str) -> DensityMatrix:
    rho = as_state(rho, dim=4)
    return DensityMatrix(partial_trace(rho.matrix, keep), label=f"Tr_{'B' if keep == 'A' else 'A'}")


def conditional_vn(rho_ab) -> float:
    """S(A|B) = S(ρ_AB) − S(ρ_B); negative values witness entanglement."""
    rho_ab = as_state(rho_ab, dim=4)
    return von_neumann(rho_ab) - von_neumann(marginal(rho_ab, "B"))


def mutual_information(rho_ab) -> float:
    """I(A:B) = S(ρ_A) + S(ρ_B) − S(ρ_AB)."""
    rho_ab = as_state(rho_ab, dim=4)
    return von_neumann(marginal(rho_ab, "A")) + von_neumann(marginal(rho_ab, "B")) - von_neumann(rho_ab)
