"""One-sided classical correlation, quantum discord and extractable classical information."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .entropy import binary_entropy, binary_entropy_array, marginal, mutual_information, shannon, von_neumann
from .exceptions import ConvergenceWarning, ParameterError
from .measurement import Side, as_side, condition_on, directions_from_angles, joint_distribution, projector_stack
from .states import Observable, as_state, mixed_marginal_eigenvalues

GRID_THETA = 64
GRID_PHI = 128
NM_FATOL = 1e-10
NM_XATOL = 1e-8
NM_MAXITER = 500
DISCORD_CLAMP = 1e-7


@dataclass(frozen=True)
class OptimizationResult:
    value: float
    argmax: Observable
    iterations: int
    converged: bool


def classical_gain(rho_ab, obs: Observable, side="B") -> float:
    """S(unmeasured marginal) − Σ_j p_j S(conditional state) for a fixed measurement.

    ``side`` is the party that measures ``obs``.
    """
    side = as_side(side)
    rho_ab = as_state(rho_ab, dim=4)
    ens = condition_on(rho_ab, obs, side)
    return von_neumann(marginal(rho_ab, side.other.value)) - ens.average_entropy()


def gain_many(rho_ab, directions, side="B") -> np.ndarray:
    """Vectorized :func:`classical_gain` over an (N, 3) array of unit directions.

    Conditional qubit states are diagonalized in closed form, (1 ± |r|)/2.
    """
    side = as_side(side)
    rho_ab = as_state(rho_ab, dim=4)
    base = von_neumann(marginal(rho_ab, side.other.value))
    return _gain_many(rho_ab.matrix, directions, side, base)


def _gain_many(m: np.ndarray, directions, side: Side, base: float) -> np.ndarray:
    t = m.reshape(2, 2, 2, 2)  # t[x, y, k, l] = <x y| rho |k l>
    proj = projector_stack(directions)
    if side is Side.B:
        cond = np.einsum("njyz,xzky->njxk", proj, t)
    else:
        cond = np.einsum("njxz,zyxl->njyl", proj, t)
    p = (cond[..., 0, 0] + cond[..., 1, 1]).real
    diff = (cond[..., 0, 0] - cond[..., 1, 1]).real
    radius = np.sqrt(diff**2 + 4.0 * np.abs(cond[..., 0, 1]) ** 2)
    ok = p > 1e-12
    r = np.where(ok, radius / np.where(ok, p, 1.0), 0.0)
    branch_entropy = np.where(ok, binary_entropy_array((1.0 - np.clip(r, 0.0, 1.0)) / 2.0), 0.0)
    return base - np.sum(np.where(ok, p, 0.0) * branch_entropy, axis=1)


def classical_information(rho_ab, side="B", grid: tuple[int, int] = (GRID_THETA, GRID_PHI)) -> OptimizationResult:
    """Maximum of :func:`classical_gain` over all projective qubit measurements on ``side``.

    A (theta, phi) grid locates the basin; Nelder-Mead polishes from the best
    grid point and stops once the simplex values agree to 1e-10.
    """
    side = as_side(side)
    rho_ab = as_state(rho_ab, dim=4)
    n_theta, n_phi = grid
    theta = np.linspace(0.0, math.pi, n_theta)
    phi = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    base = von_neumann(marginal(rho_ab, side.other.value))
    m = rho_ab.matrix
    values = _gain_many(m, directions_from_angles(tt.ravel(), pp.ravel()), side, base)
    best = int(np.flatnonzero(values >= values.max() - 1e-12)[0])
    x0 = np.array([tt.ravel()[best], pp.ravel()[best]])
    grid_value = float(values[best])

    def objective(x):
        return -float(_gain_many(m, directions_from_angles(x[0], x[1])[None, :], side, base)[0])

    step = np.array([theta[1] - theta[0], phi[1] - phi[0]])
    simplex = np.array([x0, x0 + [step[0], 0.0], x0 + [0.0, step[1]]])
    res = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={"initial_simplex": simplex, "xatol": NM_XATOL, "fatol": NM_FATOL, "maxiter": NM_MAXITER},
    )
    spread = float(np.ptp(res.final_simplex[1]))
    converged = spread < NM_FATOL or bool(res.success)
    if not converged:
        warnings.warn(f"classical_information did not converge (simplex spread {spread:.2e})", ConvergenceWarning, stacklevel=2)

    if -res.fun >= grid_value:
        value, best_x = float(-res.fun), res.x
    else:
        value, best_x = grid_value, x0
    argmax = Observable.from_direction(directions_from_angles(best_x[0], best_x[1]))
    return OptimizationResult(value=value, argmax=argmax, iterations=int(res.nit), converged=converged)


def luo_classical_information(cx: float, cy: float, cz: float) -> float:
    """Closed-form classical information of (I + Σ c_i σ_i⊗σ_i)/4.

    With c = max|c_i| this is ((1−c)/2) log2(1−c) + ((1+c)/2) log2(1+c).
    """
    lam = mixed_marginal_eigenvalues(cx, cy, cz)
    if np.any(lam < -1e-12) or np.any(lam > 1 + 1e-12):
        raise ParameterError(f"({cx}, {cy}, {cz}) does not define a valid state")
    c = max(abs(cx), abs(cy), abs(cz))
    return 1.0 - binary_entropy((1.0 - c) / 2.0)


def quantum_discord(rho_ab, side="B", cm: OptimizationResult | None = None) -> float:
    """Mutual information minus the classical information for measurements on ``side``.

    Pass a precomputed ``cm`` to skip the optimization.
    """
    rho_ab = as_state(rho_ab, dim=4)
    if cm is None:
        cm = classical_information(rho_ab, side)
    d = mutual_information(rho_ab) - cm.value
    if -DISCORD_CLAMP < d < 0:
        d = 0.0
    return d


def extractable_classical_information(rho_ab, obs: Observable) -> float:
    """Classical mutual information of the outcomes when both parties measure ``obs``.

    H(Alice's outcome) − Σ_b p(b) H(Alice's outcome | Bob got b).
    """
    table = joint_distribution(rho_ab, obs, obs)
    table = np.clip(table, 0.0, None)
    table = table / table.sum()
    p_a = table.sum(axis=1)
    p_b = table.sum(axis=0)
    cond = sum(p_b[b] * shannon(table[:, b] / p_b[b]) for b in range(2) if p_b[b] > 1e-12)
    return float(shannon(p_a) - cond)
