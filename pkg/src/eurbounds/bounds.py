"""Uncertainty sums, the lower bounds L0-L4 and the fine-grained game evaluator.

Bounds:

* ``L0`` classical strategy: c'(ρ_B) + S(ρ_B)
* ``L1`` quantum memory: c'(ρ_A) + S(A|B)
* ``L2`` discord-tightened: L1 + max(0, D − C^M)
* ``L3`` fine-grained: H(p_d^R) + H(p_d^S)
* ``L4`` extractable classical information: c'(ρ_A) + S(ρ_A) − C^{R,R} − C^{S,S}
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .correlations import OptimizationResult, classical_information, extractable_classical_information, quantum_discord
from .entropy import binary_entropy, binary_entropy_array, conditional_vn, marginal, von_neumann
from .exceptions import GameSpecError
from .linalg import hermitian_eigensystem
from .measurement import Side, as_side, dephase, directions_from_angles, disagreement_many, joint_distribution, p_different
from .states import Observable, as_state

CORRECTION_CLAMP = 1e-9
SETTINGS_GRID = 32
SETTINGS_FATOL = 1e-10
SETTINGS_MAXITER = 500


@lru_cache(maxsize=4096)
def _eigenbasis(obs: Observable) -> np.ndarray:
    """Eigenvectors of ``obs`` as columns in outcome order (+1, −1); read-only."""
    v = hermitian_eigensystem(obs.operator).eigenvectors[:, ::-1].copy()
    v.setflags(write=False)
    return v


def overlaps(obs_r: Observable, obs_s: Observable) -> np.ndarray:
    """Matrix c[i, j] = |<r_i|s_j>|^2 between eigenvectors (outcome order +1, −1)."""
    return np.abs(_eigenbasis(obs_r).conj().T @ _eigenbasis(obs_s)) ** 2


def complementarity(obs_r: Observable, obs_s: Observable) -> float:
    """c = max_ij |<r_i|s_j>|^2; 1/2 for mutually unbiased qubit observables."""
    return float(overlaps(obs_r, obs_s).max())


def adaptive_complementarity(rho_a, obs_r: Observable, obs_s: Observable) -> float:
    """State-weighted complementarity c'(ρ), the larger of its two orderings."""
    rho_a = as_state(rho_a, dim=2).matrix
    c = overlaps(obs_r, obs_s)
    vr, vs = _eigenbasis(obs_r), _eigenbasis(obs_s)
    p_r = np.einsum("ki,kl,li->i", vr.conj(), rho_a, vr).real
    p_s = np.einsum("ki,kl,li->i", vs.conj(), rho_a, vs).real
    rs = float(np.sum(p_r * np.log2(1.0 / c.max(axis=1))))
    sr = float(np.sum(p_s * np.log2(1.0 / c.max(axis=0))))
    return max(rs, sr)


def lhs_entropic(rho_ab, obs_r: Observable, obs_s: Observable) -> float:
    """S(R_A|B) + S(S_A|B): conditional entropies after Alice's measurement is dephased."""
    rho_ab = as_state(rho_ab, dim=4)
    return conditional_vn(dephase(rho_ab, obs_r, Side.A)) + conditional_vn(dephase(rho_ab, obs_s, Side.A))


def lhs_fano(rho_ab, obs_r: Observable, obs_s: Observable) -> float:
    """H(p_d^R) + H(p_d^S) from the same-observable disagreement probabilities."""
    return binary_entropy(p_different(rho_ab, obs_r)) + binary_entropy(p_different(rho_ab, obs_s))


def bound_l0(rho_ab, obs_r: Observable, obs_s: Observable, side="B") -> float:
    side = as_side(side)
    rho_m = marginal(as_state(rho_ab, dim=4), side.value)
    return adaptive_complementarity(rho_m, obs_r, obs_s) + von_neumann(rho_m)


def bound_l1(rho_ab, obs_r: Observable, obs_s: Observable) -> float:
    rho_ab = as_state(rho_ab, dim=4)
    return adaptive_complementarity(marginal(rho_ab, "A"), obs_r, obs_s) + conditional_vn(rho_ab)


def discord_correction(rho_ab, side="B", cm: OptimizationResult | None = None) -> float:
    """max(0, D − C^M) with differences below 1e-9 treated as zero."""
    rho_ab = as_state(rho_ab, dim=4)
    if cm is None:
        cm = classical_information(rho_ab, side)
    diff = quantum_discord(rho_ab, side, cm=cm) - cm.value
    return diff if diff > CORRECTION_CLAMP else 0.0


def bound_l2(rho_ab, obs_r: Observable, obs_s: Observable, side="B", cm: OptimizationResult | None = None) -> float:
    return bound_l1(rho_ab, obs_r, obs_s) + discord_correction(rho_ab, side, cm)


def bound_l3(rho_ab, obs_r: Observable, obs_s: Observable) -> float:
    """Fine-grained bound at fixed settings.

    For equal local settings the a⊕b=1 winning probability is the
    disagreement probability, so this coincides with :func:`lhs_fano`;
    the optimal-settings character lives in :func:`optimize_settings`.
    """
    return lhs_fano(rho_ab, obs_r, obs_s)


def bound_l4(rho_ab, obs_r: Observable, obs_s: Observable) -> float:
    rho_ab = as_state(rho_ab, dim=4)
    rho_a = marginal(rho_ab, "A")
    return float(
        adaptive_complementarity(rho_a, obs_r, obs_s)
        + von_neumann(rho_a)
        - extractable_classical_information(rho_ab, obs_r)
        - extractable_classical_information(rho_ab, obs_s)
    )


# --- games ---------------------------------------------------------------------


@dataclass(frozen=True)
class GameSpec:
    """Two-party binary-outcome game.

    ``setting_probs[i, j]`` is the probability of asking Alice setting i and
    Bob setting j; ``win[i, j, a, b]`` is 1 when outcomes (a, b) win for that
    question pair.
    """

    settings_a: tuple[Observable, ...]
    settings_b: tuple[Observable, ...]
    setting_probs: np.ndarray
    win: np.ndarray

    def __post_init__(self):
        sa, sb = tuple(self.settings_a), tuple(self.settings_b)
        if not sa or not sb:
            raise GameSpecError("setting lists must be non-empty")
        if not all(isinstance(o, Observable) for o in sa + sb):
            raise GameSpecError("settings must be Observable instances")
        probs = np.asarray(self.setting_probs, dtype=float)
        if probs.size != len(sa) * len(sb):
            raise GameSpecError(f"setting_probs has {probs.size} entries for {len(sa)}x{len(sb)} setting pairs")
        probs = probs.reshape(len(sa), len(sb))
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-9:
            raise GameSpecError("setting_probs must be a probability distribution")
        win = np.asarray(self.win)
        if win.shape != (len(sa), len(sb), 2, 2):
            raise GameSpecError(f"win table must have shape {(len(sa), len(sb), 2, 2)}, got {win.shape}")
        if not np.all((win == 0) | (win == 1)):
            raise GameSpecError("win table entries must be 0 or 1")
        object.__setattr__(self, "settings_a", sa)
        object.__setattr__(self, "settings_b", sb)
        object.__setattr__(self, "setting_probs", probs)
        object.__setattr__(self, "win", win.astype(int))


_DISAGREE = np.array([[0, 1], [1, 0]])


def disagreement_game(obs: Observable) -> GameSpec:
    """Both parties measure ``obs``; they win iff a ⊕ b = 1."""
    return GameSpec((obs,), (obs,), np.ones((1, 1)), _DISAGREE[None, None])


def chsh_game(a0: Observable, a1: Observable, b0: Observable, b1: Observable) -> GameSpec:
    """Uniform questions, win iff a ⊕ b = t_A · t_B."""
    win = np.array([[[[int((a ^ b) == (ta & tb)) for b in range(2)] for a in range(2)] for tb in range(2)] for ta in range(2)])
    return GameSpec((a0, a1), (b0, b1), np.full((2, 2), 0.25), win)


def game_probability(rho_ab, game: GameSpec) -> float:
    """Σ p(t_A, t_B) Σ_ab V(a, b | t_A, t_B) Tr[(Π_a ⊗ Π_b) ρ]."""
    if not isinstance(game, GameSpec):
        raise GameSpecError("game must be a GameSpec")
    rho_ab = as_state(rho_ab, dim=4)
    total = 0.0
    for i, oa in enumerate(game.settings_a):
        for j, ob in enumerate(game.settings_b):
            if game.setting_probs[i, j] == 0:
                continue
            table = joint_distribution(rho_ab, oa, ob)
            total += game.setting_probs[i, j] * float(np.sum(game.win[i, j] * table))
    return total


# --- settings search -------------------------------------------------------------


class SettingsResult(NamedTuple):
    obs_r: Observable
    obs_s: Observable
    l3_value: float
    iterations: int
    converged: bool


def _mub_directions(theta, phi, psi):
    """First direction n(θ, φ) and a second one at angle ψ in its orthogonal plane."""
    theta, phi, psi = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (theta, phi, psi)))
    u = directions_from_angles(theta, phi)
    e1 = directions_from_angles(theta + math.pi / 2, phi)
    e2 = np.stack([-np.sin(phi), np.cos(phi), np.zeros_like(phi)], axis=-1)
    v = np.cos(psi)[..., None] * e1 + np.sin(psi)[..., None] * e2
    return u, v


def _fano_many(rho_ab, theta, phi, psi) -> np.ndarray:
    u, v = _mub_directions(theta, phi, psi)
    shape = u.shape[:-1]
    pu = disagreement_many(rho_ab, u.reshape(-1, 3))
    pv = disagreement_many(rho_ab, v.reshape(-1, 3))
    return (binary_entropy_array(pu) + binary_entropy_array(pv)).reshape(shape)


def optimize_settings(rho_ab, grid: int = SETTINGS_GRID) -> SettingsResult:
    """Mutually unbiased pair (R, S) minimizing H(p_d^R) + H(p_d^S).

    A grid over (θ, φ, ψ) is followed by Nelder-Mead refinement.  Ties are
    broken by grid order.
    """
    rho_ab = as_state(rho_ab, dim=4)
    theta = np.linspace(0.0, math.pi, grid)
    phi = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    psi = np.linspace(0.0, math.pi, grid, endpoint=False)
    tt, pp, ss = np.meshgrid(theta, phi, psi, indexing="ij")
    values = _fano_many(rho_ab, tt, pp, ss).ravel()
    best = int(np.flatnonzero(values <= values.min() + 1e-12)[0])
    x0 = np.array([tt.ravel()[best], pp.ravel()[best], ss.ravel()[best]])
    grid_value = float(values[best])

    def objective(x):
        return float(_fano_many(rho_ab, x[0], x[1], x[2]))

    steps = np.array([theta[1] - theta[0], phi[1] - phi[0], psi[1] - psi[0]])
    simplex = np.vstack([x0, x0 + np.diag(steps)])
    res = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={"initial_simplex": simplex, "xatol": 1e-8, "fatol": SETTINGS_FATOL, "maxiter": SETTINGS_MAXITER},
    )
    converged = float(np.ptp(res.final_simplex[1])) < SETTINGS_FATOL or bool(res.success)
    x = res.x if res.fun <= grid_value else x0
    u, v = _mub_directions(*x)
    obs_r, obs_s = Observable.from_direction(u), Observable.from_direction(v)
    return SettingsResult(obs_r, obs_s, lhs_fano(rho_ab, obs_r, obs_s), int(res.nit), converged)


# --- report ----------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    l0: float
    l1: float
    l2: float
    l3: float
    l4: float
    lhs_entropic: float
    lhs_fano: float
    obs_r: Observable
    obs_s: Observable
    side: Side
    classical_information: float = field(default=float("nan"))
    discord: float = field(default=float("nan"))
    converged: bool = True

    def as_dict(self) -> dict:
        d = asdict(self)
        d["obs_r"] = {"theta": self.obs_r.theta, "phi": self.obs_r.phi}
        d["obs_s"] = {"theta": self.obs_s.theta, "phi": self.obs_s.phi}
        d["side"] = self.side.value
        return d


def full_report(rho_ab, obs_r: Observable, obs_s: Observable, side="B") -> BoundReport:
    side = as_side(side)
    rho_ab = as_state(rho_ab, dim=4)
    cm = classical_information(rho_ab, side)
    fano = lhs_fano(rho_ab, obs_r, obs_s)
    return BoundReport(
        l0=bound_l0(rho_ab, obs_r, obs_s, side),
        l1=bound_l1(rho_ab, obs_r, obs_s),
        l2=bound_l2(rho_ab, obs_r, obs_s, side, cm=cm),
        l3=fano,
        l4=bound_l4(rho_ab, obs_r, obs_s),
        lhs_entropic=lhs_entropic(rho_ab, obs_r, obs_s),
        lhs_fano=fano,
        obs_r=obs_r,
        obs_s=obs_s,
        side=side,
        classical_information=cm.value,
        discord=quantum_discord(rho_ab, side, cm=cm),
        converged=cm.converged,
    )
