"""Local projective qubit measurements on two-qubit states.

Outcome 0 is the +1 eigenvalue of the observable and outcome 1 the −1
eigenvalue, on both sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .entropy import shannon, von_neumann
from .exceptions import InvalidInputError
from .linalg import I2, PAULIS, partial_trace
from .states import DensityMatrix, Observable, as_state

ZERO_PROB = 1e-12


class Side(str, Enum):
    """The party that performs the measurement."""

    A = "A"
    B = "B"

    @property
    def other(self) -> "Side":
        return Side.B if self is Side.A else Side.A


def as_side(side) -> Side:
    try:
        return Side(str(getattr(side, "value", side)).upper())
    except ValueError:
        raise InvalidInputError(f"side must be 'A' or 'B', got {side!r}") from None


class ProjectorPair(NamedTuple):
    pi0: np.ndarray
    pi1: np.ndarray


def projectors(obs: Observable) -> ProjectorPair:
    """Eigenprojectors (I ± n·σ)/2 for outcomes 0 and 1."""
    op = obs.operator
    return ProjectorPair((I2 + op) / 2, (I2 - op) / 2)


def _local(op: np.ndarray, side: Side) -> np.ndarray:
    return np.kron(op, I2) if side is Side.A else np.kron(I2, op)


def joint_distribution(rho_ab, obs_a: Observable, obs_b: Observable) -> np.ndarray:
    """Table ``p[a, b] = Tr[(Π_a ⊗ Π_b) ρ]`` for Alice measuring obs_a, Bob obs_b."""
    m = as_state(rho_ab, dim=4).matrix
    pa = projectors(obs_a)
    pb = projectors(obs_b)
    table = np.empty((2, 2))
    for a in range(2):
        for b in range(2):
            table[a, b] = np.trace(np.kron(pa[a], pb[b]) @ m).real
    return table


def p_different(rho_ab, obs: Observable) -> float:
    """Probability that both parties measuring ``obs`` get different outcomes."""
    t = joint_distribution(rho_ab, obs, obs)
    return float(t[0, 1] + t[1, 0])


class Branch(NamedTuple):
    prob: float
    state: DensityMatrix | None  # None marks a zero-probability branch


@dataclass(frozen=True)
class ConditionalEnsemble:
    branches: tuple[Branch, ...]

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([b.prob for b in self.branches])

    def average_entropy(self) -> float:
        """Σ_j p_j S(ρ_j); zero-probability branches contribute nothing."""
        return float(sum(b.prob * von_neumann(b.state) for b in self.branches if b.state is not None))

    def average_state(self) -> np.ndarray:
        return sum(b.prob * b.state.matrix for b in self.branches if b.state is not None)


def condition_on(rho_ab, obs: Observable, side) -> ConditionalEnsemble:
    """Post-measurement states of the unmeasured qubit after ``side`` measures ``obs``."""
    side = as_side(side)
    m = as_state(rho_ab, dim=4).matrix
    keep = side.other.value
    branches = []
    for j, pi in enumerate(projectors(obs)):
        big = _local(pi, side)
        post = partial_trace(big @ m @ big, keep)
        prob = float(np.trace(post).real)
        if prob <= ZERO_PROB:
            branches.append(Branch(max(prob, 0.0), None))
            continue
        cond = post / prob
        cond = 0.5 * (cond + cond.conj().T)
        branches.append(Branch(prob, DensityMatrix(cond, label=f"{keep}|{side.value}={j}")))
    return ConditionalEnsemble(tuple(branches))


def dephase(rho_ab, obs: Observable, side) -> DensityMatrix:
    """Measure ``obs`` on one side and forget the outcome: Σ_j (Π_j ⊗ I) ρ (Π_j ⊗ I)."""
    side = as_side(side)
    m = as_state(rho_ab, dim=4).matrix
    out = np.zeros((4, 4), dtype=complex)
    for pi in projectors(obs):
        big = _local(pi, side)
        out += big @ m @ big
    return DensityMatrix(0.5 * (out + out.conj().T), label=f"dephased_{side.value}")


def ensemble_conditional_entropy(rho_ab, obs: Observable) -> float:
    """H({p_j}) + Σ_j p_j S(ρ_{B|j}) − S(ρ_B) after Alice measures ``obs``.

    Equals ``conditional_vn(dephase(rho_ab, obs, "A"))``, computed the other way.
    """
    ens = condition_on(rho_ab, obs, Side.A)
    rho_b = DensityMatrix(partial_trace(as_state(rho_ab).matrix, "B"))
    return shannon(ens.probabilities / ens.probabilities.sum()) + ens.average_entropy() - von_neumann(rho_b)


# --- vectorized forms used by the optimizers ---------------------------------


def directions_from_angles(theta, phi) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


_PAULI_STACK = np.stack(PAULIS)


def projector_stack(directions) -> np.ndarray:
    """Array of shape (N, 2, 2, 2): ``out[n, j]`` is the outcome-j projector along n."""
    n = np.atleast_2d(np.asarray(directions, dtype=float))
    op = np.einsum("ni,ijk->njk", n, _PAULI_STACK)
    return np.stack([(I2 + op) / 2, (I2 - op) / 2], axis=1)


def disagreement_many(rho_ab, directions) -> np.ndarray:
    """p_different for many shared measurement directions at once."""
    t = np.asarray(as_state(rho_ab, dim=4).matrix).reshape(2, 2, 2, 2)
    proj = projector_stack(directions)
    # p[n, a, b] = Σ Π_a[k, x] Π_b[l, y] ρ[(x, y), (k, l)]
    p = np.einsum("nakx,nbly,xykl->nab", proj, proj, t, optimize=True).real
    return p[:, 0, 1] + p[:, 1, 0]
