"""Randomized property checks over seeded two-qubit states."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bounds import bound_l1, bound_l2, bound_l4, disagreement_game, game_probability, lhs_entropic, lhs_fano
from .correlations import classical_gain, classical_information, extractable_classical_information, quantum_discord
from .entropy import conditional_vn, marginal, von_neumann
from .measurement import Side, dephase, ensemble_conditional_entropy, p_different
from .states import random_mub_pair, random_observable, random_state

IDENTITY_TOL = 1e-9
GAME_TOL = 1e-12


@dataclass
class PropertyTally:
    name: str
    tol: float
    checks: int = 0
    passed: int = 0
    worst_margin: float = float("inf")
    failures: list[str] = field(default_factory=list)

    def record(self, margin: float, where: str) -> None:
        """``margin`` is slack against the tolerance; negative means violated."""
        self.checks += 1
        if margin >= -self.tol:
            self.passed += 1
        elif len(self.failures) < 5:
            self.failures.append(f"{where}: margin {margin:.3e}")
        self.worst_margin = min(self.worst_margin, margin)

    @property
    def ok(self) -> bool:
        return self.passed == self.checks


def sample_state(seed: int, index: int):
    """State number ``index`` of a run: seed + index, ranks cycling 1..4."""
    return random_state(seed + index, rank=1 + index % 4)


def run_verification(samples: int, seed: int, tol: float = 1e-7, pairs: int = 20) -> list[PropertyTally]:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    t = {
        name: PropertyTally(name, tl)
        for name, tl in [
            ("lhs_fano >= L1", tol),
            ("lhs_fano >= L2", tol),
            ("lhs_fano >= L4", tol),
            ("lhs_entropic >= L1", tol),
            ("discord >= 0", tol),
            ("C^M >= probed gain", tol),
            ("extractable <= gain", tol),
            ("S(A|R_B) = S(A) - C_B^R", IDENTITY_TOL),
            ("dephasing = ensemble", IDENTITY_TOL),
            ("game = p_different", GAME_TOL),
        ]
    }
    for i in range(samples):
        rho = sample_state(seed, i)
        where = f"seed={seed + i} rank={1 + i % 4}"
        rng = np.random.default_rng([seed, i])
        cm = classical_information(rho, Side.B)
        t["discord >= 0"].record(quantum_discord(rho, Side.B, cm=cm), where)
        for _ in range(pairs):
            r, s = random_mub_pair(rng)
            l1 = bound_l1(rho, r, s)
            l2 = bound_l2(rho, r, s, Side.B, cm=cm)
            fano = lhs_fano(rho, r, s)
            t["lhs_fano >= L1"].record(fano - l1, where)
            t["lhs_fano >= L2"].record(fano - l2, where)
            t["lhs_fano >= L4"].record(fano - bound_l4(rho, r, s), where)
            t["lhs_entropic >= L1"].record(lhs_entropic(rho, r, s) - l1, where)
        obs = random_observable(rng)
        gain_b = classical_gain(rho, obs, Side.B)
        t["C^M >= probed gain"].record(cm.value - gain_b, where)
        t["extractable <= gain"].record(gain_b - extractable_classical_information(rho, obs), where)
        s_a = von_neumann(marginal(rho, "A"))
        t["S(A|R_B) = S(A) - C_B^R"].record(-abs(conditional_vn(dephase(rho, obs, Side.B)) - (s_a - gain_b)), where)
        t["dephasing = ensemble"].record(-abs(conditional_vn(dephase(rho, obs, Side.A)) - ensemble_conditional_entropy(rho, obs)), where)
        t["game = p_different"].record(-abs(game_probability(rho, disagreement_game(obs)) - p_different(rho, obs)), where)
    return list(t.values())
