import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eurbounds.entropy import conditional_vn, von_neumann
from eurbounds.measurement import (
    Side,
    as_side,
    condition_on,
    dephase,
    directions_from_angles,
    disagreement_many,
    ensemble_conditional_entropy,
    joint_distribution,
    p_different,
    projector_stack,
    projectors,
)
from eurbounds.states import Observable, classical_state, random_observable, random_state, werner
from oracles import I2, joint_bruteforce, proj, ptrace_loops

seeds = st.integers(0, 2**31 - 1)


def test_side_helpers():
    assert Side.A.other is Side.B
    assert as_side("b") is Side.B
    with pytest.raises(ValueError):
        as_side("C")


def test_projectors_outcome_convention():
    up, down = projectors(Observable.axis("z"))
    assert np.allclose(up, np.diag([1, 0]))
    assert np.allclose(down, np.diag([0, 1]))


@settings(max_examples=100, deadline=None)
@given(seed=seeds)
def test_joint_distribution_matches_bruteforce(seed):
    rng = np.random.default_rng(seed)
    rho = random_state(seed, 1 + seed % 4)
    a, b = random_observable(rng), random_observable(rng)
    table = joint_distribution(rho, a, b)
    assert table.shape == (2, 2)
    assert table.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(table >= -1e-12)
    assert np.allclose(table, joint_bruteforce(rho.matrix, a.direction, b.direction), atol=1e-12)


def test_singlet_always_disagrees():
    rng = np.random.default_rng(0)
    for _ in range(10):
        assert p_different(werner(1.0), random_observable(rng)) == pytest.approx(1.0, abs=1e-12)
    assert p_different(classical_state(0.4), Observable.axis("z")) == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(seed=seeds, side=st.sampled_from(["A", "B"]))
def test_condition_on_matches_bruteforce(seed, side):
    rng = np.random.default_rng(seed)
    rho = random_state(seed)
    obs = random_observable(rng)
    ens = condition_on(rho, obs, side)
    assert ens.probabilities.sum() == pytest.approx(1.0, abs=1e-12)
    other = "A" if side == "B" else "B"
    for j, br in enumerate(ens.branches):
        op = np.kron(I2, proj(obs.direction, j)) if side == "B" else np.kron(proj(obs.direction, j), I2)
        post = op @ rho.matrix @ op
        p = np.trace(post).real
        assert br.prob == pytest.approx(p, abs=1e-12)
        assert np.allclose(br.state.matrix, ptrace_loops(post / p, other), atol=1e-10)
    # averaging the branches recovers the unmeasured marginal
    assert np.allclose(ens.average_state(), ptrace_loops(rho.matrix, other), atol=1e-12)


def test_zero_probability_branch():
    ens = condition_on(classical_state(1.0), Observable.axis("z"), "A")
    assert ens.branches[1].state is None
    assert ens.average_entropy() == 0.0


@settings(max_examples=60, deadline=None)
@given(seed=seeds)
def test_dephasing_matches_ensemble(seed):
    rng = np.random.default_rng(seed)
    rho = random_state(seed, 1 + seed % 4)
    obs = random_observable(rng)
    assert conditional_vn(dephase(rho, obs, "A")) == pytest.approx(ensemble_conditional_entropy(rho, obs), abs=1e-9)


def test_dephase_is_idempotent_and_trace_preserving():
    rho = random_state(4)
    obs = Observable(1.0, 2.0)
    once = dephase(rho, obs, Side.B)
    twice = dephase(once, obs, Side.B)
    assert np.allclose(once.matrix, twice.matrix, atol=1e-12)
    assert np.trace(once.matrix).real == pytest.approx(1.0)
    # dephasing never lowers the entropy
    assert von_neumann(once) >= von_neumann(rho) - 1e-10


def test_vectorized_forms_agree():
    rho = random_state(12)
    theta = np.array([0.0, 0.4, 1.3, np.pi])
    phi = np.array([0.0, 2.0, 5.0, 0.0])
    dirs = directions_from_angles(theta, phi)
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1)
    stack = projector_stack(dirs)
    assert stack.shape == (4, 2, 2, 2)
    assert np.allclose(stack[:, 0] + stack[:, 1], I2)
    expected = [p_different(rho, Observable(t, p)) for t, p in zip(theta, phi)]
    assert np.allclose(disagreement_many(rho, dirs), expected, atol=1e-12)
