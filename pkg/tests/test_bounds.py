import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eurbounds.bounds import (
    GameSpec,
    adaptive_complementarity,
    bound_l0,
    bound_l1,
    bound_l2,
    bound_l3,
    bound_l4,
    chsh_game,
    complementarity,
    disagreement_game,
    full_report,
    game_probability,
    lhs_entropic,
    lhs_fano,
    optimize_settings,
    overlaps,
)
from eurbounds.entropy import marginal
from eurbounds.exceptions import GameSpecError
from eurbounds.measurement import p_different
from eurbounds.states import (
    Observable,
    bell_diagonal,
    classical_state,
    mixed_marginal,
    pure_entangled,
    random_mub_pair,
    random_observable,
    random_state,
    werner,
)
from oracles import I2, h2, joint_bruteforce, proj, ptrace_loops, vn

Z, X, Y = Observable.axis("z"), Observable.axis("x"), Observable.axis("y")
seeds = st.integers(0, 2**31 - 1)


def adaptive_oracle(rho_a, r, s):
    rn, sn = r.direction, s.direction
    c = np.array([[(1 + si * sj * (rn @ sn)) / 2 for sj in (1, -1)] for si in (1, -1)])
    p_r = [np.trace(rho_a @ proj(rn, i)).real for i in range(2)]
    p_s = [np.trace(rho_a @ proj(sn, j)).real for j in range(2)]
    rs = sum(p_r[i] * math.log2(1 / c[i].max()) for i in range(2))
    sr = sum(p_s[j] * math.log2(1 / c[:, j].max()) for j in range(2))
    return max(rs, sr)


def lhs_entropic_oracle(rho, r, s):
    total = 0.0
    for obs in (r, s):
        deph = sum(np.kron(proj(obs.direction, j), I2) @ rho @ np.kron(proj(obs.direction, j), I2) for j in range(2))
        total += vn(deph) - vn(ptrace_loops(deph, "B"))
    return total


def test_overlaps_and_complementarity():
    assert np.allclose(overlaps(Z, X), 0.5)
    assert np.allclose(overlaps(Z, Z), np.eye(2))
    assert complementarity(Z, Y) == pytest.approx(0.5)
    assert complementarity(Z, Z) == pytest.approx(1.0)
    tilted = Observable(math.pi / 3, 0.0)
    assert complementarity(Z, tilted) == pytest.approx(math.cos(math.pi / 6) ** 2)


@settings(max_examples=80, deadline=None)
@given(seed=seeds)
def test_adaptive_complementarity_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    rho_a = marginal(random_state(seed, 1 + seed % 4), "A")
    r, s = random_observable(rng), random_observable(rng)
    value = adaptive_complementarity(rho_a, r, s)
    assert value == pytest.approx(adaptive_oracle(rho_a.matrix, r, s), abs=1e-10)
    assert value >= math.log2(1 / complementarity(r, s)) - 1e-10


def test_adaptive_complementarity_mub_is_one():
    rng = np.random.default_rng(2)
    for _ in range(10):
        r, s = random_mub_pair(rng)
        assert adaptive_complementarity(np.eye(2) / 2, r, s) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(seed=seeds)
def test_lhs_entropic_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    rho = random_state(seed, 1 + seed % 4)
    r, s = random_observable(rng), random_observable(rng)
    assert lhs_entropic(rho, r, s) == pytest.approx(lhs_entropic_oracle(rho.matrix, r, s), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(seed=seeds)
def test_fano_and_game_agree(seed):
    rng = np.random.default_rng(seed)
    rho = random_state(seed, 1 + seed % 4)
    r, s = random_mub_pair(rng)
    pr = joint_bruteforce(rho.matrix, r.direction, r.direction)
    ps = joint_bruteforce(rho.matrix, s.direction, s.direction)
    expected = h2(pr[0, 1] + pr[1, 0]) + h2(ps[0, 1] + ps[1, 0])
    assert lhs_fano(rho, r, s) == pytest.approx(expected, abs=1e-10)
    assert bound_l3(rho, r, s) == lhs_fano(rho, r, s)
    assert game_probability(rho, disagreement_game(r)) == pytest.approx(p_different(rho, r), abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=seeds)
def test_bound_ordering_on_random_states(seed):
    rng = np.random.default_rng(seed)
    rho = random_state(seed, 1 + seed % 4)
    r, s = random_mub_pair(rng)
    fano = lhs_fano(rho, r, s)
    l1 = bound_l1(rho, r, s)
    assert lhs_entropic(rho, r, s) >= l1 - 1e-7
    assert fano >= max(l1, bound_l2(rho, r, s), bound_l4(rho, r, s)) - 1e-7
    assert bound_l2(rho, r, s) >= l1


def test_mixed_marginal_example_values():
    rho = mixed_marginal(0.5, -0.2, -0.3)
    assert bound_l0(rho, Z, X) == pytest.approx(2.0, abs=1e-12)
    assert bound_l1(rho, Z, X) == pytest.approx(1.558872, abs=1e-6)
    assert bound_l2(rho, Z, X) == pytest.approx(1.622556, abs=1e-6)
    assert bound_l3(rho, Z, X) == pytest.approx(1.745346, abs=1e-6)
    assert bound_l4(rho, Z, X) == pytest.approx(1.745346, abs=1e-6)


def test_bell_diagonal_settings_matter():
    rho = bell_diagonal(0.3)
    assert bound_l3(rho, Z, Y) == pytest.approx(h2(0.3), abs=1e-12)
    assert bound_l3(rho, Z, X) == pytest.approx(2 * h2(0.3), abs=1e-12)


def test_chsh_singlet_reaches_tsirelson():
    d = 1 / math.sqrt(2)
    b0 = Observable.from_direction([-d, 0, -d])
    b1 = Observable.from_direction([d, 0, -d])
    value = game_probability(werner(1.0), chsh_game(Z, X, b0, b1))
    assert value == pytest.approx(math.cos(math.pi / 8) ** 2, abs=1e-12)
    # classical states stay below the local limit
    assert game_probability(classical_state(0.5), chsh_game(Z, X, Z, X)) <= 0.75 + 1e-12


def test_gamespec_validation():
    with pytest.raises(GameSpecError):
        GameSpec((), (Z,), [1.0], np.zeros((0, 1, 2, 2)))
    with pytest.raises(GameSpecError):
        GameSpec((Z,), (Z,), [0.5], np.zeros((1, 1, 2, 2)))
    with pytest.raises(GameSpecError):
        GameSpec((Z,), (Z,), [1.0], np.full((1, 1, 2, 2), 2))
    with pytest.raises(GameSpecError):
        GameSpec((Z,), (Z,), [1.0], np.zeros((1, 1, 2)))
    with pytest.raises(GameSpecError):
        GameSpec(("z",), (Z,), [1.0], np.zeros((1, 1, 2, 2)))
    with pytest.raises(GameSpecError):
        game_probability(werner(0.5), "chsh")


def test_optimize_settings_pure_entangled():
    res = optimize_settings(pure_entangled(0.3))
    assert res.converged
    assert res.l3_value == pytest.approx(h2(0.5 - math.sqrt(0.21)), abs=1e-6)
    assert abs(res.obs_r.direction @ res.obs_s.direction) < 1e-9


def test_optimize_settings_never_worse_than_axes():
    rho = random_state(8, 2)
    res = optimize_settings(rho)
    for r, s in ((Z, X), (Z, Y), (X, Y)):
        assert res.l3_value <= lhs_fano(rho, r, s) + 1e-12


def test_full_report():
    rep = full_report(werner(0.723), Z, X)
    assert rep.converged
    assert rep.l1 <= rep.l2 <= rep.l3 + 1e-12
    assert rep.l3 == pytest.approx(rep.l4, abs=1e-9)
    d = rep.as_dict()
    assert d["side"] == "B" and d["obs_s"] == {"theta": math.pi / 2, "phi": 0.0}
    assert all(type(d[k]) is float for k in ("l0", "l1", "l2", "l3", "l4"))
    # the Werner state is symmetric under swapping the parties
    rep_a = full_report(werner(0.723), Z, X, "A")
    assert rep_a.l2 == pytest.approx(rep.l2, abs=1e-9)
