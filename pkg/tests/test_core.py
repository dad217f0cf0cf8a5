"""
Tests for the game parameters and the utilities of both players.

"""
import numpy as np
import pytest

from ransomgame.core import (
    GameParams, GameVariant, HackerType, VictimAction, check_action,
    crack_terms, hacker_utility, victim_expected_payoff, victim_utility)
from ransomgame.exceptions import InadmissibleAction, InvalidParameters
from ransomgame.stochastics import ExpDecay, LogNormal

G1, G2 = GameVariant.GAMMA1, GameVariant.GAMMA2
A1, A2 = HackerType.A1, HackerType.A2


def test_defaults_are_the_reference_setting(example1):
    assert (example1.p, example1.p1, example1.c1, example1.c2) == \
        (0.9, 0.1, 1.0, 0.5)
    assert (example1.c4, example1.b1, example1.b2) == (0.2, 1.0, 1.5)
    assert not example1.has_backup


@pytest.mark.parametrize('kwargs', [
    {'p': 1.5},
    {'p1': -0.1},
    {'c1': -1.0},
    {'c4': float('inf')},
    {'b1': 2.0, 'b2': 1.0},
    {'p': 0.3, 'p1': 0.3},
    {'p3': 0.3},
    {'c3': 0.2},
    {'willingness': 0.5},
    {'c2': True},
])
def test_invalid_params(kwargs):
    pytest.raises(InvalidParameters, GameParams, **kwargs)


def test_backup_game_needs_recovery_parameters(example1, example2):
    assert example1.recovery(G1) == (0.0, 0.0)
    assert example2.recovery(G2) == (0.3, 0.2)
    assert example2.recovery(G1) == (0.0, 0.0)
    with pytest.raises(InvalidParameters) as exc:
        example1.recovery(G2)
    assert 'requires p3 and c3' in str(exc.value)
    assert example1.with_backup(0.3, 0.2) == example2


def test_params_round_trip(example2):
    params = GameParams(willingness=ExpDecay(0.5),
                        valuation=LogNormal(0.2, 0.5), p3=0.1, c3=0.05)
    assert GameParams.from_dict(params.to_dict()) == params
    assert GameParams.from_dict(example2.to_dict()) == example2
    assert 'p3' not in GameParams().to_dict()


def test_unknown_param(example1):
    data = example1.to_dict()
    data['c5'] = 1.0
    with pytest.raises(InvalidParameters) as exc:
        GameParams.from_dict(data)
    assert 'c5' in str(exc.value)


def test_params_are_hashable(example1):
    assert hash(example1) == hash(GameParams())


def test_actions_per_variant():
    assert G1.actions == (VictimAction.D, VictimAction.P, VictimAction.C)
    assert G2.actions == (VictimAction.D, VictimAction.P, VictimAction.R)
    check_action(G1, VictimAction.C)
    pytest.raises(InadmissibleAction, check_action, G1, VictimAction.R)
    pytest.raises(InadmissibleAction, check_action, G2, VictimAction.C)


def test_crack_terms_reference_values(example1):
    q, k = crack_terms(example1, G1, 1.0)
    assert q == pytest.approx(0.225)
    assert k == pytest.approx(1.3375)


def test_victim_utility(example1):
    x, r = 2.0, 1.0
    assert victim_utility(example1, G1, x, A1, VictimAction.D, r) == -2.0
    assert victim_utility(example1, G1, x, A1, VictimAction.P, r) == -1.0
    assert victim_utility(example1, G1, x, A2, VictimAction.P, r) == -3.0
    assert victim_utility(example1, G1, x, A1, VictimAction.C, r) == \
        pytest.approx(-1.3375)
    assert victim_utility(example1, G1, x, A2, VictimAction.C, r) == \
        pytest.approx(-1.3375 - 2.0 * 0.225)


def test_victim_utility_is_never_positive(example2):
    x = np.linspace(0, 20, 41)
    for variant in (G1, G2):
        for t in HackerType:
            for action in variant.actions:
                for r in (0.0, 0.7, 5.0):
                    u = victim_utility(example2, variant, x, t, action, r)
                    assert np.all(u <= 0)


def test_hacker_utility(example1):
    r = 1.0
    assert hacker_utility(example1, G1, 0, A1, VictimAction.D, r) == \
        pytest.approx(-0.2)
    assert hacker_utility(example1, G1, 0, A2, VictimAction.D, r) == \
        pytest.approx(0.8)
    assert hacker_utility(example1, G1, 0, A2, VictimAction.P, r) == \
        pytest.approx(2.3)
    # A1: r * q - c4
    assert hacker_utility(example1, G1, 0, A1, VictimAction.C, r) == \
        pytest.approx(0.225 - 0.2)
    # A2: r * q + b1 * p1 + b2 * (1 - p1) - c4
    assert hacker_utility(example1, G1, 0, A2, VictimAction.C, r) == \
        pytest.approx(0.225 + 0.1 + 1.35 - 0.2)


def test_hacker_utility_ignores_valuation(example2):
    values = hacker_utility(example2, G2, np.array([0.0, 3.0, 9.0]), A2,
                            VictimAction.R, 0.5)
    assert values.shape == (3,)
    assert np.all(values == values[0])


def test_reduction_to_no_backup(example1):
    params = example1.with_backup(0.0, 0.0)
    x = np.linspace(0, 10, 11)
    for t in HackerType:
        for a1, a2 in zip(G1.actions, G2.actions):
            for r in (0.0, 0.5, 2.0):
                assert np.allclose(
                    victim_utility(params, G1, x, t, a1, r),
                    victim_utility(params, G2, x, t, a2, r), atol=1e-12)
                assert hacker_utility(params, G1, 0, t, a1, r) == \
                    pytest.approx(hacker_utility(params, G2, 0, t, a2, r),
                                  abs=1e-12)


def test_victim_expected_payoff_averages_types(example2):
    x, r = np.array([0.5, 4.0]), 1.2
    for variant in (G1, G2):
        for action in variant.actions:
            expected = (example2.p * victim_utility(example2, variant, x, A1,
                                                    action, r) +
                        (1 - example2.p) * victim_utility(
                            example2, variant, x, A2, action, r))
            assert np.allclose(victim_expected_payoff(
                example2, variant, x, action, r), expected)
