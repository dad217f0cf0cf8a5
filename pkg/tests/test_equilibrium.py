"""
Tests for pure and randomized equilibria and the ordering of the
equilibrium ransoms.

"""
import numpy as np
import pytest

from ransomgame import equilibrium
from ransomgame.core import GameParams, GameVariant, HackerType
from ransomgame.equilibrium import (
    EquilibriumResult, SearchConfig, check_ordering, find_equilibrium,
    maximize_eta, randomized_equilibrium, revenue_nonincreasing)
from ransomgame.exceptions import (
    FiniteConditionViolated, InvalidParameters, RandomizationError)
from ransomgame.payoff import eta
from ransomgame.response import Region, region_boundary
from ransomgame.stochastics import Exponential, LinearCutoff, PowerDecay

G1, G2 = GameVariant.GAMMA1, GameVariant.GAMMA2
A1, A2 = HackerType.A1, HackerType.A2


def two_peaks(params, variant, hacker_type, r):
    """Revenue with two equal maxima at r = 1 and r = 3."""
    return 2 - (r - 1) ** 2 * (r - 3) ** 2 / (1 + r ** 4)


def test_reference_equilibrium(example1):
    a1 = find_equilibrium(example1, G1, A1)
    a2 = find_equilibrium(example1, G1, A2)
    assert a1.launched and a2.launched
    assert a2.ransom < a1.ransom
    assert region_boundary(example1, G1).region(a2.ransom) is Region.SMALL
    assert a1.payoff == pytest.approx(eta(example1, G1, A1, a1.ransom) -
                                      example1.c4)
    assert a1.payoff == pytest.approx(a1.max_eta - example1.c4)
    assert len(a1.argmax_set) == 1
    assert not a1.at_horizon


@pytest.mark.parametrize('variant, hacker_type, ransom, max_eta', [
    (G1, A1, 0.8622695, 0.3299529),
    (G1, A2, 0.3999999, 1.5770623),
    (G2, A1, 0.7581425, 0.3224624),
    (G2, A2, 0.3998535, 1.5770583),
])
def test_reference_values(example2, variant, hacker_type, ransom, max_eta):
    result = find_equilibrium(example2, variant, hacker_type)
    assert result.ransom == pytest.approx(ransom, abs=1e-6)
    assert result.max_eta == pytest.approx(max_eta, abs=1e-6)
    assert result.payoff == pytest.approx(max_eta - 0.2, abs=1e-6)
    assert region_boundary(example2, variant).region(result.ransom) is \
        Region.SMALL


def test_equilibrium_is_a_maximum(example1):
    result = find_equilibrium(example1, G1, A1)
    for delta in (-1e-3, 1e-3, -0.1, 0.1):
        assert eta(example1, G1, A1, result.ransom + delta) <= \
            result.max_eta + 1e-12


def test_backup_equilibrium(example2):
    a1 = find_equilibrium(example2, G2, A1)
    a2 = find_equilibrium(example2, G2, A2)
    assert a1.launched and a2.launched
    assert a2.ransom < a1.ransom


def test_huge_attack_cost():
    params = GameParams(c4=100.0)
    for t in HackerType:
        result = find_equilibrium(params, G1, t)
        assert not result.launched
        assert result.ransom == 0.0
        assert result.payoff == 0.0
        assert result.max_eta < 100.0


def test_attack_cost_at_the_gate(example1):
    best = maximize_eta(example1, G1, A1, SearchConfig())
    params = GameParams(c4=best.value)
    assert not find_equilibrium(params, G1, A1).launched


def test_unbounded_revenue():
    params = GameParams(willingness=PowerDecay(0.5))
    with pytest.raises(FiniteConditionViolated) as exc:
        find_equilibrium(params, G1, A1)
    assert exc.value.exit_code == 3


def test_backup_game_needs_recovery_parameters(example1):
    pytest.raises(InvalidParameters, find_equilibrium, example1, G2, A1)


def test_reduction_to_no_backup(example1):
    params = example1.with_backup(0.0, 0.0)
    for t in HackerType:
        one = find_equilibrium(params, G1, t)
        two = find_equilibrium(params, G2, t)
        assert two.ransom == pytest.approx(one.ransom, abs=1e-12)
        assert two.payoff == pytest.approx(one.payoff, abs=1e-12)


def test_result_round_trip(example1):
    result = find_equilibrium(example1, G1, A2)
    assert EquilibriumResult.from_dict(result.to_dict()) == result


def test_randomized_equilibrium(monkeypatch, example1):
    monkeypatch.setattr(equilibrium, 'eta', two_peaks)
    result = randomized_equilibrium(example1, G1, A1, (0.3, 0.7))
    assert result.argmax_set == pytest.approx((1.0, 3.0), abs=1e-6)
    assert result.ransom == pytest.approx(1.0, abs=1e-6)
    assert result.payoff == pytest.approx(2.0 - example1.c4)
    assert [w for _, w in result.randomized] == [0.3, 0.7]
    assert EquilibriumResult.from_dict(result.to_dict()) == result


def flat_top():
    """Cutoff willingness tuned so that the A1 revenue peaks once below and
    once above omega at the same height."""
    return GameParams(valuation=Exponential(0.093847186411937122),
                      willingness=LinearCutoff(1.0, 13.0))


def test_flat_top_has_two_maximizers():
    params = flat_top()
    pure = find_equilibrium(params, G1, A1)
    assert pure.argmax_set == pytest.approx((2.9045593, 6.6876080), abs=1e-6)
    assert pure.ransom == pure.argmax_set[0]
    assert pure.max_eta == pytest.approx(1.9465796, abs=1e-6)
    peaks = eta(params, G1, A1, np.array(pure.argmax_set))
    assert peaks[0] == pytest.approx(peaks[1], rel=1e-9)
    part = region_boundary(params, G1)
    assert part.region(pure.argmax_set[0]) is Region.SMALL
    assert part.region(pure.argmax_set[1]) is Region.LARGE


def test_randomized_equilibrium_on_a_flat_top():
    params = flat_top()
    pure = find_equilibrium(params, G1, A1)
    mixed = randomized_equilibrium(params, G1, A1, (0.5, 0.5))
    assert mixed.payoff == pytest.approx(pure.payoff, rel=1e-9)
    assert [w for _, w in mixed.randomized] == [0.5, 0.5]
    assert mixed.ransom == pure.ransom
    point = randomized_equilibrium(params, G1, A1, (1.0, 0.0))
    assert point.payoff == pytest.approx(pure.payoff, rel=1e-9)
    assert point.argmax_set == pure.argmax_set


@pytest.mark.parametrize('weights', [(0.5,), (0.5, 0.6), (-0.5, 1.5),
                                     (0.5, 0.5 + 1e-9)])
def test_invalid_weights(monkeypatch, example1, weights):
    monkeypatch.setattr(equilibrium, 'eta', two_peaks)
    pytest.raises(RandomizationError, randomized_equilibrium, example1, G1,
                  A1, weights)


def test_singleton_argmax_cannot_be_randomized(example1):
    with pytest.raises(RandomizationError) as exc:
        randomized_equilibrium(example1, G1, A1, (1.0,))
    assert 'singleton' in str(exc.value)


def test_search_config_validation():
    pytest.raises(InvalidParameters, SearchConfig, grid_points=1)
    pytest.raises(InvalidParameters, SearchConfig, refine_tol=-1.0)
    pytest.raises(InvalidParameters, SearchConfig, max_candidates=0)
    config = SearchConfig(grid_points=512)
    assert SearchConfig.from_dict(config.to_dict()) == config


def test_coarser_search_agrees(example1):
    fine = find_equilibrium(example1, G1, A1)
    coarse = find_equilibrium(example1, G1, A1, SearchConfig(grid_points=512))
    assert coarse.ransom == pytest.approx(fine.ransom, abs=1e-6)


def test_ordering(example1, example2):
    for params, variant in ((example1, G1), (example2, G2)):
        report = check_ordering(params, variant)
        assert report.applicable
        assert report.holds
        assert report.violations == 0
    report = check_ordering(example1, G1)
    assert report.region_a2 is Region.SMALL
    assert report.ransom_a1 >= report.ransom_a2
    assert report.to_dict()['region_a2'] == 'M1'


def test_revenue_nonincreasing():
    assert revenue_nonincreasing(GameParams(), 1.0)
    assert not revenue_nonincreasing(GameParams(), 0.0)
    assert not revenue_nonincreasing(
        GameParams(willingness=PowerDecay(1.0)), 1.0)
