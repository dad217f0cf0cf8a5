"""
Tests for the victim's thresholds, the region split and the best
response.

"""
import math

import numpy as np
import pytest

from ransomgame.core import (
    GameParams, GameVariant, VictimAction, victim_expected_payoff)
from ransomgame.exceptions import (
    DegenerateParameters, InadmissibleAction, InvalidParameters)
from ransomgame.response import (
    Region, band_ordering, best_response, capital_psi, psi,
    region_boundary, respond, strategy_region, thresholds)
from ransomgame.stochastics import ExpDecay, LinearCutoff

G1, G2 = GameVariant.GAMMA1, GameVariant.GAMMA2


def test_reference_thresholds(example1):
    assert psi(example1, G1, 1, 1.0) == pytest.approx(4.35484, abs=1e-5)
    assert psi(example1, G1, 2, 1.0) == pytest.approx(1.3375 / 0.9775)
    assert capital_psi(example1, G1, 1.0) == pytest.approx(0.22625)


def test_psi_index_must_match_variant(example2):
    pytest.raises(InadmissibleAction, psi, example2, G1, 3, 1.0)
    pytest.raises(InadmissibleAction, psi, example2, G2, 1, 1.0)
    pytest.raises(InadmissibleAction, psi, example2, G1, 5, 1.0)


def test_backup_thresholds_need_backup(example1):
    pytest.raises(InvalidParameters, psi, example1, G2, 3, 1.0)


def test_reference_omega(example1):
    part = region_boundary(example1, G1)
    assert part.omega == pytest.approx(1.2062389, abs=1e-6)
    assert part.residual <= 1e-9
    assert part.unique
    assert part.region(1.0) is Region.SMALL
    assert part.region(2.0) is Region.LARGE
    assert Region.SMALL.label(G1) == 'M1'
    assert Region.LARGE.label(G2) == 'M4'


def test_backup_omega(example2):
    part = region_boundary(example2, G2)
    assert abs(capital_psi(example2, G2, part.omega)) <= 1e-9
    assert part.omega == pytest.approx(1.0358519, abs=1e-6)


def test_zero_ransom_is_small(example1, example2):
    assert capital_psi(example1, G1, 0.0) >= 0
    assert region_boundary(example1, G1).region(0.0) is Region.SMALL
    assert region_boundary(example2, G2).region(0.0) is Region.SMALL


def test_omega_is_zero_when_psi_starts_negative():
    params = GameParams(c1=0.0, c2=0.0)
    assert capital_psi(params, G1, 0.0) == 0.0
    assert region_boundary(params, G1).omega == 0.0


def test_sign_structure(example1, example2):
    """The sign of Psi decides the order of the thresholds."""
    r = np.linspace(0, 10, 1001)
    for params, variant in ((example1, G1), (example2, G2)):
        value = capital_psi(params, variant, r)
        small, large = thresholds(params, variant, r)
        pay = r / params.p
        keep = np.abs(value) > 1e-9
        sign = np.sign(value[keep])
        assert np.all(np.sign((small - pay)[keep]) == sign)
        assert np.all(np.sign((large - pay)[keep]) == sign)
        assert np.all(np.sign((small - large)[keep]) == sign)


def test_infinite_pay_band():
    params = GameParams(p=1.0)
    small, large = thresholds(params, G1, 0.5)
    assert small == math.inf
    assert math.isfinite(large)


def test_zero_over_zero_is_degenerate():
    # No costs and p = 1: psi_small is 0/0 at r = 0.
    params = GameParams(p=1.0, p1=0.0, c1=0.0, c2=0.0)
    pytest.raises(DegenerateParameters, thresholds, params, G1, 0.0)


def test_best_response_matches_exhaustive_argmax(example1, example2):
    """Thresholds give the maximizer of the expected victim payoff."""
    x = np.linspace(0, 15, 301)
    for params, variant in ((example1, G1), (example2, G2)):
        for r in (0.1, 0.6, 1.0, 1.5, 3.0, 8.0):
            codes = respond(params, variant, x, r)
            payoffs = np.array([victim_expected_payoff(params, variant, x, a,
                                                       r)
                                for a in variant.actions])
            chosen = payoffs[codes, np.arange(len(x))]
            assert np.all(chosen >= payoffs.max(axis=0) - 1e-12)


def test_best_response_examples(example1):
    assert best_response(example1, G1, 0.0, 1.0) is VictimAction.D
    assert best_response(example1, G1, 2.0, 1.0) is VictimAction.P
    assert best_response(example1, G1, 10.0, 1.0) is VictimAction.C
    assert best_response(example1, G1, 10.0, 5.0) is VictimAction.C
    assert best_response(example1, G1, 0.5, 5.0) is VictimAction.D


def test_tie_breaks(example1):
    r = 1.0
    assert best_response(example1, G1, r / example1.p, r) is VictimAction.D
    upper = psi(example1, G1, 1, r)
    assert best_response(example1, G1, upper, r) is VictimAction.P
    assert best_response(example1, G1, np.nextafter(upper, 10), r) is \
        VictimAction.C


def test_backup_game_recovers(example2):
    assert best_response(example2, G2, 20.0, 1.0) is VictimAction.R


def test_strategy_region(example1):
    small = strategy_region(example1, G1, 1.0)
    assert small.region is Region.SMALL
    assert small.lower_D == pytest.approx(1 / 0.9)
    assert small.upper_P == pytest.approx(4.35484, abs=1e-5)
    large = strategy_region(example1, G1, 3.0)
    assert large.region is Region.LARGE
    assert large.upper_P is None
    assert large.pay_band == 0.0


def test_band_ordering(example1):
    report = band_ordering(example1, G1, 1.0, 0.8)
    assert report.a1.lower_D > report.a2.lower_D
    assert report.holds


def test_region_boundary_is_cached(example1):
    assert region_boundary(example1, G1) is region_boundary(GameParams(),
                                                            G1)


@pytest.mark.parametrize('willingness', [ExpDecay(0.5),
                                         LinearCutoff(0.8, 3.0)])
def test_other_families(willingness):
    params = GameParams(willingness=willingness)
    part = region_boundary(params, G1)
    assert abs(capital_psi(params, G1, part.omega)) <= 1e-9
    assert capital_psi(params, G1, part.omega + 0.1) < 0
    assert np.all(respond(params, G1, np.array([0.0]), 1.0) == 0)
