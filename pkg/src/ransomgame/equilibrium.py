"""
Bayesian Nash equilibria of the ransomware game.

Given a ransom, the victim's best response is fixed by
:mod:`ransomgame.response`, so an equilibrium is found by maximizing the
hacker's expected revenue :func:`~ransomgame.payoff.eta` over the ransom.
The hacker attacks only if the maximum strictly exceeds the attack cost
``c4``; the equilibrium ransom is the smallest maximizer.

"""
import logging
from dataclasses import dataclass, fields, replace

import numpy as np

from ransomgame.core import GameVariant, HackerType
from ransomgame.exceptions import (
    FiniteConditionViolated, InvalidParameters, RandomizationError)
from ransomgame.payoff import eta
from ransomgame.response import Region, region_boundary
from ransomgame.search import maximize
from ransomgame.stochastics import check_con1

logger = logging.getLogger(__name__)

#: Allowed deviation of randomization weights from a total of 1.
WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class SearchConfig(object):
    """Knobs of the equilibrium search.

    *grid_points* is the size of the grid in ``u = 1 / (1 + r)``,
    *refine_tol* the relative bracket width of the golden-section
    refinement, *argmax_rtol* the relative tolerance for ties among
    maximizers, *gate_tol* the margin by which revenue must exceed ``c4``
    and *max_candidates* the number of grid maxima refined.

    """
    grid_points: int = 4096
    refine_tol: float = 1e-8
    argmax_rtol: float = 1e-9
    gate_tol: float = 1e-12
    max_candidates: int = 32

    def __post_init__(self):
        if not isinstance(self.grid_points, int) or self.grid_points < 2:
            raise InvalidParameters('grid_points(=%r) must be an integer >= '
                                    '2.' % (self.grid_points,))
        if not isinstance(self.max_candidates, int) or \
                self.max_candidates < 1:
            raise InvalidParameters('max_candidates(=%r) must be an integer '
                                    '>= 1.' % (self.max_candidates,))
        for name in ('refine_tol', 'argmax_rtol', 'gate_tol'):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or value < 0:
                raise InvalidParameters('%s(=%r) must be >= 0.'
                                        % (name, value))

    def to_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


@dataclass(frozen=True)
class EquilibriumResult(object):
    """Equilibrium strategy of one hacker type.

    *ransom* is 0 if the hacker does not attack. *payoff* is
    ``max eta - c4`` if launched and 0 otherwise; *max_eta* is the
    ungated maximum. *randomized* is ``None`` for a pure equilibrium or a
    tuple of ``(ransom, weight)`` pairs over *argmax_set*.

    """
    variant: GameVariant
    hacker_type: HackerType
    ransom: float
    launched: bool
    payoff: float
    argmax_set: tuple
    max_eta: float
    randomized: object = None
    at_horizon: bool = False

    @property
    def smallest_maximizer(self):
        return self.argmax_set[0]

    def to_dict(self):
        data = {
            'variant': self.variant.value,
            'hacker_type': self.hacker_type.value,
            'ransom': self.ransom,
            'launched': self.launched,
            'payoff': self.payoff,
            'argmax_set': list(self.argmax_set),
            'max_eta': self.max_eta,
            'randomized': None,
            'at_horizon': self.at_horizon,
        }
        if self.randomized is not None:
            data['randomized'] = [{'ransom': r, 'weight': w}
                                  for r, w in self.randomized]
        return data

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data['variant'] = GameVariant(data['variant'])
        data['hacker_type'] = HackerType(data['hacker_type'])
        data['argmax_set'] = tuple(data['argmax_set'])
        if data.get('randomized') is not None:
            data['randomized'] = tuple((item['ransom'], item['weight'])
                                       for item in data['randomized'])
        return cls(**data)


def maximize_eta(params, variant, hacker_type, search):
    """Return the :class:`~ransomgame.search.Maximum` of ``eta`` over the
    ransom, without the launch gate."""
    params.recovery(variant)

    def objective(r):
        return eta(params, variant, hacker_type, r)

    return maximize(objective, search.grid_points, search.refine_tol,
                    search.argmax_rtol, search.max_candidates,
                    vectorized=objective)


def find_equilibrium(params, variant, hacker_type, search=None):
    """Return the pure :class:`EquilibriumResult` of *hacker_type*.

    Raise :exc:`FiniteConditionViolated` if ``r * p2(r)`` is unbounded.

    """
    search = search or SearchConfig()
    con1 = check_con1(params.willingness)
    if not con1.bounded:
        raise FiniteConditionViolated(
            'r * p2(r) is unbounded for %r; no equilibrium ransom exists.'
            % (params.willingness,))
    best = maximize_eta(params, variant, hacker_type, search)
    launched = best.value > params.c4 + search.gate_tol
    if launched:
        ransom, payoff = best.smallest, best.value - params.c4
    else:
        ransom, payoff = 0.0, 0.0
    logger.info('%s %s: r*=%r launched=%s payoff=%r (%d maximizers)',
                variant.value, hacker_type.value, ransom, launched, payoff,
                len(best.argmax))
    return EquilibriumResult(variant, hacker_type, ransom, launched, payoff,
                             best.argmax, best.value,
                             at_horizon=best.at_horizon)


def randomized_equilibrium(params, variant, hacker_type, weights,
                           search=None):
    """Attach a randomization with *weights* over the argmax set.

    The returned payoff is the weighted payoff of the support points,
    which equals the pure payoff within the argmax tolerance.

    Raise :exc:`RandomizationError` if the argmax set is a singleton, if the
    hacker does not attack, or if *weights* are not a distribution over the
    argmax set.

    """
    pure = find_equilibrium(params, variant, hacker_type, search)
    support = pure.argmax_set
    if len(support) < 2:
        raise RandomizationError('argmax set %r is a singleton; the pure '
                                 'equilibrium applies.' % (support,))
    if not pure.launched:
        raise RandomizationError('the hacker does not attack.')
    weights = [float(w) for w in weights]
    if len(weights) != len(support):
        raise RandomizationError('%d weights for %d maximizers.'
                                 % (len(weights), len(support)))
    if any(w < 0 for w in weights):
        raise RandomizationError('weights %r must be >= 0.' % (weights,))
    if abs(sum(weights) - 1.0) > WEIGHT_TOL:
        raise RandomizationError('weights sum to %r, not 1.'
                                 % (sum(weights),))
    values = np.atleast_1d(eta(params, variant, hacker_type,
                               np.array(support))) - params.c4
    payoff = float(np.dot(weights, values))
    return replace(pure, payoff=payoff,
                   randomized=tuple(zip(support, weights)))


@dataclass(frozen=True)
class OrderingReport(object):
    """Comparison of the two types' equilibrium ransoms.

    If the A2 ransom lies in the small-ransom region the A1 ransom must be
    at least as large; in the large-ransom region at most as large, which
    is only claimed when ``r * p2(r)`` is non-increasing there. *holds* is
    ``None`` when the claim does not apply.

    """
    variant: GameVariant
    ransom_a1: float
    ransom_a2: float
    region_a2: Region
    omega: float
    applicable: bool
    holds: object
    reason: str = ''

    @property
    def violations(self):
        return int(self.holds is False)

    def to_dict(self):
        return {
            'variant': self.variant.value,
            'ransom_a1': self.ransom_a1,
            'ransom_a2': self.ransom_a2,
            'region_a2': self.region_a2.label(self.variant),
            'omega': self.omega,
            'applicable': self.applicable,
            'holds': self.holds,
            'reason': self.reason,
        }


def revenue_nonincreasing(params, omega, points=2000):
    """Tell whether ``r * p2(r)`` is non-increasing on ``[omega, inf)``,
    checked on a grid."""
    r = np.unique(np.concatenate([
        np.linspace(omega, omega + 10.0 * (1.0 + omega), points),
        omega + 1.0 / np.linspace(1.0, 1e-4, points) - 1.0,
    ]))
    revenue = r * np.asarray(params.willingness(r))
    return bool(np.all(np.diff(revenue) <= 1e-12))


def check_ordering(params, variant, search=None):
    """Check the ordering of the two types' equilibrium ransoms.

    Smallest maximizers are compared regardless of the launch gate.

    """
    search = search or SearchConfig()
    r_a1 = maximize_eta(params, variant, HackerType.A1, search).smallest
    r_a2 = maximize_eta(params, variant, HackerType.A2, search).smallest
    part = region_boundary(params, variant)
    region = part.region(r_a2)
    slack = 10 * search.refine_tol * (1.0 + max(r_a1, r_a2))
    if region is Region.SMALL:
        return OrderingReport(variant, r_a1, r_a2, region, part.omega, True,
                              r_a1 >= r_a2 - slack)
    if not revenue_nonincreasing(params, part.omega):
        logger.info('%s: r * p2(r) increases past omega=%r; ordering claim '
                    'does not apply', variant.value, part.omega)
        return OrderingReport(variant, r_a1, r_a2, region, part.omega, False,
                              None, 'r * p2(r) is not non-increasing on the '
                              'large-ransom region')
    return OrderingReport(variant, r_a1, r_a2, region, part.omega, True,
                          r_a1 <= r_a2 + slack)
