"""
Comparative statics of the hacker's expected payoff and the comparison of
the games with and without backup.

"""
import logging
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from ransomgame.core import GameVariant, HackerType
from ransomgame.equilibrium import (
    SearchConfig, maximize_eta, revenue_nonincreasing)
from ransomgame.exceptions import InvalidParameters
from ransomgame.payoff import eta, type_gap_d
from ransomgame.response import Region, region_boundary
from ransomgame.util import parallel_map

logger = logging.getLogger(__name__)

#: Slack allowed before a monotonicity step counts as a violation.
MONOTONE_SLACK = 1e-9
#: Slack of the dominance check between the two games.
DOMINANCE_SLACK = 1e-12

EQUILIBRIUM = 'equilibrium'


class Direction(Enum):
    INCREASING = 'increasing'
    DECREASING = 'decreasing'


_COSTS = ('c1', 'c2', 'c3')
_FAILURES = ('p1', 'p3')
_SCALARS = ('p', 'p1', 'p3', 'c1', 'c2', 'c3', 'c4', 'b1', 'b2')


def has_parameter(params, path):
    """Tell whether *params* has a numeric parameter at the (possibly
    dotted) *path*, e.g. ``'c1'`` or ``'willingness.exponent'``."""
    head, _, tail = path.partition('.')
    if head == 'willingness':
        return tail in params.willingness.sensitivity
    return not tail and head in _SCALARS and \
        getattr(params, head) is not None


def with_parameter(params, path, value):
    """Return a copy of *params* with the (possibly dotted) *path* set to
    *value*, e.g. ``'c1'`` or ``'willingness.exponent'``."""
    head, _, tail = path.partition('.')
    if not hasattr(params, head):
        raise InvalidParameters('unknown parameter %r.' % (path,))
    if not tail:
        return replace(params, **{head: value})
    inner = getattr(params, head)
    if inner is None or not hasattr(inner, tail):
        raise InvalidParameters('unknown parameter %r.' % (path,))
    return replace(params, **{head: replace(inner, **{tail: value})})


def expected_direction(params, parameter, region):
    """Direction in which the payoff is expected to move with *parameter*
    when the ransom lies in *region*, or ``None`` for parameters no claim
    is made for."""
    small = region is Region.SMALL
    if parameter == 'c4':
        return Direction.DECREASING
    if parameter == 'p':
        return Direction.INCREASING
    if parameter in _COSTS:
        return Direction.INCREASING if small else Direction.DECREASING
    if parameter in _FAILURES:
        return Direction.DECREASING if small else Direction.INCREASING
    head, _, field = parameter.partition('.')
    if head == 'willingness':
        sign = params.willingness.sensitivity.get(field)
        if sign is None:
            return None
        raises_p2 = sign > 0
        return Direction.INCREASING if raises_p2 == small else \
            Direction.DECREASING
    return None


def _region_free(parameter):
    return parameter in ('c4', 'p')


@dataclass(frozen=True)
class ComparativeReport(object):
    """Result of :func:`comparative_statics`.

    *grid_evidence* lists ``(value, payoff)`` pairs of the points that were
    compared; *excluded* lists grid values dropped because the ransom left
    the region the claim is made for.

    """
    parameter: str
    hacker_type: HackerType
    variant: GameVariant
    at: object
    direction: Direction
    region: object
    grid_evidence: tuple
    violations: int
    excluded: tuple = ()

    def to_dict(self):
        region = self.region
        if isinstance(region, Region):
            region = region.label(self.variant)
        return {
            'parameter': self.parameter,
            'hacker_type': self.hacker_type.value,
            'variant': self.variant.value,
            'at': self.at,
            'direction': self.direction.value,
            'region': region,
            'grid_evidence': [list(item) for item in self.grid_evidence],
            'violations': self.violations,
            'excluded': list(self.excluded),
        }


def _evaluate(params, variant, hacker_type, at, search):
    """Payoff and region at one parameter point."""
    if at == EQUILIBRIUM:
        best = maximize_eta(params, variant, hacker_type, search)
        r = best.smallest
        payoff = best.value - params.c4
    else:
        r = float(at)
        payoff = eta(params, variant, hacker_type, r) - params.c4
    return payoff, region_boundary(params, variant).region(r)


def comparative_statics(params, variant, parameter, grid, hacker_type,
                        at=EQUILIBRIUM, search=None, workers=1):
    """Sweep *parameter* over the sorted *grid* and count monotonicity
    violations.

    *at* is either ``'equilibrium'`` (payoff ``max eta - c4``, re-solved per
    grid point) or a fixed ransom. For region-dependent claims the region is
    the one of the ransom under *params*; grid points whose ransom falls in
    the other region are excluded and logged.

    Raise :exc:`ValueError` for an unsorted grid or a parameter no claim is
    made for.

    """
    grid = [float(value) for value in grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError('grid %r must be strictly increasing.' % (grid,))
    search = search or SearchConfig()
    _, base_region = _evaluate(params, variant, hacker_type, at, search)
    direction = expected_direction(params, parameter, base_region)
    if direction is None:
        raise ValueError('no monotonicity claim for parameter %r.'
                         % (parameter,))

    def point(value):
        return _evaluate(with_parameter(params, parameter, value), variant,
                         hacker_type, at, search)

    results = parallel_map(point, grid, workers)
    evidence, excluded = [], []
    for value, (payoff, region) in zip(grid, results):
        if not _region_free(parameter) and region is not base_region:
            excluded.append(value)
            continue
        evidence.append((value, float(payoff)))
    if excluded:
        logger.warning('%s: %d grid points left region %s and were '
                       'excluded', parameter, len(excluded),
                       base_region.label(variant))

    steps = np.diff([payoff for _, payoff in evidence])
    if direction is Direction.INCREASING:
        violations = int(np.sum(steps < -MONOTONE_SLACK))
    else:
        violations = int(np.sum(steps > MONOTONE_SLACK))
    region = 'all' if _region_free(parameter) else base_region
    return ComparativeReport(parameter, hacker_type, variant, at, direction,
                             region, tuple(evidence), violations,
                             tuple(excluded))


@dataclass(frozen=True)
class ComparisonRow(object):
    """``eta - c4`` of both types in both games at ransom *r*."""

    r: float
    in_small_backup_region: bool
    gamma1_a1: float
    gamma1_a2: float
    gamma2_a1: float
    gamma2_a2: float

    columns = ('r', 'in_m3', 'gamma1_A1', 'gamma1_A2', 'gamma2_A1',
               'gamma2_A2')

    def astuple(self):
        return (self.r, self.in_small_backup_region, self.gamma1_a1,
                self.gamma1_a2, self.gamma2_a1, self.gamma2_a2)


@dataclass(frozen=True)
class GameComparison(object):
    """Result of :func:`compare_games`.

    *maxima* maps ``(variant, hacker_type)`` to ``max eta - c4``.
    *violations* counts rows in the small-ransom region of the backup game
    where the backup game pays a type more, and is only counted when
    *precondition* (``c3 <= p3 * c1``) holds.

    """
    rows: tuple
    precondition: bool
    violations: int
    maxima: dict

    def backup_pays_more(self, hacker_type):
        """Tell whether the backup game yields the larger maximum for
        *hacker_type*."""
        return (self.maxima[GameVariant.GAMMA2, hacker_type] >
                self.maxima[GameVariant.GAMMA1, hacker_type])

    def to_dict(self):
        return {
            'precondition': self.precondition,
            'violations': self.violations,
            'maxima': {'%s/%s' % (v.value, t.value): value
                       for (v, t), value in sorted(
                           self.maxima.items(),
                           key=lambda item: (item[0][0].value,
                                             item[0][1].value))},
            'backup_pays_more': {t.value: self.backup_pays_more(t)
                                 for t in HackerType},
        }


def compare_games(params, r_grid, search=None, workers=1):
    """Compare the games without and with backup on *r_grid*.

    Raise :exc:`InvalidParameters` if *params* lacks ``p3``/``c3``.

    """
    params.recovery(GameVariant.GAMMA2)
    search = search or SearchConfig()
    r = np.unique(np.asarray(r_grid, dtype=float))
    curves = {}
    for variant in GameVariant:
        for hacker_type in HackerType:
            curves[variant, hacker_type] = np.atleast_1d(
                eta(params, variant, hacker_type, r)) - params.c4
    small = np.atleast_1d(
        region_boundary(params, GameVariant.GAMMA2).is_small(r))
    rows = tuple(
        ComparisonRow(float(r[i]), bool(small[i]),
                      *(float(curves[v, t][i]) for v in GameVariant
                        for t in HackerType))
        for i in range(len(r)))

    precondition = params.c3 <= params.p3 * params.c1
    violations = 0
    if precondition:
        for t in HackerType:
            worse = curves[GameVariant.GAMMA2, t] > \
                curves[GameVariant.GAMMA1, t] + DOMINANCE_SLACK
            violations += int(np.sum(worse & small))
    else:
        logger.info('c3(=%r) > p3*c1(=%r): dominance is not claimed',
                    params.c3, params.p3 * params.c1)

    keys = [(v, t) for v in GameVariant for t in HackerType]
    found = parallel_map(
        lambda key: maximize_eta(params, key[0], key[1], search).value,
        keys, workers)
    maxima = {key: value - params.c4 for key, value in zip(keys, found)}
    return GameComparison(rows, precondition, violations, maxima)


@dataclass(frozen=True)
class TypeGapReport(object):
    """Result of :func:`check_type_gap`.

    *identity_error* is the largest deviation of ``d(r)`` from
    ``eta(A2, r) - eta(A1, r)`` and *negative* counts ransoms where A1
    earns more than A2. *shape_violations* counts steps where ``d`` rises
    below ``omega`` or falls above it; it is ``None`` unless
    ``r * p2(r)`` is non-increasing past ``omega`` and ``b1 <= b2``.

    """
    variant: GameVariant
    identity_error: float
    negative: int
    shape_violations: object

    def to_dict(self):
        return {
            'variant': self.variant.value,
            'identity_error': self.identity_error,
            'negative': self.negative,
            'shape_violations': self.shape_violations,
        }


def check_type_gap(params, variant, r_grid):
    """Check ``d(r)`` against both payoff curves on *r_grid*."""
    r = np.unique(np.asarray(r_grid, dtype=float))
    d = np.atleast_1d(type_gap_d(params, variant, r))
    direct = np.atleast_1d(eta(params, variant, HackerType.A2, r)) - \
        np.atleast_1d(eta(params, variant, HackerType.A1, r))
    identity_error = float(np.max(np.abs(d - direct)))
    negative = int(np.sum(d < -DOMINANCE_SLACK))

    part = region_boundary(params, variant)
    shape = None
    if revenue_nonincreasing(params, part.omega):
        small = np.atleast_1d(part.is_small(r))
        steps = np.diff(d)
        rising = steps > MONOTONE_SLACK
        falling = steps < -MONOTONE_SLACK
        both_small = small[1:] & small[:-1]
        both_large = ~small[1:] & ~small[:-1]
        shape = int(np.sum(rising & both_small) + np.sum(falling & both_large))
    else:
        logger.info('%s: r * p2(r) increases past omega=%r; no shape claim '
                    'for d(r)', variant.value, part.omega)
    return TypeGapReport(variant, identity_error, negative, shape)
