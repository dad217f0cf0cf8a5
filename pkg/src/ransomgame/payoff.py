"""
Expected payoffs of the hacker against the victim's best response.

:func:`eta` is the expected revenue of a hacker type at ransom *r*, before
the attack cost ``c4``. It is evaluated in closed form from survival
values of the valuation distribution; :func:`quadrature_eta` integrates
the utilities numerically and only serves as an independent check.

"""
import logging
from dataclasses import dataclass

import numpy as np

from ransomgame.core import (
    GameVariant, HackerType, crack_terms, hacker_utility)
from ransomgame.response import region_boundary, respond, thresholds
from ransomgame.util import parallel_map, ransom_to_u, split, u_to_ransom

logger = logging.getLogger(__name__)


def _release_probability(params, variant):
    """Probability that the files come back without any payment once the
    fallback action is taken: recovery succeeds, or it fails and the crack
    succeeds."""
    p3, _ = params.recovery(variant)
    return p3 + (1.0 - p3) * params.p1


def _survivals(params, variant, r):
    part = region_boundary(params, variant)
    small = np.asarray(part.is_small(r))
    psi_small, psi_large = thresholds(params, variant, r)
    valuation = params.valuation
    sf_pay = np.asarray(valuation.survival(r / params.p))
    sf_small = np.asarray(valuation.survival(psi_small))
    sf_large = np.asarray(valuation.survival(psi_large))
    return small, sf_pay, sf_small, sf_large


def eta(params, variant, hacker_type, r):
    """Return the expected revenue ``eta(r)`` of *hacker_type* (``c4`` not
    subtracted). *r* may be an array."""
    r = np.asarray(r, dtype=float)
    small, sf_pay, sf_small, sf_large = _survivals(params, variant, r)
    q, _ = crack_terms(params, variant, r)
    reaches_fallback = np.where(small, sf_small, sf_large)
    paid_up_front = np.where(small, sf_pay - sf_small, 0.0)
    if hacker_type is HackerType.A1:
        value = r * q * reaches_fallback + r * paid_up_front
    else:
        released = _release_probability(params, variant)
        fallback = params.b1 * released + params.b2 * (1.0 - released) + \
            r * q
        discarded = 1.0 - np.where(small, sf_pay, sf_large)
        value = (fallback * reaches_fallback +
                 (params.b2 + r) * paid_up_front +
                 params.b1 * discarded)
    if value.ndim == 0:
        return float(value)
    return value


def type_gap_d(params, variant, r):
    """Return ``d(r) = eta(A2, r) - eta(A1, r)``.

    In the small-ransom region ``d = b2 + (b1 - b2)[s Fbar(psi_small) +
    F(r/p)]``, in the large-ransom region ``d = b1 + (b2 - b1)(1 - s)
    Fbar(psi_large)``, with ``s`` the probability that the fallback action
    releases the files.

    """
    r = np.asarray(r, dtype=float)
    small, sf_pay, sf_small, sf_large = _survivals(params, variant, r)
    s = _release_probability(params, variant)
    b1, b2 = params.b1, params.b2
    value = np.where(small,
                     b2 + (b1 - b2) * (s * sf_small + (1.0 - sf_pay)),
                     b1 + (b2 - b1) * (1.0 - s) * sf_large)
    if value.ndim == 0:
        return float(value)
    return value


def quadrature_eta(params, variant, hacker_type, r, n=100000):
    """Integrate the hacker's utility under the victim's best response over
    the valuation distribution on an *n* point mid-quantile grid and add
    ``c4`` back."""
    if n < 1:
        raise ValueError('n(=%s) must be >= 1.' % n)
    x = params.valuation.quantile((np.arange(n) + 0.5) / n)
    codes = respond(params, variant, x, r)
    table = np.array([hacker_utility(params, variant, 0.0, hacker_type,
                                     action, r)
                      for action in variant.actions])
    return float(table[codes].mean()) + params.c4


@dataclass(frozen=True)
class GridSpec(object):
    """Uniform grid over the ransom (*axis* ``'r'``) or over the plotting
    coordinate ``u = 1 / (1 + r)`` (*axis* ``'u'``)."""

    axis: str = 'u'
    start: float = 1.0
    stop: float = 0.01
    num: int = 200

    def __post_init__(self):
        if self.axis not in ('r', 'u'):
            raise ValueError('axis(=%r) must be "r" or "u".' % (self.axis,))
        if self.num < 1:
            raise ValueError('empty grid (num=%r).' % (self.num,))
        if self.axis == 'u':
            for bound in (self.start, self.stop):
                if not 0 < bound <= 1:
                    raise ValueError('u grid bounds must lie in (0, 1], got '
                                     '%r.' % (bound,))
        elif min(self.start, self.stop) < 0:
            raise ValueError('r grid bounds must be >= 0.')

    def ransoms(self):
        """Return the grid as strictly increasing ransoms."""
        values = np.linspace(self.start, self.stop, self.num)
        if self.axis == 'u':
            values = u_to_ransom(values)
        return np.unique(values)

    def to_dict(self):
        return {'axis': self.axis, 'start': self.start, 'stop': self.stop,
                'num': self.num}


@dataclass(frozen=True)
class CurvePoint(object):
    r: float
    u: float
    value: float
    launched: bool


@dataclass(frozen=True)
class PayoffCurve(object):
    """Curve of ``eta(r) - c4`` over a ransom grid.

    A point is *launched* when its value is strictly positive.

    """
    variant: GameVariant
    hacker_type: HackerType
    points: tuple
    omega: float

    columns = ('variant', 'hacker_type', 'r', 'u', 'eta_minus_c4',
               'launched')

    def rows(self):
        for point in self.points:
            yield (self.variant.value, self.hacker_type.value, point.r,
                   point.u, point.value, point.launched)

    @property
    def values(self):
        return np.array([point.value for point in self.points])


def payoff_curve(params, variant, hacker_type, grid, workers=1):
    """Evaluate ``eta - c4`` of *hacker_type* on *grid* (a
    :class:`GridSpec` or a sequence of ransoms).

    Raise :exc:`ValueError` for an empty grid.

    """
    if isinstance(grid, GridSpec):
        r = grid.ransoms()
    else:
        r = np.unique(np.asarray(grid, dtype=float))
    if r.size == 0:
        raise ValueError('empty grid.')

    def chunk(values):
        return eta(params, variant, hacker_type, values) - params.c4

    values = np.concatenate([np.atleast_1d(v) for v in parallel_map(
        chunk, split(r, workers), workers)])
    u = ransom_to_u(r)
    points = tuple(CurvePoint(float(ri), float(ui), float(vi), bool(vi > 0))
                   for ri, ui, vi in zip(r, u, values))
    omega = region_boundary(params, variant).omega
    logger.debug('%s %s: %d curve points', variant.value, hacker_type.value,
                 len(points))
    return PayoffCurve(variant, hacker_type, points, omega)
