"""
The victim's best response to a ransom demand.

For a ransom *r* the victim compares three actions: discard (``D``), pay
(``P``) and the fallback action (crack ``C`` without a backup, recover
``R`` with one). Which comparisons matter depends on the sign of
:func:`capital_psi`; its smallest root ``omega`` (see
:func:`region_boundary`) splits ransoms into a small-ransom region, where
all three actions are used, and a large-ransom region, where the victim
never pays up front.

"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy import optimize

from ransomgame.core import GameVariant, crack_terms
from ransomgame.exceptions import (
    DegenerateParameters, InadmissibleAction, SearchCapExceeded)

logger = logging.getLogger(__name__)

#: Tolerance of the sign-pattern verification of the region root.
SIGN_TOL = 1e-9
#: Absolute and relative slack when classifying a ransom against ``omega``.
REGION_TOL = 1e-12
#: Number of points of the sign-pattern verification grid.
VERIFY_POINTS = 2001


class Region(Enum):
    SMALL = 'small'
    LARGE = 'large'

    def label(self, variant):
        """Return ``M1``/``M2`` (no backup) or ``M3``/``M4`` (backup)."""
        offset = 1 if variant is GameVariant.GAMMA1 else 3
        return 'M%d' % (offset + (self is Region.LARGE))


@dataclass(frozen=True)
class RegionPartition(object):
    """Split of the ransom axis at *omega*.

    *residual* is ``|Psi(omega)|``; *unique* is ``False`` if the sign
    pattern check found ``Psi`` changing sign again past *omega*.

    """
    omega: float
    variant: GameVariant
    residual: float
    unique: bool = True

    def is_small(self, r):
        """Tell whether *r* lies in the small-ransom region. Ransoms within
        tolerance of *omega* count as small."""
        small = np.asarray(r) <= self.omega * (1 + REGION_TOL) + REGION_TOL
        return bool(small) if small.ndim == 0 else small

    def region(self, r):
        return Region.SMALL if self.is_small(r) else Region.LARGE


@dataclass(frozen=True)
class StrategyRegion(object):
    """Valuation thresholds of the victim at one ransom.

    In the small-ransom region the victim discards up to *lower_D* and pays
    up to *upper_P*; in the large-ransom region *upper_P* is ``None`` and
    the victim discards up to *lower_D*.

    """
    lower_D: float
    upper_P: object
    region: Region

    @property
    def pay_band(self):
        """Width of the valuation band in which the victim pays."""
        if self.upper_P is None:
            return 0.0
        return max(0.0, self.upper_P - self.lower_D)


def _divide(num, den):
    num, den = np.broadcast_arrays(np.asarray(num, dtype=float),
                                   np.asarray(den, dtype=float))
    if np.any((num == 0) & (den == 0)):
        raise DegenerateParameters('threshold is 0/0 at the given ransom.')
    with np.errstate(divide='ignore', invalid='ignore'):
        value = np.where(den != 0, num / np.where(den != 0, den, 1.0),
                         np.copysign(np.inf, num))
    return value


def thresholds(params, variant, r):
    """Return ``(psi_small, psi_large)`` at *r*: the pay-vs-fallback and the
    discard-vs-fallback valuation thresholds of *variant*."""
    q, k = crack_terms(params, variant, r)
    r = np.asarray(r, dtype=float)
    p = params.p
    small = _divide(k - r, (1.0 - p) * (1.0 - q))
    large = _divide(k, 1.0 - q * (1.0 - p))
    return small, large


def _unwrap(value):
    if np.ndim(value) == 0:
        return float(value)
    return value


def psi(params, variant, index, r):
    """Evaluate threshold ``psi_index`` at *r*.

    Indices 1 and 2 belong to the no-backup game, 3 and 4 to the backup
    game. Odd indices separate paying from the fallback action, even
    indices discarding from the fallback action.

    """
    expected = GameVariant.GAMMA1 if index in (1, 2) else GameVariant.GAMMA2
    if index not in (1, 2, 3, 4):
        raise InadmissibleAction('psi index(=%r) must be 1, 2, 3 or 4.'
                                 % (index,))
    if variant is not expected:
        raise InadmissibleAction('psi%d is not defined for %s.'
                                 % (index, variant.value))
    small, large = thresholds(params, variant, r)
    return _unwrap(small if index % 2 else large)


def capital_psi(params, variant, r):
    """Return ``Psi(r)``, whose sign equals that of ``psi_small(r) - r/p``.

    ``Psi(0) >= 0`` and ``Psi(r) -> -inf`` for every supported willingness.

    """
    p3, c3 = params.recovery(variant)
    q, _ = crack_terms(params, variant, r)
    r = np.asarray(r, dtype=float)
    p = params.p
    value = (p * params.c1 * (1.0 - p3) + (params.c2 * p + r) * q +
             c3 * p - r)
    return _unwrap(value)


def search_cap(params, variant):
    """Largest ransom inspected when bracketing the region root."""
    _, c3 = params.recovery(variant)
    base = max(100.0 * (params.c1 + params.c2 + c3 + 1.0),
               params.valuation.quantile(0.9999))
    return 10.0 * base


@lru_cache(maxsize=256)
def region_boundary(params, variant):
    """Return the :class:`RegionPartition` of *variant*.

    The smallest root of :func:`capital_psi` is bracketed by doubling, then
    located on a grid inside the bracket and refined by bisection. The sign
    pattern is verified afterwards; a failing pattern is logged and
    reported through :attr:`RegionPartition.unique`.

    Raise :exc:`SearchCapExceeded` if no sign change is found below
    :func:`search_cap`.

    """
    def f(r):
        return capital_psi(params, variant, r)

    cap = search_cap(params, variant)
    if f(0.0) <= 0:
        omega = 0.0
        hi = 1.0
    else:
        hi = 1.0
        while f(hi) > 0:
            if hi >= cap:
                raise SearchCapExceeded(cap)
            hi = min(2.0 * hi, cap)
        grid = np.linspace(0.0, hi, 1025)
        values = capital_psi(params, variant, grid)
        first = int(np.argmax(values <= 0))
        if values[first] == 0:
            omega = float(grid[first])
        else:
            omega = optimize.bisect(f, grid[first - 1], grid[first],
                                    xtol=1e-15, rtol=4 * np.finfo(float).eps,
                                    maxiter=200)
    residual = abs(f(omega))
    if residual > SIGN_TOL:
        logger.warning('%s: |Psi(omega=%r)| = %r exceeds %r', variant.value,
                       omega, residual, SIGN_TOL)

    check = np.unique(np.concatenate([
        np.linspace(0.0, 2.0 * max(hi, omega), VERIFY_POINTS),
        1.0 / np.linspace(1.0, 1e-4, VERIFY_POINTS) - 1.0,
    ]))
    values = capital_psi(params, variant, check)
    below = check <= omega
    unique = bool(np.all(values[below] >= -SIGN_TOL) and
                  np.all(values[~below] <= SIGN_TOL))
    if not unique:
        logger.warning('%s: Psi changes sign again after omega=%r; the '
                       'region split is not unique', variant.value, omega)
    logger.debug('%s: omega=%r residual=%r', variant.value, omega, residual)
    return RegionPartition(float(omega), variant, float(residual), unique)


def respond(params, variant, x, r):
    """Vectorized best response at a scalar ransom *r*.

    Returns an integer array indexing :attr:`GameVariant.actions`
    (0 discard, 1 pay, 2 fallback). Boundary ties go to discard, and to
    paying on the upper edge of the pay band.

    """
    x = np.asarray(x, dtype=float)
    small, large = thresholds(params, variant, r)
    if region_boundary(params, variant).is_small(r):
        codes = np.where(x <= r / params.p, 0, np.where(x <= small, 1, 2))
    else:
        codes = np.where(x <= large, 0, 2)
    return codes


def best_response(params, variant, x, r):
    """Return the victim's weakly dominant :class:`VictimAction` for
    valuation *x* and ransom *r*."""
    return variant.actions[int(respond(params, variant, x, r))]


def strategy_region(params, variant, r):
    """Return the :class:`StrategyRegion` that :func:`best_response` uses at
    ransom *r*."""
    small, large = thresholds(params, variant, r)
    if region_boundary(params, variant).is_small(r):
        return StrategyRegion(r / params.p, float(small), Region.SMALL)
    return StrategyRegion(float(large), None, Region.LARGE)


@dataclass(frozen=True)
class BandOrdering(object):
    """Comparison of the victim's bands against the two hacker types'
    equilibrium ransoms."""

    a1: StrategyRegion
    a2: StrategyRegion

    @property
    def holds(self):
        """A1's discard threshold is at least A2's and its pay band is at
        most as wide."""
        return (self.a1.lower_D >= self.a2.lower_D and
                self.a1.pay_band <= self.a2.pay_band)


def band_ordering(params, variant, r_a1, r_a2):
    return BandOrdering(strategy_region(params, variant, r_a1),
                        strategy_region(params, variant, r_a2))
