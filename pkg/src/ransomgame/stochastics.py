"""
Probabilistic primitives of the game.

Valuation distributions describe the hacker's belief ``F_h`` about what the
encrypted files are worth to the victim:

.. autosummary::
   Exponential
   LogNormal
   Uniform

Payment willingness families give the probability ``p2(r)`` that a victim
pays ransom *r* (plus the punishment fee) after a failed crack:

.. autosummary::
   PowerDecay
   ExpDecay
   LinearCutoff

All evaluations accept scalars or numpy arrays and are free of side
effects. Sampling takes an explicit stream (see :mod:`ransomgame.util`).

"""
import logging
import math
from dataclasses import asdict, dataclass, fields
from functools import cached_property

import numpy as np
from scipy import stats

from ransomgame.exceptions import InvalidParameters

logger = logging.getLogger(__name__)

_VALUATIONS = {}
_WILLINGNESS = {}


def _scalar(value):
    """Unwrap 0-d arrays into plain floats."""
    if np.ndim(value) == 0:
        return float(value)
    return value


def _finite(name, value):
    if not isinstance(value, (int, float)) or isinstance(value, bool) or \
            not math.isfinite(value):
        raise InvalidParameters('%s(=%r) must be a finite number.'
                                % (name, value))


def _register(registry, name):
    def decorator(cls):
        cls.kind = name
        registry[name] = cls
        return cls
    return decorator


def _from_dict(registry, what, data):
    if not isinstance(data, dict) or 'type' not in data:
        raise InvalidParameters('%s spec must be an object with a "type" '
                                'key, got %r.' % (what, data))
    data = dict(data)
    kind = data.pop('type')
    if kind not in registry:
        raise InvalidParameters('unknown %s type %r (expected one of %s).'
                                % (what, kind, ', '.join(sorted(registry))))
    cls = registry[kind]
    expected = {f.name for f in fields(cls)}
    if set(data) != expected:
        raise InvalidParameters('%s %r expects fields %s, got %s.'
                                % (what, kind, sorted(expected),
                                   sorted(data)))
    return cls(**data)


class ValuationDistribution(object):
    """Base class for the hacker's valuation distribution ``F_h``.

    Subclasses are frozen dataclasses that build a frozen
    :mod:`scipy.stats` distribution in :attr:`frozen`.

    """
    kind = None

    @cached_property
    def frozen(self):
        raise NotImplementedError(self)

    def cdf(self, x):
        """Return ``F_h(x)``; zero for ``x < 0``."""
        return _scalar(self.frozen.cdf(x))

    def survival(self, x):
        """Return ``1 - F_h(x)``; one for ``x < 0``."""
        return _scalar(self.frozen.sf(x))

    def quantile(self, q):
        """Return the inverse of :meth:`cdf` for ``q`` in ``[0, 1]``."""
        return _scalar(self.frozen.ppf(q))

    def sample(self, stream, size=None):
        """Draw valuations from *stream* by inversion.

        One uniform is consumed per valuation, which keeps streams aligned
        across distribution kinds.

        """
        return self.quantile(stream.random(size))

    def to_dict(self):
        data = {'type': self.kind}
        data.update(asdict(self))
        return data

    @staticmethod
    def from_dict(data):
        """Build a distribution from its JSON object, e.g.
        ``{"type": "exponential", "rate": 1.0}``."""
        return _from_dict(_VALUATIONS, 'valuation', data)


@_register(_VALUATIONS, 'exponential')
@dataclass(frozen=True)
class Exponential(ValuationDistribution):
    """Exponential valuation with *rate* per money unit."""

    rate: float = 1.0

    def __post_init__(self):
        _finite('rate', self.rate)
        if self.rate <= 0:
            raise InvalidParameters('rate(=%r) must be > 0.' % self.rate)

    @cached_property
    def frozen(self):
        return stats.expon(scale=1.0 / self.rate)


@_register(_VALUATIONS, 'lognormal')
@dataclass(frozen=True)
class LogNormal(ValuationDistribution):
    """Log-normal valuation; ``log V`` is normal with *mu* and *sigma*."""

    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        _finite('mu', self.mu)
        _finite('sigma', self.sigma)
        if self.sigma <= 0:
            raise InvalidParameters('sigma(=%r) must be > 0.' % self.sigma)

    @cached_property
    def frozen(self):
        return stats.lognorm(s=self.sigma, scale=math.exp(self.mu))


@_register(_VALUATIONS, 'uniform')
@dataclass(frozen=True)
class Uniform(ValuationDistribution):
    """Uniform valuation on ``[lo, hi]``."""

    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        _finite('lo', self.lo)
        _finite('hi', self.hi)
        if self.lo < 0:
            raise InvalidParameters('lo(=%r) must be >= 0.' % self.lo)
        if self.hi <= self.lo:
            raise InvalidParameters('hi(=%r) must be > lo(=%r).'
                                    % (self.hi, self.lo))

    @cached_property
    def frozen(self):
        return stats.uniform(loc=self.lo, scale=self.hi - self.lo)


@dataclass(frozen=True)
class Con1Check(object):
    """Outcome of :func:`check_con1`.

    *bounded* tells whether ``sup r * p2(r)`` is finite, *bound* is that
    supremum (``inf`` if unbounded) and *attained_at* the ransom attaining
    it, or ``None`` if the supremum is only approached.

    """
    bounded: bool
    bound: float
    attained_at: object = None


class PaymentWillingness(object):
    """Base class for the payment willingness ``p2(r)``.

    Instances are callable with a scalar or an array of ransoms.
    :attr:`sensitivity` maps each field to the sign of ``d p2 / d field``.

    """
    kind = None
    sensitivity = {}

    def __call__(self, r):
        return _scalar(self._evaluate(np.asarray(r, dtype=float)))

    def _evaluate(self, r):
        raise NotImplementedError(self)

    def con1(self):
        raise NotImplementedError(self)

    def to_dict(self):
        data = {'type': self.kind}
        data.update(asdict(self))
        return data

    @staticmethod
    def from_dict(data):
        """Build a willingness from its JSON object, e.g.
        ``{"type": "power_decay", "exponent": 2.0}``."""
        return _from_dict(_WILLINGNESS, 'willingness', data)


@_register(_WILLINGNESS, 'power_decay')
@dataclass(frozen=True)
class PowerDecay(PaymentWillingness):
    """``p2(r) = (1 + r) ** -exponent``.

    Exponents in ``(0, 1)`` are valid willingness functions but violate the
    finite condition; they exist so that this case can be reported.

    """
    exponent: float = 2.0
    sensitivity = {'exponent': -1}

    def __post_init__(self):
        _finite('exponent', self.exponent)
        if self.exponent <= 0:
            raise InvalidParameters('exponent(=%r) must be > 0.'
                                    % self.exponent)

    def _evaluate(self, r):
        return np.power(1.0 + r, -self.exponent)

    def con1(self):
        a = self.exponent
        if a > 1:
            r_max = 1.0 / (a - 1.0)
            return Con1Check(True, r_max * (a / (a - 1.0)) ** -a, r_max)
        if a == 1:
            # r / (1 + r) approaches 1 from below.
            return Con1Check(True, 1.0, None)
        return Con1Check(False, math.inf, None)


@_register(_WILLINGNESS, 'exp_decay')
@dataclass(frozen=True)
class ExpDecay(PaymentWillingness):
    """``p2(r) = exp(-scale * r)``."""

    scale: float = 1.0
    sensitivity = {'scale': -1}

    def __post_init__(self):
        _finite('scale', self.scale)
        if self.scale <= 0:
            raise InvalidParameters('scale(=%r) must be > 0.' % self.scale)

    def _evaluate(self, r):
        return np.exp(-self.scale * r)

    def con1(self):
        return Con1Check(True, 1.0 / (self.scale * math.e), 1.0 / self.scale)


@_register(_WILLINGNESS, 'linear_cutoff')
@dataclass(frozen=True)
class LinearCutoff(PaymentWillingness):
    """``p2(r) = level * max(0, 1 - r / cutoff)``."""

    level: float = 1.0
    cutoff: float = 1.0
    sensitivity = {'level': 1, 'cutoff': 1}

    def __post_init__(self):
        _finite('level', self.level)
        _finite('cutoff', self.cutoff)
        if not 0 <= self.level <= 1:
            raise InvalidParameters('level(=%r) must be in [0, 1].'
                                    % self.level)
        if self.cutoff <= 0:
            raise InvalidParameters('cutoff(=%r) must be > 0.' % self.cutoff)

    def _evaluate(self, r):
        return self.level * np.maximum(0.0, 1.0 - r / self.cutoff)

    def con1(self):
        return Con1Check(True, self.level * self.cutoff / 4.0,
                         self.cutoff / 2.0)


def p2_eval(willingness, r):
    """Return ``p2(r)`` of *willingness*."""
    return willingness(r)


def check_con1(willingness):
    """Check the finite condition ``sup r * p2(r) < inf`` analytically.

    Returns a :class:`Con1Check`. A bound that is only approached (power
    decay with exponent 1) is logged.

    """
    check = willingness.con1()
    if not check.bounded:
        logger.warning('%r: r * p2(r) is unbounded', willingness)
    elif check.attained_at is None:
        logger.warning('%r: sup r * p2(r) = %r is not attained',
                       willingness, check.bound)
    return check
