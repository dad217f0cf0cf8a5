"""
Core components of the ransomware game: the parameter set, the player
types and actions, and the utilities of both players.

The no-backup game (:attr:`GameVariant.GAMMA1`) and the backup game
(:attr:`GameVariant.GAMMA2`) share one set of formulas. The backup game
adds the recovery stage with success probability ``p3`` and cost ``c3``;
with ``p3 = c3 = 0`` its formulas are those of the no-backup game term by
term, with the recovery action ``R`` in the place of the crack action
``C``.

"""
import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from ransomgame.exceptions import InadmissibleAction, InvalidParameters
from ransomgame.stochastics import (
    Exponential, PaymentWillingness, PowerDecay, ValuationDistribution)


class HackerType(Enum):
    """Type of the hacker: *A1* returns the decryption key on payment, *A2*
    never does but has side earnings ``b1``/``b2``."""

    A1 = 'A1'
    A2 = 'A2'


class VictimAction(Enum):
    """Discard, pay, crack (then maybe pay) and recover (then crack, then
    maybe pay)."""

    D = 'D'
    P = 'P'
    C = 'C'
    R = 'R'


class GameVariant(Enum):
    GAMMA1 = 'gamma1'
    GAMMA2 = 'gamma2'

    @property
    def actions(self):
        """Admissible victim actions, in tie-break order."""
        return (VictimAction.D, VictimAction.P, self.fallback)

    @property
    def fallback(self):
        """The action taken instead of paying up front: ``C`` without a
        backup, ``R`` with one."""
        if self is GameVariant.GAMMA1:
            return VictimAction.C
        return VictimAction.R


_PROBABILITIES = ('p', 'p1', 'p3')
_MONEY = ('c1', 'c2', 'c3', 'c4', 'b1', 'b2')


@dataclass(frozen=True)
class GameParams(object):
    """Exogenous parameters of the game.

    *p* is the victim's prior that the hacker is of type A1, *p1* the crack
    success probability, *c1* the crack cost, *c2* the punishment fee for
    paying late, *c4* the attack cost and *b1* <= *b2* the type A2 side
    earnings. *p3* and *c3* (recovery success probability and cost) are
    only needed by the backup game. *willingness* is ``p2`` and
    *valuation* is ``F_h``.

    """
    p: float = 0.9
    p1: float = 0.1
    c1: float = 1.0
    c2: float = 0.5
    c4: float = 0.2
    b1: float = 1.0
    b2: float = 1.5
    willingness: PaymentWillingness = field(default_factory=PowerDecay)
    valuation: ValuationDistribution = field(default_factory=Exponential)
    p3: object = None
    c3: object = None

    def __post_init__(self):
        for name in _PROBABILITIES + _MONEY:
            value = getattr(self, name)
            if value is None and name in ('p3', 'c3'):
                continue
            if isinstance(value, bool) or \
                    not isinstance(value, (int, float)) or \
                    not math.isfinite(value):
                raise InvalidParameters('%s(=%r) must be a finite number.'
                                        % (name, value))
            if name in _PROBABILITIES and not 0 <= value <= 1:
                raise InvalidParameters('%s(=%r) must be in [0, 1].'
                                        % (name, value))
            if name in _MONEY and value < 0:
                raise InvalidParameters('%s(=%r) must be >= 0.'
                                        % (name, value))
        if (self.p3 is None) != (self.c3 is None):
            raise InvalidParameters('p3 and c3 must be given together.')
        if not self.p > self.p1:
            raise InvalidParameters('p(=%r) must be > p1(=%r).'
                                    % (self.p, self.p1))
        if self.b1 > self.b2:
            raise InvalidParameters('b1(=%r) must be <= b2(=%r).'
                                    % (self.b1, self.b2))
        if not isinstance(self.willingness, PaymentWillingness):
            raise InvalidParameters('willingness(=%r) is not a payment '
                                    'willingness.' % (self.willingness,))
        if not isinstance(self.valuation, ValuationDistribution):
            raise InvalidParameters('valuation(=%r) is not a valuation '
                                    'distribution.' % (self.valuation,))

    @property
    def has_backup(self):
        return self.p3 is not None

    def recovery(self, variant):
        """Return ``(p3, c3)`` for *variant*; ``(0, 0)`` without backup.

        Raise :exc:`InvalidParameters` if the backup game is requested but
        the recovery parameters are missing.

        """
        if variant is GameVariant.GAMMA1:
            return 0.0, 0.0
        if not self.has_backup:
            raise InvalidParameters('game %s requires p3 and c3.'
                                    % variant.value)
        return float(self.p3), float(self.c3)

    def with_backup(self, p3, c3):
        return replace(self, p3=p3, c3=c3)

    def to_dict(self):
        data = {}
        for name in ('p', 'p1', 'p3', 'c1', 'c2', 'c3', 'c4', 'b1', 'b2'):
            value = getattr(self, name)
            if value is not None:
                data[name] = value
        data['willingness'] = self.willingness.to_dict()
        data['valuation'] = self.valuation.to_dict()
        return data

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        if 'willingness' in data:
            data['willingness'] = PaymentWillingness.from_dict(
                data['willingness'])
        if 'valuation' in data:
            data['valuation'] = ValuationDistribution.from_dict(
                data['valuation'])
        unknown = set(data) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise InvalidParameters('unknown parameters: %s'
                                    % ', '.join(sorted(unknown)))
        return cls(**data)


def check_action(variant, action):
    """Raise :exc:`InadmissibleAction` if *action* is not available in
    *variant*."""
    if action not in variant.actions:
        raise InadmissibleAction('action %s is not admissible in %s.'
                                 % (action.value, variant.value))


def crack_terms(params, variant, r):
    """Return ``(q, K)`` at ransom *r*.

    ``q = p2(r)(1 - p1)(1 - p3)`` is the probability that the victim ends
    up paying after the fallback action (recovery and crack both failed),
    ``K = [c1 + (c2 + r) p2(r)(1 - p1)](1 - p3) + c3`` is the expected
    valuation-free cost of the fallback action.

    """
    p3, c3 = params.recovery(variant)
    r = np.asarray(r, dtype=float)
    a = params.willingness(r) * (1.0 - params.p1)
    q = a * (1.0 - p3)
    k = (params.c1 + (params.c2 + r) * a) * (1.0 - p3) + c3
    return q, k


def _result(value):
    if np.ndim(value) == 0:
        return float(value)
    return value


def victim_utility(params, variant, x, hacker_type, action, r):
    """Return the victim's utility ``U_v(x, t, a, r)`` (always ``<= 0``).

    *x* may be an array of valuations.

    """
    check_action(variant, action)
    x = np.asarray(x, dtype=float)
    if action is VictimAction.D:
        value = -x
    elif action is VictimAction.P:
        value = -r - (x if hacker_type is HackerType.A2 else 0.0)
    else:
        q, k = crack_terms(params, variant, r)
        value = -k - (x * q if hacker_type is HackerType.A2 else 0.0)
    return _result(value + np.zeros_like(x))


def hacker_utility(params, variant, x, hacker_type, action, r):
    """Return the hacker's utility ``U_h(x, t, a, r)``, attack cost ``c4``
    included.

    The punishment fee ``c2`` is never credited to the hacker. The
    valuation *x* does not enter; it is accepted (and broadcast) so that
    both utilities share one signature.

    """
    check_action(variant, action)
    x = np.asarray(x, dtype=float)
    a2 = hacker_type is HackerType.A2
    if action is VictimAction.D:
        value = params.b1 if a2 else 0.0
    elif action is VictimAction.P:
        value = r + (params.b2 if a2 else 0.0)
    else:
        p3, _ = params.recovery(variant)
        q, _ = crack_terms(params, variant, r)
        value = r * q
        if a2:
            released = p3 + (1.0 - p3) * params.p1
            value = value + params.b1 * released + \
                params.b2 * (1.0 - params.p1) * (1.0 - p3)
    return _result(value - params.c4 + np.zeros_like(x))


def victim_expected_payoff(params, variant, x, action, r):
    """Return the victim's payoff of *action*, averaged over the hacker type
    with weights ``p`` and ``1 - p``."""
    check_action(variant, action)
    x = np.asarray(x, dtype=float)
    if action is VictimAction.D:
        value = -x
    elif action is VictimAction.P:
        value = -x * (1.0 - params.p) - r
    else:
        q, k = crack_terms(params, variant, r)
        value = -x * q * (1.0 - params.p) - k
    return _result(value + np.zeros_like(x))
