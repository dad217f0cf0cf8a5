"""
Monte Carlo playout of the ransomware game.

A playout draws the victim's valuation and the hacker's type, lets the
victim respond to ransom *r* and resolves the random branches of the
chosen action: recovery from backup (backup game only), then cracking,
then paying the ransom plus the punishment fee. Realized payoffs are
averaged by :func:`simulate` and serve as an independent check of the
closed-form expectations.

Each playout consumes exactly five uniforms, in the order valuation, type,
recovery, crack, payment, whether or not a branch is reached, so a batch
and a sequence of single playouts from the same stream see the same
numbers.

"""
import csv
import logging
import math
from dataclasses import dataclass

import numpy as np
import simpy

from ransomgame.core import GameVariant, HackerType, VictimAction
from ransomgame.exceptions import InvalidParameters
from ransomgame.response import best_response, respond
from ransomgame.util import format_number, parallel_map, substream

logger = logging.getLogger(__name__)

#: Uniforms consumed per playout.
DRAWS = 5
#: Stages every playout goes through (valuation, type, decision).
BASE_STAGES = 3


@dataclass(frozen=True)
class PlayoutRecord(object):
    """Outcome of one playout.

    Branch flags are ``None`` when their branch was not reached.
    *duration* is the number of stages the playout went through.

    """
    victim_valuation: float
    hacker_type: HackerType
    action: VictimAction
    crack_succeeded: object
    paid_after_crack_fail: object
    recovery_succeeded: object
    victim_payoff: float
    hacker_payoff: float
    duration: float

    columns = ('victim_valuation', 'hacker_type', 'action',
               'recovery_succeeded', 'crack_succeeded',
               'paid_after_crack_fail', 'victim_payoff', 'hacker_payoff',
               'duration')

    def astuple(self):
        return (self.victim_valuation, self.hacker_type.value,
                self.action.value, self.recovery_succeeded,
                self.crack_succeeded, self.paid_after_crack_fail,
                self.victim_payoff, self.hacker_payoff, self.duration)


def _settle(params, variant, r, x, a2, codes, recovered, cracked, paid):
    """Realized ``(victim, hacker)`` payoffs of a batch of playouts.

    *recovered*, *cracked* and *paid* are boolean arrays that are ``False``
    where their branch was not reached.

    """
    _, c3 = params.recovery(variant)
    fallback = codes == 2
    crack_reached = fallback & ~recovered
    pay_reached = crack_reached & ~cracked
    x_lost = x * a2

    victim = np.select(
        [codes == 0, codes == 1],
        [-x, -r - x_lost],
        -c3 - params.c1 * crack_reached - (params.c2 + r + x_lost) * paid)
    hacker = np.select(
        [codes == 0, codes == 1],
        [params.b1 * a2, r + params.b2 * a2],
        r * paid + a2 * (params.b1 * (recovered | cracked) +
                         params.b2 * pay_reached))
    return victim, hacker - params.c4


@dataclass(frozen=True, eq=False)
class PlayoutBatch(object):
    """Vectorized outcomes of many playouts. Branch arrays hold ``-1``
    where the branch was not reached."""

    variant: GameVariant
    valuation: np.ndarray
    is_a1: np.ndarray
    codes: np.ndarray
    recovered: np.ndarray
    cracked: np.ndarray
    paid: np.ndarray
    victim: np.ndarray
    hacker: np.ndarray
    duration: np.ndarray

    def __len__(self):
        return len(self.codes)

    def records(self):
        """Yield one :class:`PlayoutRecord` per playout."""
        def flag(value):
            return None if value < 0 else bool(value)

        actions = self.variant.actions
        for i in range(len(self)):
            yield PlayoutRecord(
                float(self.valuation[i]),
                HackerType.A1 if self.is_a1[i] else HackerType.A2,
                actions[self.codes[i]],
                flag(self.cracked[i]), flag(self.paid[i]),
                flag(self.recovered[i]), float(self.victim[i]),
                float(self.hacker[i]), float(self.duration[i]))


def _types(params, draws, hacker_type):
    if hacker_type is None:
        return draws < params.p
    return np.full(draws.shape, hacker_type is HackerType.A1)


def playout_batch(params, variant, r, stream, size, hacker_type=None):
    """Run *size* playouts at ransom *r* with draws from *stream*.

    With *hacker_type* given, the type draw is consumed but ignored.

    """
    p3, _ = params.recovery(variant)
    u = stream.random((size, DRAWS))
    x = np.asarray(params.valuation.quantile(u[:, 0]), dtype=float)
    is_a1 = _types(params, u[:, 1], hacker_type)
    codes = respond(params, variant, x, r)

    fallback = codes == 2
    recovery_reached = fallback & (variant is GameVariant.GAMMA2)
    recovered = recovery_reached & (u[:, 2] < p3)
    crack_reached = fallback & ~recovered
    cracked = crack_reached & (u[:, 3] < params.p1)
    pay_reached = crack_reached & ~cracked
    paid = pay_reached & (u[:, 4] < params.willingness(r))

    victim, hacker = _settle(params, variant, r, x, ~is_a1, codes, recovered,
                             cracked, paid)

    def reached(mask, outcome):
        return np.where(mask, outcome.astype(np.int8), np.int8(-1))

    duration = (BASE_STAGES + recovery_reached.astype(int) +
                crack_reached.astype(int) + pay_reached.astype(int))
    return PlayoutBatch(variant, x, is_a1, codes,
                        reached(recovery_reached, recovered),
                        reached(crack_reached, cracked),
                        reached(pay_reached, paid), victim, hacker,
                        duration.astype(float))


def _game(env, params, variant, r, u, hacker_type):
    """SimPy process playing one game; returns a :class:`PlayoutRecord`."""
    x = float(params.valuation.quantile(u[0]))
    yield env.timeout(1)
    is_a1 = bool(_types(params, u[1], hacker_type))
    yield env.timeout(1)
    action = best_response(params, variant, x, r)
    yield env.timeout(1)

    recovered = cracked = paid = None
    if action is variant.fallback:
        if variant is GameVariant.GAMMA2:
            p3, _ = params.recovery(variant)
            recovered = bool(u[2] < p3)
            yield env.timeout(1)
        if not recovered:
            cracked = bool(u[3] < params.p1)
            yield env.timeout(1)
            if not cracked:
                paid = bool(u[4] < params.willingness(r))
                yield env.timeout(1)

    victim, hacker = _settle(
        params, variant, r, np.array([x]), np.array([not is_a1]),
        np.array([variant.actions.index(action)]),
        np.array([bool(recovered)]), np.array([bool(cracked)]),
        np.array([bool(paid)]))
    return PlayoutRecord(x, HackerType.A1 if is_a1 else HackerType.A2,
                         action, cracked, paid, recovered, float(victim[0]),
                         float(hacker[0]), float(env.now))


def playout(params, variant, r, stream, hacker_type=None):
    """Play one game at ransom *r* with draws from *stream*.

    The game runs as a :mod:`simpy` process in which every resolved stage
    takes one time unit.

    """
    if r < 0:
        raise InvalidParameters('r(=%r) must be >= 0.' % (r,))
    env = simpy.Environment()
    proc = env.process(_game(env, params, variant, r, stream.random(DRAWS),
                             hacker_type))
    return env.run(until=proc)


@dataclass(frozen=True)
class SimulationSummary(object):
    """Aggregate of :func:`simulate`.

    Standard errors are ``sample std / sqrt(n)`` and 0 for ``n = 1``.

    """
    n: int
    mean_hacker_payoff: float
    std_error: float
    mean_victim_payoff: float
    victim_std_error: float
    action_frequencies: dict

    def agrees_with(self, expected, k=3.0):
        """Tell whether *expected* lies within *k* standard errors of the
        mean hacker payoff."""
        deviation = abs(self.mean_hacker_payoff - expected)
        return deviation <= k * self.std_error + 1e-12 * (1 + abs(expected))

    def to_dict(self):
        return {
            'n': self.n,
            'mean_hacker_payoff': self.mean_hacker_payoff,
            'std_error': self.std_error,
            'mean_victim_payoff': self.mean_victim_payoff,
            'victim_std_error': self.victim_std_error,
            'action_frequencies': {a.value: f for a, f in
                                   self.action_frequencies.items()},
        }


@dataclass
class _Moments(object):
    """Running count, mean and sum of squared deviations."""

    n: int = 0
    mean: float = 0.0
    m2: float = 0.0

    @classmethod
    def of(cls, values):
        mean = float(np.mean(values))
        return cls(len(values), mean, float(np.sum((values - mean) ** 2)))

    def merge(self, other):
        """Pairwise update of Chan, Golub and LeVeque."""
        if other.n == 0:
            return
        total = self.n + other.n
        delta = other.mean - self.mean
        self.mean += delta * other.n / total
        self.m2 += other.m2 + delta * delta * self.n * other.n / total
        self.n = total

    def std_error(self):
        if self.n < 2:
            return 0.0
        return math.sqrt(self.m2 / (self.n - 1)) / math.sqrt(self.n)


def _chunks(n, chunk_size):
    if n < 1:
        raise InvalidParameters('n(=%r) must be >= 1.' % (n,))
    if chunk_size < 1:
        raise InvalidParameters('chunk_size(=%r) must be >= 1.'
                                % (chunk_size,))
    return [(i, min(chunk_size, n - start))
            for i, start in enumerate(range(0, n, chunk_size))]


def simulate(params, variant, r, n, seed, hacker_type=None,
             chunk_size=65536, workers=1):
    """Aggregate *n* playouts at ransom *r*.

    Playouts are split into chunks of *chunk_size*; chunk ``i`` draws from
    ``substream(seed, i)``, so the summary depends only on *seed*, *n* and
    *chunk_size*, never on *workers*.

    """
    chunks = _chunks(n, chunk_size)
    counts = np.zeros(len(variant.actions), dtype=np.int64)
    hacker, victim = _Moments(), _Moments()

    def run(chunk):
        index, size = chunk
        batch = playout_batch(params, variant, r, substream(seed, index),
                              size, hacker_type)
        logger.debug('chunk %d: %d playouts', index, size)
        return (_Moments.of(batch.hacker), _Moments.of(batch.victim),
                np.bincount(batch.codes, minlength=len(variant.actions)))

    for h, v, c in parallel_map(run, chunks, workers):
        hacker.merge(h)
        victim.merge(v)
        counts += c
    frequencies = {action: float(count) / n
                   for action, count in zip(variant.actions, counts)}
    logger.info('%s r=%r: %d playouts, mean hacker payoff %r +- %r',
                variant.value, r, n, hacker.mean, hacker.std_error())
    return SimulationSummary(n, hacker.mean, hacker.std_error(), victim.mean,
                             victim.std_error(), frequencies)


def playout_records(params, variant, r, n, seed, hacker_type=None,
                    chunk_size=65536):
    """Yield the :class:`PlayoutRecord` of each playout :func:`simulate`
    would run with the same arguments."""
    for index, size in _chunks(n, chunk_size):
        batch = playout_batch(params, variant, r, substream(seed, index),
                              size, hacker_type)
        for record in batch.records():
            yield record


def write_playouts(path, records):
    """Write *records* as CSV to *path*."""
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle)
        writer.writerow(PlayoutRecord.columns)
        for record in records:
            writer.writerow([value if isinstance(value, str) else
                             format_number(value)
                             for value in record.astuple()])
