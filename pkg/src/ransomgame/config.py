"""
Run configuration of the command line interface.

A configuration is one JSON document. Missing keys take the defaults of
:class:`RunConfig`; ``--set dotted.path=value`` overrides single fields.
Validation reports every problem it finds at once through
:exc:`~ransomgame.exceptions.ConfigError`.

"""
import copy
import json
import logging
from dataclasses import dataclass, field

from ransomgame.core import GameParams, GameVariant, HackerType
from ransomgame.equilibrium import SearchConfig
from ransomgame.exceptions import ConfigError, RansomGameError
from ransomgame.payoff import GridSpec

logger = logging.getLogger(__name__)

#: Keys whose values replace the default wholesale instead of being merged.
_REPLACED = ('sweeps',)
#: Sections validated by their own ``from_dict``.
_SELF_CHECKED = ('params', 'search', 'grid', 'compare_r')


def _default_params():
    return GameParams(p3=0.3, c3=0.2)


def _default_sweeps():
    return {
        'c1': (0.5, 1.0, 1.5),
        'c2': (0.25, 0.5, 1.0),
        'c4': (0.1, 0.2, 0.4),
        'p': (0.5, 0.7, 0.9),
        'p1': (0.05, 0.1, 0.15),
        'willingness.exponent': (1.5, 2.0, 2.5),
    }


def _default_compare():
    return GridSpec('u', 1.0, 0.02, 100)


def _numbers(name, values, errors, minimum=None):
    if not isinstance(values, (list, tuple)) or not values:
        errors.append('%s must be a non-empty list of numbers.' % name)
        return ()
    result = []
    for value in values:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            errors.append('%s: %r is not a number.' % (name, value))
        elif minimum is not None and value < minimum:
            errors.append('%s: %r must be >= %r.' % (name, value, minimum))
        else:
            result.append(float(value))
    return tuple(result)


def _optional_number(name, value, errors):
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)) or \
            value < 0:
        errors.append('%s(=%r) must be a number >= 0 or null.'
                      % (name, value))
        return None
    return float(value)


def _integer(name, value, errors, minimum):
    if isinstance(value, bool) or not isinstance(value, int) or \
            value < minimum:
        errors.append('%s(=%r) must be an integer >= %d.'
                      % (name, value, minimum))
        return minimum
    return value


@dataclass(frozen=True)
class ThresholdsBlock(object):
    r: tuple = (0.0, 1.0)


@dataclass(frozen=True)
class BestResponseBlock(object):
    """*r* of ``None`` means the A1 equilibrium ransom."""

    r: object = None
    x: tuple = (0.0, 0.5, 1.0, 2.0, 5.0, 10.0)


@dataclass(frozen=True)
class SimulationBlock(object):
    """*r* of ``None`` means the equilibrium ransom of the simulated type
    (A1 if no type is fixed)."""

    r: object = None
    n: int = 100000
    hacker_type: object = None
    chunk_size: int = 65536
    dump_limit: int = 100000


@dataclass(frozen=True)
class CheckBlock(object):
    fixed_r: tuple = (0.5, 3.0)
    sweeps: dict = field(default_factory=_default_sweeps)
    compare_r: GridSpec = field(default_factory=_default_compare)
    quadrature_n: int = 100000


@dataclass(frozen=True)
class RunConfig(object):
    variant: GameVariant = GameVariant.GAMMA1
    params: GameParams = field(default_factory=_default_params)
    seed: int = 0
    workers: int = 1
    search: SearchConfig = field(default_factory=SearchConfig)
    grid: GridSpec = field(default_factory=GridSpec)
    thresholds: ThresholdsBlock = field(default_factory=ThresholdsBlock)
    best_response: BestResponseBlock = field(
        default_factory=BestResponseBlock)
    simulation: SimulationBlock = field(default_factory=SimulationBlock)
    check: CheckBlock = field(default_factory=CheckBlock)

    def to_dict(self):
        simulation = self.simulation
        return {
            'variant': self.variant.value,
            'params': self.params.to_dict(),
            'seed': self.seed,
            'workers': self.workers,
            'search': self.search.to_dict(),
            'grid': self.grid.to_dict(),
            'thresholds': {'r': list(self.thresholds.r)},
            'best_response': {
                'r': self.best_response.r,
                'x': list(self.best_response.x),
            },
            'simulation': {
                'r': simulation.r,
                'n': simulation.n,
                'hacker_type': (None if simulation.hacker_type is None
                                else simulation.hacker_type.value),
                'chunk_size': simulation.chunk_size,
                'dump_limit': simulation.dump_limit,
            },
            'check': {
                'fixed_r': list(self.check.fixed_r),
                'sweeps': {k: list(v) for k, v in self.check.sweeps.items()},
                'compare_r': self.check.compare_r.to_dict(),
                'quadrature_n': self.check.quadrature_n,
            },
        }

    @classmethod
    def from_dict(cls, data):
        """Build a configuration from *data* merged over the defaults.

        Raise :exc:`ConfigError` listing every problem found.

        """
        if not isinstance(data, dict):
            raise ConfigError('configuration must be a JSON object.')
        merged = merge(cls().to_dict(), data)
        errors = []
        _unknown('', merged, cls().to_dict(), errors)
        built = {}

        def section(name, build):
            try:
                built[name] = build(merged[name])
            except ConfigError as exc:
                errors.extend('%s: %s' % (name, e) for e in exc.errors)
            except (RansomGameError, ValueError, TypeError) as exc:
                errors.append('%s: %s' % (name, exc))

        section('variant', GameVariant)
        section('params', GameParams.from_dict)
        section('search', SearchConfig.from_dict)
        section('grid', lambda d: GridSpec(**d))
        section('thresholds', _thresholds)
        section('best_response', _best_response)
        section('simulation', _simulation)
        section('check', _check)
        built['seed'] = _integer('seed', merged['seed'], errors, 0)
        built['workers'] = _integer('workers', merged['workers'], errors, 1)

        if 'variant' in built and 'params' in built:
            try:
                built['params'].recovery(built['variant'])
            except RansomGameError as exc:
                errors.append('params: %s' % exc)
        if errors:
            raise ConfigError(errors)
        return cls(**built)


def _unknown(prefix, data, reference, errors):
    for key, value in data.items():
        path = prefix + key
        if key not in reference:
            errors.append('unknown key %r.' % path)
        elif isinstance(value, dict) and isinstance(reference[key], dict) \
                and key not in _REPLACED + _SELF_CHECKED \
                and 'type' not in value:
            _unknown(path + '.', value, reference[key], errors)


def _collect(build):
    def wrapper(data):
        errors = []
        result = build(data, errors)
        if errors:
            raise ConfigError(errors)
        return result
    return wrapper


@_collect
def _thresholds(data, errors):
    return ThresholdsBlock(_numbers('r', data['r'], errors, 0.0))


@_collect
def _best_response(data, errors):
    return BestResponseBlock(_optional_number('r', data['r'], errors),
                             _numbers('x', data['x'], errors, 0.0))


@_collect
def _simulation(data, errors):
    hacker_type = data['hacker_type']
    if hacker_type is not None:
        try:
            hacker_type = HackerType(hacker_type)
        except ValueError:
            errors.append('hacker_type(=%r) must be "A1", "A2" or null.'
                          % (hacker_type,))
            hacker_type = None
    return SimulationBlock(
        _optional_number('r', data['r'], errors),
        _integer('n', data['n'], errors, 1), hacker_type,
        _integer('chunk_size', data['chunk_size'], errors, 1),
        _integer('dump_limit', data['dump_limit'], errors, 0))


@_collect
def _check(data, errors):
    sweeps = data['sweeps']
    if not isinstance(sweeps, dict):
        errors.append('sweeps must map parameter names to value lists.')
        sweeps = {}
    sweeps = {name: _numbers('sweeps.%s' % name, values, errors)
              for name, values in sweeps.items()}
    try:
        compare_r = GridSpec(**data['compare_r'])
    except (TypeError, ValueError) as exc:
        errors.append('compare_r: %s' % exc)
        compare_r = None
    return CheckBlock(_numbers('fixed_r', data['fixed_r'], errors, 0.0),
                      sweeps, compare_r,
                      _integer('quadrature_n', data['quadrature_n'], errors,
                               1))


def merge(base, update):
    """Return *base* updated recursively with *update*.

    Objects carrying a ``"type"`` key (distributions, willingness) and the
    sweep table replace their default instead of being merged into it.

    """
    result = copy.deepcopy(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict) \
                and 'type' not in value and key not in _REPLACED:
            result[key] = merge(result[key], value)
        else:
            result[key] = copy.deepcopy(value)
    return result


def parse_override(text):
    """Split ``path=value``; the value is parsed as JSON and kept as a
    string if that fails."""
    path, sep, raw = text.partition('=')
    if not sep or not path:
        raise ConfigError('override %r must look like path=value.' % text)
    try:
        value = json.loads(raw)
    except ValueError:
        value = raw
    return path.split('.'), value


def apply_override(data, text):
    """Apply one ``--set`` override to the raw dictionary *data*."""
    keys, value = parse_override(text)
    target = data
    for key in keys[:-1]:
        if not isinstance(target.get(key), dict):
            target[key] = {}
        target = target[key]
    target[keys[-1]] = value
    return data


def load_config(path=None, overrides=(), seed=None):
    """Read the configuration at *path* (or the defaults), apply
    *overrides* and *seed*, and validate.

    Raise :exc:`ConfigError` if the file cannot be read or the result is
    invalid.

    """
    data = {}
    if path is not None:
        try:
            with open(path) as handle:
                data = json.load(handle)
        except (OSError, ValueError) as exc:
            raise ConfigError('cannot read %s: %s' % (path, exc))
    data = merge(RunConfig().to_dict(), data)
    for text in overrides:
        apply_override(data, text)
    if seed is not None:
        data['seed'] = seed
    logger.debug('configuration: %s', json.dumps(data, sort_keys=True))
    return RunConfig.from_dict(data)
