"""
Tests for loading, merging and validating run configurations.

"""
import json

import pytest

from ransomgame.config import (
    RunConfig, apply_override, load_config, merge, parse_override)
from ransomgame.core import GameVariant, HackerType
from ransomgame.exceptions import ConfigError
from ransomgame.stochastics import ExpDecay, PowerDecay


def test_defaults():
    config = RunConfig()
    assert config.variant is GameVariant.GAMMA1
    assert config.params.p == 0.9
    assert config.params.has_backup
    assert config.seed == 0
    assert config.simulation.hacker_type is None
    assert config.check.fixed_r == (0.5, 3.0)


def test_round_trip():
    config = RunConfig()
    assert RunConfig.from_dict(config.to_dict()) == config
    assert RunConfig.from_dict({}) == config


def test_partial_document():
    config = RunConfig.from_dict({
        'variant': 'gamma2',
        'params': {'c1': 2.0},
        'simulation': {'hacker_type': 'A2', 'n': 10},
    })
    assert config.variant is GameVariant.GAMMA2
    assert config.params.c1 == 2.0
    assert config.params.c2 == 0.5
    assert config.simulation.hacker_type is HackerType.A2
    assert config.simulation.chunk_size == 65536


def test_typed_objects_replace_the_default():
    config = RunConfig.from_dict({
        'params': {'willingness': {'type': 'exp_decay', 'scale': 2.0}},
    })
    assert config.params.willingness == ExpDecay(2.0)


def test_sweeps_replace_the_default():
    config = RunConfig.from_dict({'check': {'sweeps': {'c4': [0.1, 0.3]}}})
    assert config.check.sweeps == {'c4': (0.1, 0.3)}


def test_all_errors_are_reported():
    with pytest.raises(ConfigError) as exc:
        RunConfig.from_dict({
            'variant': 'gamma3',
            'seed': -1,
            'workers': 0,
            'simulation': {'n': 0, 'hacker_type': 'A3'},
            'thresholds': {'r': [1.0, 'x']},
            'colour': 'blue',
        })
    errors = exc.value.errors
    assert len(errors) == 7
    text = str(exc.value)
    assert text.startswith('invalid configuration:')
    for word in ('variant', 'seed', 'workers', 'simulation: n',
                 'hacker_type', 'thresholds', "'colour'"):
        assert word in text
    assert exc.value.exit_code == 1


def test_nested_unknown_key():
    with pytest.raises(ConfigError) as exc:
        RunConfig.from_dict({'simulation': {'runs': 5}})
    assert "unknown key 'simulation.runs'." in exc.value.errors


def test_invalid_params():
    with pytest.raises(ConfigError) as exc:
        RunConfig.from_dict({'params': {'p': 0.1, 'p1': 0.3}})
    assert exc.value.errors == ['params: p(=0.1) must be > p1(=0.3).']


def test_backup_variant_needs_recovery_parameters():
    with pytest.raises(ConfigError) as exc:
        RunConfig.from_dict({'variant': 'gamma2',
                             'params': {'p3': None, 'c3': None}})
    assert exc.value.errors == ['params: game gamma2 requires p3 and c3.']


def test_not_an_object():
    pytest.raises(ConfigError, RunConfig.from_dict, [1, 2])


def test_merge():
    base = {'a': {'b': 1, 'c': 2}, 'd': {'type': 'x', 'e': 1},
            'sweeps': {'c1': [1]}}
    merged = merge(base, {'a': {'b': 3}, 'd': {'type': 'y'},
                          'sweeps': {'p': [2]}})
    assert merged == {'a': {'b': 3, 'c': 2}, 'd': {'type': 'y'},
                      'sweeps': {'p': [2]}}
    assert base['a']['b'] == 1


@pytest.mark.parametrize('text, expected', [
    ('seed=3', (['seed'], 3)),
    ('params.c1=0.25', (['params', 'c1'], 0.25)),
    ('variant=gamma2', (['variant'], 'gamma2')),
    ('simulation.r=null', (['simulation', 'r'], None)),
    ('thresholds.r=[0, 2]', (['thresholds', 'r'], [0, 2])),
])
def test_parse_override(text, expected):
    assert parse_override(text) == expected


@pytest.mark.parametrize('text', ['seed', '=3'])
def test_malformed_override(text):
    pytest.raises(ConfigError, parse_override, text)


def test_apply_override():
    data = apply_override({'params': {'c1': 1.0}}, 'params.c2=0.1')
    assert data == {'params': {'c1': 1.0, 'c2': 0.1}}
    data = apply_override({}, 'check.fixed_r=[1]')
    assert data == {'check': {'fixed_r': [1]}}


def test_load_config(tmp_path):
    path = tmp_path / 'run.json'
    path.write_text(json.dumps({'variant': 'gamma2', 'seed': 5,
                                'params': {'c3': 0.1}}))
    config = load_config(str(path),
                         overrides=['params.willingness.exponent=3'],
                         seed=9)
    assert config.variant is GameVariant.GAMMA2
    assert config.seed == 9
    assert config.params.c3 == 0.1
    assert config.params.willingness == PowerDecay(3.0)


def test_load_config_defaults():
    assert load_config() == RunConfig()


def test_unreadable_config(tmp_path):
    with pytest.raises(ConfigError) as exc:
        load_config(str(tmp_path / 'missing.json'))
    assert 'cannot read' in str(exc.value)
    broken = tmp_path / 'broken.json'
    broken.write_text('{"seed": ')
    pytest.raises(ConfigError, load_config, str(broken))
