"""
The ``ransomgame`` module aggregates the most used components of the
ransomware game solver into a single namespace. Everything (and more) is
also available from the actual submodules.

The following tables list all of the available components in this module.

{toc}

"""
from ransomgame.core import (
    GameParams, GameVariant, HackerType, VictimAction, hacker_utility,
    victim_utility)
from ransomgame.equilibrium import (
    EquilibriumResult, SearchConfig, check_ordering, find_equilibrium,
    randomized_equilibrium)
from ransomgame.exceptions import (
    ConfigError, DegenerateParameters, FiniteConditionViolated,
    InadmissibleAction, InvalidParameters, OracleFailure, PropertyViolation,
    RandomizationError, RansomGameError, SearchCapExceeded)
from ransomgame.payoff import GridSpec, eta, payoff_curve, type_gap_d
from ransomgame.response import (
    best_response, capital_psi, psi, region_boundary, strategy_region)
from ransomgame.simulation import playout, simulate
from ransomgame.statics import comparative_statics, compare_games
from ransomgame.stochastics import (
    ExpDecay, Exponential, LinearCutoff, LogNormal, PowerDecay, Uniform,
    check_con1)


def compile_toc(entries, section_marker='='):
    """Compiles a list of sections with objects into sphinx formatted
    autosummary directives."""
    toc = ''
    for section, objs in entries:
        toc += '\n\n%s\n%s\n\n' % (section, section_marker * len(section))
        toc += '.. autosummary::\n\n'
        for obj in objs:
            toc += '    ~%s.%s\n' % (obj.__module__, obj.__name__)
    return toc


toc = (
    ('Games', (
        GameParams, GameVariant, HackerType, VictimAction, victim_utility,
        hacker_utility,
    )),
    ('Distributions', (
        Exponential, LogNormal, Uniform, PowerDecay, ExpDecay, LinearCutoff,
        check_con1,
    )),
    ('Victim strategy', (
        psi, capital_psi, region_boundary, best_response, strategy_region,
    )),
    ('Hacker payoff', (
        eta, type_gap_d, GridSpec, payoff_curve,
    )),
    ('Equilibria', (
        SearchConfig, EquilibriumResult, find_equilibrium,
        randomized_equilibrium, check_ordering, comparative_statics,
        compare_games,
    )),
    ('Simulation', (
        playout, simulate,
    )),
    ('Exceptions', (
        RansomGameError, ConfigError, InvalidParameters, InadmissibleAction,
        DegenerateParameters, SearchCapExceeded, FiniteConditionViolated,
        OracleFailure, PropertyViolation, RandomizationError,
    )),
)

# Use the toc to keep the documentation and the implementation in sync.
if __doc__:
    __doc__ = __doc__.format(toc=compile_toc(toc))
__all__ = [obj.__name__ for section, objs in toc for obj in objs]

__version__ = '1.0.0'
