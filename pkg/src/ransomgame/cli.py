"""
Command line interface.

Every subcommand builds a :class:`Report` from the validated
:class:`~ransomgame.config.RunConfig`, writes it as CSV or JSON to
``--out`` (or stdout) and prints a one-line summary to stderr. Errors end
the command with the :attr:`exit_code` of their exception class.

"""
import argparse
import csv
import io
import itertools
import json
import logging
import sys
from dataclasses import dataclass

import numpy as np

from ransomgame import __version__
from ransomgame.config import load_config
from ransomgame.core import GameVariant, HackerType
from ransomgame.equilibrium import check_ordering, find_equilibrium
from ransomgame.exceptions import (
    OracleFailure, PropertyViolation, RansomGameError)
from ransomgame.payoff import eta, payoff_curve, quadrature_eta
from ransomgame.response import (
    band_ordering, capital_psi, region_boundary, respond, strategy_region,
    thresholds)
from ransomgame.simulation import playout_records, simulate, write_playouts
from ransomgame.statics import (
    EQUILIBRIUM, check_type_gap, compare_games, comparative_statics,
    has_parameter)
from ransomgame.util import format_number, parallel_map, ransom_to_u

logger = logging.getLogger(__name__)

#: Agreement bound of the simulation oracle, in standard errors.
ORACLE_SE = 4.0
#: Standard errors reported as the nominal agreement band.
NOMINAL_SE = 3.0
#: Parameters swept at fixed ransoms; all others at the equilibrium.
FIXED_R_PARAMETERS = ('c1', 'c2', 'c3', 'c4')

PASSED = 'passed'
FAILED = 'failed'
NOT_APPLICABLE = 'not-applicable'

_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


@dataclass(frozen=True)
class Report(object):
    """Output of one subcommand.

    *columns* and *rows* form the CSV table, *document* the JSON output.
    *error* is raised after the report has been written.

    """
    columns: tuple
    rows: tuple
    document: dict
    summary: str
    default_format: str = 'csv'
    error: object = None


def _table_document(columns, rows, **extra):
    document = dict(extra)
    document['rows'] = [dict(zip(columns, row)) for row in rows]
    return document


def _variants(config):
    """The configured game, preceded by the game without backup when the
    backup game is configured."""
    if config.variant is GameVariant.GAMMA2:
        return (GameVariant.GAMMA1, GameVariant.GAMMA2)
    return (config.variant,)


def cmd_thresholds(config, args):
    """Thresholds, ``Psi`` and region membership at the configured
    ransoms."""
    params = config.params
    columns = ('variant', 'r', 'u', 'discard_below', 'psi_small',
               'psi_large', 'Psi', 'region')
    rows, omegas = [], {}
    for variant in _variants(config):
        part = region_boundary(params, variant)
        omegas[variant.value] = {'omega': part.omega,
                                 'residual': part.residual,
                                 'unique': part.unique}
        for r in config.thresholds.r:
            small, large = thresholds(params, variant, r)
            rows.append((variant.value, r, float(ransom_to_u(r)),
                         r / params.p, float(small), float(large),
                         float(capital_psi(params, variant, r)),
                         part.region(r).label(variant)))
    summary = '; '.join('%s: omega=%s' % (name, format_number(item['omega']))
                        for name, item in omegas.items())
    return Report(columns, tuple(rows),
                  _table_document(columns, rows, omega=omegas), summary)


def _equilibria(config):
    return {t: find_equilibrium(config.params, config.variant, t,
                                config.search)
            for t in HackerType}


def cmd_best_response(config, args):
    """Victim actions at one ransom, or the strategy-region boundaries over
    the configured grid with ``--sweep``."""
    params, variant = config.params, config.variant
    if args.sweep:
        columns = ('r', 'u', 'lower_D', 'upper_P', 'region')
        ransoms = config.grid.ransoms()

        def boundary(r):
            region = strategy_region(params, variant, r)
            return (float(r), float(ransom_to_u(r)), region.lower_D,
                    region.upper_P, region.region.label(variant))

        rows = tuple(parallel_map(boundary, ransoms, config.workers))
        return Report(columns, rows, _table_document(columns, rows),
                      '%s: %d boundary points' % (variant.value, len(rows)))

    results = _equilibria(config)
    r = config.best_response.r
    if r is None:
        r = results[HackerType.A1].smallest_maximizer
    x = np.asarray(config.best_response.x, dtype=float)
    codes = respond(params, variant, x, r)
    columns = ('x', 'action')
    rows = tuple((float(xi), variant.actions[c].value)
                 for xi, c in zip(x, np.atleast_1d(codes)))
    region = strategy_region(params, variant, r)
    bands = band_ordering(params, variant,
                          results[HackerType.A1].smallest_maximizer,
                          results[HackerType.A2].smallest_maximizer)

    def band(item):
        return {'lower_D': item.lower_D, 'upper_P': item.upper_P,
                'region': item.region.label(variant)}

    document = _table_document(
        columns, rows, variant=variant.value, r=r, strategy=band(region),
        band_ordering={'A1': band(bands.a1), 'A2': band(bands.a2),
                       'holds': bands.holds})
    summary = '%s r=%s: discard below %s, %s' % (
        variant.value, format_number(r), format_number(region.lower_D),
        'pay up to %s' % format_number(region.upper_P)
        if region.upper_P is not None else 'never pay up front')
    return Report(columns, rows, document, summary)


def cmd_equilibrium(config, args):
    """Pure equilibria of both hacker types and the ransom ordering."""
    results = _equilibria(config)
    ordering = check_ordering(config.params, config.variant, config.search)
    columns = ('variant', 'hacker_type', 'ransom', 'launched', 'payoff',
               'max_eta', 'argmax_set')
    rows = tuple((res.variant.value, res.hacker_type.value, res.ransom,
                  res.launched, res.payoff, res.max_eta,
                  ';'.join(format_number(r) for r in res.argmax_set))
                 for res in results.values())
    document = {
        'results': [res.to_dict() for res in results.values()],
        'ordering': ordering.to_dict(),
    }
    summary = '; '.join(
        '%s r*=%s %s payoff=%s' % (
            res.hacker_type.value, format_number(res.ransom),
            'launched' if res.launched else 'not launched',
            format_number(res.payoff))
        for res in results.values())
    return Report(columns, rows, document,
                  '%s: %s' % (config.variant.value, summary), 'json')


def cmd_payoff_curve(config, args):
    """``eta - c4`` of both hacker types over the configured grid."""
    columns, omega, rows = (), None, []
    for hacker_type in HackerType:
        curve = payoff_curve(config.params, config.variant, hacker_type,
                             config.grid, config.workers)
        columns, omega = curve.columns, curve.omega
        rows.extend(curve.rows())
    rows = tuple(rows)
    return Report(columns, rows,
                  _table_document(columns, rows, omega=omega),
                  '%s: %d curve points, omega=%s'
                  % (config.variant.value, len(rows), format_number(omega)))


def _expected_hacker_payoff(params, variant, r, hacker_type):
    if hacker_type is not None:
        return eta(params, variant, hacker_type, r) - params.c4
    return (params.p * eta(params, variant, HackerType.A1, r) +
            (1.0 - params.p) * eta(params, variant, HackerType.A2, r) -
            params.c4)


def cmd_simulate(config, args):
    """Monte Carlo playouts compared against the closed-form payoff."""
    params, variant = config.params, config.variant
    block = config.simulation
    r = block.r
    if r is None:
        hacker_type = block.hacker_type or HackerType.A1
        r = find_equilibrium(params, variant, hacker_type,
                             config.search).smallest_maximizer
    summary = simulate(params, variant, r, block.n, config.seed,
                       block.hacker_type, block.chunk_size, config.workers)
    expected = _expected_hacker_payoff(params, variant, r, block.hacker_type)
    nominal = summary.agrees_with(expected, NOMINAL_SE)
    agrees = summary.agrees_with(expected, ORACLE_SE)

    if args.dump:
        if block.n > block.dump_limit:
            logger.warning('dumping the first %d of %d playouts',
                           block.dump_limit, block.n)
        records = playout_records(params, variant, r, block.n, config.seed,
                                  block.hacker_type, block.chunk_size)
        write_playouts(args.dump, itertools.islice(records,
                                                   block.dump_limit))

    document = summary.to_dict()
    document.update({
        'variant': variant.value,
        'r': r,
        'seed': config.seed,
        'hacker_type': (None if block.hacker_type is None
                        else block.hacker_type.value),
        'expected_hacker_payoff': expected,
        'within_3_se': nominal,
        'within_4_se': agrees,
    })
    columns = ('variant', 'r', 'n', 'mean_hacker_payoff', 'std_error',
               'expected_hacker_payoff', 'within_3_se')
    rows = ((variant.value, r, summary.n, summary.mean_hacker_payoff,
             summary.std_error, expected, nominal),)
    error = None
    if not agrees:
        error = OracleFailure(
            'simulated hacker payoff %r +- %r disagrees with %r by more '
            'than %g standard errors' % (summary.mean_hacker_payoff,
                                         summary.std_error, expected,
                                         ORACLE_SE))
    text = '%s r=%s: simulated %s +- %s, expected %s (%s)' % (
        variant.value, format_number(r),
        format_number(summary.mean_hacker_payoff),
        format_number(summary.std_error), format_number(expected),
        'agrees' if nominal else 'DISAGREES')
    return Report(columns, rows, document, text, 'json', error)


def _status(violations):
    return PASSED if violations == 0 else FAILED


def _check(name, status, violations=0, detail=None):
    return {'name': name, 'status': status, 'violations': violations,
            'detail': detail or {}}


def _statics_checks(config):
    params, variant, search = config.params, config.variant, config.search
    checks = []
    for parameter, values in config.check.sweeps.items():
        if not has_parameter(params, parameter) or \
                parameter in ('c3', 'p3') and variant is GameVariant.GAMMA1:
            checks.append(_check(
                'statics:%s' % parameter, NOT_APPLICABLE,
                detail={'reason': 'not a game parameter'}))
            continue
        points = (config.check.fixed_r if parameter in FIXED_R_PARAMETERS
                  else (EQUILIBRIUM,))
        for at in points:
            for hacker_type in HackerType:
                report = comparative_statics(
                    params, variant, parameter, sorted(values), hacker_type,
                    at, search, config.workers)
                checks.append(_check(
                    'statics:%s@%s/%s' % (parameter, at, hacker_type.value),
                    _status(report.violations), report.violations,
                    report.to_dict()))
    return checks


def cmd_check(config, args):
    """Property suite over the configured game."""
    params, variant = config.params, config.variant
    r_grid = config.check.compare_r.ransoms()
    checks = []

    gap = check_type_gap(params, variant, r_grid)
    checks.append(_check('a2_earns_more', _status(gap.negative),
                         gap.negative, gap.to_dict()))
    identity = int(gap.identity_error > 1e-12)
    checks.append(_check('type_gap_identity', _status(identity), identity,
                         {'identity_error': gap.identity_error}))
    if gap.shape_violations is None:
        checks.append(_check('type_gap_shape', NOT_APPLICABLE))
    else:
        checks.append(_check('type_gap_shape',
                             _status(gap.shape_violations),
                             gap.shape_violations))

    checks.extend(_statics_checks(config))

    ordering = check_ordering(params, variant, config.search)
    if ordering.holds is None:
        checks.append(_check('ordering', NOT_APPLICABLE,
                             detail=ordering.to_dict()))
    else:
        checks.append(_check('ordering', _status(ordering.violations),
                             ordering.violations, ordering.to_dict()))

    if not params.has_backup:
        checks.append(_check('game_comparison', NOT_APPLICABLE,
                             detail={'reason': 'no p3 and c3'}))
    else:
        comparison = compare_games(params, r_grid, config.search,
                                   config.workers)
        status = (_status(comparison.violations) if comparison.precondition
                  else NOT_APPLICABLE)
        checks.append(_check('game_comparison', status,
                             comparison.violations, comparison.to_dict()))

    n = config.check.quadrature_n
    for r in config.check.fixed_r:
        for hacker_type in HackerType:
            closed = eta(params, variant, hacker_type, r)
            integrated = quadrature_eta(params, variant, hacker_type, r, n)
            tol = 4.0 * (params.b1 + params.b2 + r) / n + 1e-12
            bad = int(abs(closed - integrated) > tol)
            checks.append(_check(
                'quadrature@%s/%s' % (format_number(r), hacker_type.value),
                _status(bad), bad,
                {'closed_form': closed, 'quadrature': integrated,
                 'tolerance': tol}))

    columns = ('name', 'status', 'violations')
    rows = tuple((c['name'], c['status'], c['violations']) for c in checks)
    failed = [c['name'] for c in checks if c['status'] == FAILED]
    counts = {status: sum(c['status'] == status for c in checks)
              for status in (PASSED, FAILED, NOT_APPLICABLE)}
    document = {'variant': variant.value, 'counts': counts,
                'checks': checks}
    error = None
    if failed:
        error = PropertyViolation('%d checks failed: %s'
                                  % (len(failed), ', '.join(failed)),
                                  document)
    summary = '%s: %d passed, %d failed, %d not applicable' % (
        variant.value, counts[PASSED], counts[FAILED],
        counts[NOT_APPLICABLE])
    return Report(columns, rows, document, summary, 'json', error)


COMMANDS = {
    'thresholds': cmd_thresholds,
    'best-response': cmd_best_response,
    'equilibrium': cmd_equilibrium,
    'payoff-curve': cmd_payoff_curve,
    'simulate': cmd_simulate,
    'check': cmd_check,
}


def render(report, fmt):
    """Return *report* as CSV or JSON text."""
    if fmt == 'json':
        return json.dumps(report.document, indent=2, sort_keys=True) + '\n'
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([value if isinstance(value, str) else
                         format_number(value) for value in row])
    return buffer.getvalue()


def emit(report, fmt, path=None):
    text = render(report, fmt)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, 'w', newline='') as handle:
            handle.write(text)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='ransomgame',
        description='Solve and check the ransomware Bayesian games.',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('--config', metavar='PATH',
                        help='JSON run configuration')
    parser.add_argument('--seed', type=int,
                        help='override the configured seed')
    parser.add_argument('--out', metavar='PATH',
                        help='write the output here instead of stdout')
    parser.add_argument('--format', choices=('csv', 'json'),
                        help='output format (default depends on the command)')
    parser.add_argument('--set', dest='overrides', action='append',
                        default=[], metavar='PATH=VALUE',
                        help='override one configuration field')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for debug output')

    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True
    commands.add_parser('thresholds', help=cmd_thresholds.__doc__)
    best = commands.add_parser('best-response',
                               help=cmd_best_response.__doc__)
    best.add_argument('--sweep', action='store_true',
                      help='emit strategy-region boundaries over the grid')
    commands.add_parser('equilibrium', help=cmd_equilibrium.__doc__)
    commands.add_parser('payoff-curve', help=cmd_payoff_curve.__doc__)
    sim = commands.add_parser('simulate', help=cmd_simulate.__doc__)
    sim.add_argument('--dump', metavar='PATH',
                     help='write every playout as CSV')
    commands.add_parser('check', help=cmd_check.__doc__)
    return parser


def main(argv=None):
    """Run the command line interface and return its exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=_LEVELS[min(args.verbose, 2)],
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        config = load_config(args.config, args.overrides, args.seed)
        report = COMMANDS[args.command](config, args)
        emit(report, args.format or report.default_format, args.out)
        print(report.summary, file=sys.stderr)
        if report.error is not None:
            raise report.error
    except RansomGameError as exc:
        print('error: %s' % exc, file=sys.stderr)
        return exc.exit_code
    return 0
