"""Build offset sieves, follow their minimum functions and check printed tables.

Reports go to stdout as CSV (default) or JSON; progress goes to stderr.
Exit codes: 0 success, 1 verification failure, 2 usage, 3 resource cap.
"""

import argparse
import logging
import os
import sys
from collections import namedtuple

from sieves.constellations import (
    decade_histogram,
    gap_frequencies,
    gap_table,
    life_span,
    life_span_table,
    quadruplets,
    theorem_71_holds,
    twin_formers,
    verify_theorem_71,
)
from sieves.errors import DomainError, FixtureParseError, ResourceError
from sieves.helpers.report_helper import ReportHelper
from sieves.minimum_function import (
    check_assumption_41,
    check_jump_identity,
    check_minimum_invariants,
    effective_range,
    jump_points,
    m_for_prime_limit,
    minimum_function,
)
from sieves.offset_sieve import (
    DEFAULT_SEGMENT_SIZE,
    NAMED_OFFSETS,
    OffsetSystem,
    effective_cutoff,
    period_elements,
    period_summary,
    survivors_between,
)
from sieves.table_reproducer import TABLE_IDS, TableReproducer

log = logging.getLogger('sieve_toolkit')

NUMERIC_CEILING = 10 ** 9

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

RunConfig = namedtuple('RunConfig', [
    'system', 'depth', 'lo', 'hi', 'segment_size', 'threads', 'fmt', 'fixture',
])

SurvivorRow = namedtuple('SurvivorRow', ['n'])
ElementRow = namedtuple('ElementRow', ['depth', 'element'])
EffectiveRow = namedtuple('EffectiveRow', ['m', 'cutoff', 'z'])
FormerRow = namedtuple('FormerRow', ['former'])
GapFrequencyRow = namedtuple('GapFrequencyRow', ['gap', 'count'])
QuadRow = namedtuple('QuadRow', ['start', 'gap_to_next'])
LifeSpanRow = namedtuple('LifeSpanRow', ['p_l', 'p_h', 'l', 'h', 'lower', 'upper'])
Theorem71Row = namedtuple('Theorem71Row', ['value', 'is_jump_value', 'is_quadruplet', 'difference'])
ViolationRow = namedtuple('ViolationRow', ['m', 'check'])
DiffSummaryRow = namedtuple('DiffSummaryRow', ['table', 'matches', 'mismatches', 'suspect', 'total'])
DiffRow = namedtuple('DiffRow', ['table', 'index', 'line', 'status', 'expected', 'computed'])


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


def set_up_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--format', choices=('csv', 'json'), default='csv', dest='fmt',
        help='Report format on stdout.'
    )
    common.add_argument(
        '--segment-size', type=int,
        default=_env_int('SIEVE_SEGMENT_SIZE', DEFAULT_SEGMENT_SIZE),
        help='Values per sieved segment. (Default from SIEVE_SEGMENT_SIZE.)'
    )
    common.add_argument(
        '--threads', type=int, default=_env_int('SIEVE_THREADS', 1),
        help='Worker processes for segment work; 0 means one per CPU.'
    )
    common.add_argument(
        '--allow-large', action='store_true',
        help='Acknowledge ranges above 10^9 and decades above 10^8.'
    )
    common.add_argument(
        '-v', '--verbose', action='count', default=0,
        help='Log progress to stderr (-vv for debug output).'
    )

    system = argparse.ArgumentParser(add_help=False)
    system.add_argument(
        '--system', choices=sorted(NAMED_OFFSETS),
        help='Named offset system (default: double).'
    )
    system.add_argument(
        '--offsets',
        help='Custom comma-separated even offsets starting at 0; overrides --system.'
    )

    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    sub = commands.add_parser('sieve', parents=[common, system], help='Survivors of N_depth in [lo, hi].')
    sub.add_argument('--depth', type=int, required=True)
    sub.add_argument('--lo', type=int, default=1)
    sub.add_argument('--hi', type=int, required=True)

    sub = commands.add_parser('period', parents=[common, system], help='Period and survivor count of N_depth.')
    sub.add_argument('--depth', type=int, required=True)
    sub.add_argument('--elements', action='store_true', help='List the survivors of one period instead.')

    for name, text in (('minfunc', 'Minimum function n_{m,1} for m <= m-max.'),
                       ('jumps', 'Jump points for m <= m-max.')):
        sub = commands.add_parser(name, parents=[common, system], help=text)
        sub.add_argument('--m-max', type=int, required=True)

    sub = commands.add_parser('effective', parents=[common, system], help='Effective range of depth m.')
    sub.add_argument('--m', type=int, required=True)

    for name, text in (('twins', 'Twin-prime former numbers in [lo, hi].'),
                       ('quads', 'Prime quadruplet starts in [lo, hi].')):
        sub = commands.add_parser(name, parents=[common], help=text)
        sub.add_argument('--lo', type=int, default=1)
        sub.add_argument('--hi', type=int, required=True)

    sub = commands.add_parser('gaps', parents=[common], help='Twin formers up to limit with gaps.')
    sub.add_argument('--limit', type=int, required=True)
    sub.add_argument('--frequencies', action='store_true', help='Count each gap size instead.')

    sub = commands.add_parser('decades', parents=[common], help='Quadruplets per decade.')
    sub.add_argument('--from', type=int, default=3, dest='d_from')
    sub.add_argument('--to', type=int, default=7, dest='d_to')

    sub = commands.add_parser('lifespan', parents=[common], help='Birth and death primes of quadruplets.')
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument('--z', type=int, help='One quadruplet start.')
    group.add_argument('--limit', type=int, help='Every quadruplet start up to limit.')

    sub = commands.add_parser('verify', parents=[common, system], help='Run a verification suite.')
    sub.add_argument('target', choices=('theorem71', 'assumption41', 'jump-identity', 'invariants'))
    sub.add_argument('--limit', type=int, default=10 ** 6, help='Value bound (theorem71).')
    sub.add_argument('--m-max', type=int, help='Largest depth to check.')
    sub.add_argument('--p-max', type=int, default=10 ** 4,
                     help='Check every m with p_m <= p-max when --m-max is not given.')

    sub = commands.add_parser('reproduce', parents=[common], help='Diff a printed table with its fixture.')
    sub.add_argument('table', choices=TABLE_IDS + ('all',))
    sub.add_argument('--fixture', help='Fixture file (default: fixtures/<table>.txt).')
    return parser


def _system(args):
    if getattr(args, 'offsets', None):
        try:
            offsets = [int(token) for token in args.offsets.split(',')]
        except ValueError:
            raise DomainError('offsets must be integers, got {!r}'.format(args.offsets))
        return OffsetSystem.custom(offsets)
    return OffsetSystem.from_name(getattr(args, 'system', None) or 'double')


def _check_ceiling(args, *values):
    for value in values:
        if value is not None and value > NUMERIC_CEILING and not args.allow_large:
            raise ResourceError('{} is above the ceiling {}; pass --allow-large'.format(
                value, NUMERIC_CEILING))


def _m_max(args):
    return args.m_max if args.m_max is not None else m_for_prime_limit(args.p_max)


def run_sieve(args, config, report):
    values = survivors_between(config.lo, config.hi, config.depth, config.system,
                               config.segment_size, config.threads)
    report.emit('sieve', SurvivorRow._fields, [SurvivorRow(n) for n in values],
                system=config.system.name, depth=config.depth)
    return EXIT_OK


def run_period(args, config, report):
    if args.elements:
        rows = [ElementRow(config.depth, n) for n in period_elements(config.depth, config.system)]
        report.emit('period_elements', ElementRow._fields, rows, system=config.system.name)
    else:
        summary = period_summary(config.depth, config.system)
        report.emit('period', summary._fields, [summary], system=config.system.name)
    return EXIT_OK


def run_minfunc(args, config, report):
    entries = minimum_function(config.system, args.m_max, config.segment_size)
    report.emit('minfunc', entries[0]._fields, entries, system=config.system.name)
    return EXIT_OK


def run_jumps(args, config, report):
    jumps = jump_points(config.system, args.m_max, config.segment_size)
    fields = ('m', 'p_m', 'new_min', 'jump_value')
    report.emit('jumps', fields, jumps, system=config.system.name)
    return EXIT_OK


def run_effective(args, config, report):
    if args.m >= 0:
        _check_ceiling(args, effective_cutoff(args.m, config.system))
    result = effective_range(args.m, config.system, config.segment_size)
    rows = [EffectiveRow(result.m, result.cutoff, z) for z in result.members]
    report.emit('effective', EffectiveRow._fields, rows,
                system=config.system.name, all_prime=result.all_prime)
    return EXIT_OK if result.all_prime else EXIT_VERIFY


def run_twins(args, config, report):
    rows = [FormerRow(p) for p in twin_formers(config.lo, config.hi, config.segment_size, config.threads)]
    report.emit('twins', FormerRow._fields, rows)
    return EXIT_OK


def run_gaps(args, config, report):
    if args.frequencies:
        rows = [GapFrequencyRow(gap, count)
                for gap, count in gap_frequencies(args.limit, config.segment_size, config.threads)]
        report.emit('gap_frequencies', GapFrequencyRow._fields, rows)
        return EXIT_OK
    rows = gap_table(args.limit, config.segment_size, config.threads)
    report.emit('gaps', ('former', 'gap'), rows)
    return EXIT_OK


def run_quads(args, config, report):
    rows = [QuadRow(record.start, record.gap_to_next)
            for record in quadruplets(config.lo, config.hi, config.segment_size, config.threads)]
    report.emit('quads', QuadRow._fields, rows)
    return EXIT_OK


def run_decades(args, config, report):
    rows = decade_histogram(args.d_from, args.d_to, config.segment_size, config.threads,
                            allow_large=args.allow_large)
    report.emit('decades', ('decade', 'count'), rows)
    return EXIT_OK


def run_lifespan(args, config, report):
    spans = [life_span(args.z)] if args.z is not None else \
        life_span_table(args.limit, config.segment_size, config.threads)
    rows = [LifeSpanRow(s.dead_prime, s.birth_prime, s.l, s.h, s.lower, s.upper) for s in spans]
    report.emit('lifespan', LifeSpanRow._fields, rows)
    return EXIT_OK


def _verify_theorem71(args, config, report):
    result = verify_theorem_71(args.limit, config.segment_size, config.threads)
    jump_set = set(result.jump_values)
    start_set = set(result.quadruplet_starts)
    values = sorted(jump_set | start_set)
    rows = []
    for i, value in enumerate(values):
        rows.append(Theorem71Row(value, value in jump_set, value in start_set,
                                 value - values[i - 1] if i else None))
    ok = theorem_71_holds(result)
    report.emit('theorem71', Theorem71Row._fields, rows,
                limit=result.limit,
                jump_values=result.jump_values,
                quadruplet_starts=result.quadruplet_starts,
                difference={
                    'jumps_not_quadruplets': result.jumps_not_quadruplets,
                    'quadruplets_not_jumps': result.quadruplets_not_jumps,
                },
                differences=result.differences,
                spacing_violations=result.spacing_violations,
                flagged=result.flagged,
                ok=ok)
    return EXIT_OK if ok else EXIT_VERIFY


def _verify_assumption41(args, config, report):
    result = check_assumption_41(_m_max(args), config.segment_size)
    report.emit('assumption41', result.rows[0]._fields, result.rows,
                violations=len(result.violations),
                min_margin=result.min_margin,
                min_margin_ratio=result.min_margin_ratio,
                solitary_total=result.solitary_total,
                ok=not result.violations)
    return EXIT_VERIFY if result.violations else EXIT_OK


def _verify_jump_identity(args, config, report):
    result = check_jump_identity(_m_max(args), config.segment_size)
    report.emit('jump_identity', ('m', 'p_m', 'new_min', 'jump_value'), result.violations,
                checked=result.checked, ok=not result.violations)
    return EXIT_VERIFY if result.violations else EXIT_OK


def _verify_invariants(args, config, report):
    result = check_minimum_invariants(config.system, _m_max(args), config.segment_size)
    rows = [ViolationRow(m, check) for m, check in result.violations]
    report.emit('invariants', ViolationRow._fields, rows,
                system=result.system, checked=result.checked, ok=not rows)
    return EXIT_VERIFY if rows else EXIT_OK


VERIFIERS = {
    'theorem71': _verify_theorem71,
    'assumption41': _verify_assumption41,
    'jump-identity': _verify_jump_identity,
    'invariants': _verify_invariants,
}

# Targets that are only defined for one offset system.
FIXED_SYSTEMS = {
    'theorem71': 'quad',
    'assumption41': 'double',
    'jump-identity': 'double',
}


def run_verify(args, config, report):
    fixed = FIXED_SYSTEMS.get(args.target)
    if fixed and (args.offsets or args.system not in (None, fixed)):
        raise DomainError('verify {} runs on the {} system only'.format(args.target, fixed))
    return VERIFIERS[args.target](args, config, report)


def _diff_rows(diff):
    rows = []
    for status, items in (('mismatch', diff.mismatches), ('suspect', diff.suspect)):
        for item in items:
            rows.append(DiffRow(diff.table, item.index, item.lineno, status,
                                item.expected, item.computed))
    return rows


def run_reproduce(args, config, report):
    reproducer = TableReproducer(segment_size=config.segment_size, threads=config.threads)
    if args.table == 'all':
        diffs = reproducer.reproduce_all()
    else:
        diffs = [reproducer.reproduce(args.table, config.fixture)]
    summaries = [DiffSummaryRow(d.table, d.matches, len(d.mismatches), len(d.suspect),
                                d.matches + len(d.mismatches) + len(d.suspect)) for d in diffs]
    details = [row._asdict() for d in diffs for row in _diff_rows(d)]
    failed = any(d.mismatches for d in diffs)
    report.emit('reproduce', DiffSummaryRow._fields, summaries, details=details, ok=not failed)
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {
    'sieve': run_sieve,
    'period': run_period,
    'minfunc': run_minfunc,
    'jumps': run_jumps,
    'effective': run_effective,
    'twins': run_twins,
    'gaps': run_gaps,
    'quads': run_quads,
    'decades': run_decades,
    'lifespan': run_lifespan,
    'verify': run_verify,
    'reproduce': run_reproduce,
}


def build_config(args):
    if args.segment_size < 1:
        raise DomainError('--segment-size must be positive, got {}'.format(args.segment_size))
    if args.threads < 0:
        raise DomainError('--threads must be >= 0, got {}'.format(args.threads))
    return RunConfig(
        system=_system(args) if hasattr(args, 'system') else None,
        depth=getattr(args, 'depth', None),
        lo=getattr(args, 'lo', None),
        hi=getattr(args, 'hi', None),
        segment_size=args.segment_size,
        threads=args.threads,
        fmt=args.fmt,
        fixture=getattr(args, 'fixture', None),
    )


def main(argv=None):
    parser = set_up_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        stream=sys.stderr,
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)],
        format='%(levelname)s %(name)s: %(message)s',
        force=True,
    )

    try:
        config = build_config(args)
        log.info('Running %s...', args.command)
        _check_ceiling(args, config.hi, getattr(args, 'limit', None), getattr(args, 'z', None))
        report = ReportHelper(config.fmt, sys.stdout)
        return COMMANDS[args.command](args, config, report)
    except ResourceError as error:
        print('Resource limit: {}'.format(error), file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, FixtureParseError) as error:
        print('Error: {}'.format(error), file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
