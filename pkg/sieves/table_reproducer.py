"""Recompute printed tables and diff them against their fixtures."""

import logging
import os

from .constellations import decade_histogram, gap_table, life_span_table
from .errors import FixtureParseError
from .helpers.fixture_helper import diff_fixture, parse_fixture
from .minimum_function import minimum_function
from .offset_sieve import DEFAULT_SEGMENT_SIZE, DOUBLE, OffsetSystem, survives, survivors_prefix
from .primes import is_prime

log = logging.getLogger(__name__)

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures')


def _as_tuple(value):
    return value if isinstance(value, tuple) else (value,)


def _gap_sane(values):
    former, gap = values
    return (former % 2 == 1 and is_prime(former) and is_prime(former + 2)
            and (gap is None or gap % 2 == 0))


def _min_table_sane(values):
    m, p_m, n_m1 = values
    return is_prime(p_m) and n_m1 > 1 and n_m1 % 2 == 1


def _lifespan_sane(values):
    p_l, p_h = values
    return is_prime(p_l) and is_prime(p_h) and p_h < p_l


def _decade_sane(values):
    decade, count = values
    return decade >= 0 and count >= 0


def _listing_sane(values):
    return all(v > 0 and (v == 1 or v % 2 == 1) for v in _as_tuple(values[3]))


SANITY_CHECKS = {
    'min_table': _min_table_sane,
    'gap_head': _gap_sane,
    'gap_tail': _gap_sane,
    'decade_counts': _decade_sane,
    'lifespan_table': _lifespan_sane,
    'n_listings': _listing_sane,
}
TABLE_IDS = tuple(SANITY_CHECKS)
TABLE_WIDTHS = {
    'min_table': 3,
    'gap_head': 2,
    'gap_tail': 2,
    'decade_counts': 2,
    'lifespan_table': 2,
    'n_listings': 4,
}


class TableReproducer(object):
    """Recompute one printed table at a time and diff it with its fixture."""
    def __init__(self, fixtures_dir=FIXTURES_DIR, segment_size=DEFAULT_SEGMENT_SIZE, threads=1):
        self.fixtures_dir = fixtures_dir
        self.segment_size = segment_size
        self.threads = threads

    def fixture_path(self, table_id):
        return os.path.join(self.fixtures_dir, table_id + '.txt')

    def reproduce(self, table_id, fixture_path=None):
        """Return the FixtureDiff of table_id against its fixture file."""
        if table_id not in TABLE_IDS:
            raise ValueError('unknown table {!r}; choose from {}'.format(table_id, ', '.join(TABLE_IDS)))
        fixture = parse_fixture(fixture_path or self.fixture_path(table_id))
        for entry in fixture.entries:
            if len(entry.values) != TABLE_WIDTHS[table_id]:
                raise FixtureParseError(fixture.path, entry.lineno, '{} rows have {} fields, got {}'.format(
                    table_id, TABLE_WIDTHS[table_id], len(entry.values)))
        log.info('Reproducing %s (%d entries)...', table_id, len(fixture.entries))
        compute = getattr(self, '_' + table_id)
        diff = diff_fixture(fixture, compute([entry.values for entry in fixture.entries]),
                            SANITY_CHECKS[table_id])
        for item in diff.mismatches:
            log.warning('%s line %d: printed %s, computed %s.',
                        table_id, item.lineno, item.expected, item.computed)
        for item in diff.suspect:
            log.warning('%s line %d: printed %s fails a sanity check; computed %s.',
                        table_id, item.lineno, item.expected, item.computed)
        return diff

    def reproduce_all(self):
        return [self.reproduce(table_id) for table_id in TABLE_IDS]

    def _min_table(self, expected):
        m_max = max(values[0] for values in expected)
        return [(e.m, e.p_m, e.n_m1) for e in minimum_function(DOUBLE, m_max, self.segment_size)]

    def _gap_head(self, expected):
        limit = max(former + (gap or 0) for former, gap in expected)
        return gap_table(limit, self.segment_size, self.threads)[:len(expected)]

    def _gap_tail(self, expected):
        limit = max(former for former, _ in expected)
        return gap_table(limit, self.segment_size, self.threads)[-len(expected):]

    def _decade_counts(self, expected):
        decades = [values[0] for values in expected]
        return decade_histogram(min(decades), max(decades), self.segment_size, self.threads)

    def _lifespan_table(self, expected):
        limit = max(values[0] for values in expected)
        return [(span.dead_prime, span.birth_prime)
                for span in life_span_table(limit, self.segment_size, self.threads)]

    def _n_listings(self, expected):
        computed = []
        for system_name, depth, kind, values in expected:
            system = OffsetSystem.from_name(system_name)
            wanted = _as_tuple(values)
            if kind == 'prefix':
                got = tuple(survivors_prefix(len(wanted), depth, system, self.segment_size))
            else:
                got = tuple(v for v in wanted if survives(v, depth, system))
            if not isinstance(values, tuple) and len(got) == 1:
                got = got[0]
            computed.append((system_name, depth, kind, got))
        return computed
