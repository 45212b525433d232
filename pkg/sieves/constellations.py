"""Twin primes, prime quadruplets {z, z+2, z+6, z+8} and their life spans.

Everything here is found by a plain prime bitmap, never by the offset
sieves, so it can be used to check what the sieves claim.
"""

import itertools
import logging
from collections import Counter, namedtuple

import numpy as np

from .errors import DomainError, ResourceError
from .helpers.segment_helper import SegmentHelper, prime_bitmap
from .minimum_function import iter_minimum_function
from .offset_sieve import DEFAULT_SEGMENT_SIZE, DOUBLE, QUAD, effective_cutoff, survivors_between
from .primes import is_prime, next_prime, nth_prime, prime_below_sqrt, prime_index

log = logging.getLogger(__name__)

DECADE_FLOOR = 3
DECADE_CEILING = 8

ConstellationRecord = namedtuple('ConstellationRecord', ['start', 'offsets', 'gap_to_next'])
GapEntry = namedtuple('GapEntry', ['former', 'gap'])
DecadeCount = namedtuple('DecadeCount', ['decade', 'count'])
LifeSpan = namedtuple('LifeSpan', [
    'z', 'dead_prime', 'birth_prime', 'l', 'h', 'lower', 'upper',
])
Theorem71Report = namedtuple('Theorem71Report', [
    'limit', 'jump_values', 'quadruplet_starts', 'jumps_not_quadruplets',
    'quadruplets_not_jumps', 'differences', 'spacing_violations', 'flagged',
])


def _starts_in_segment(job):
    """Starts z in [lo, hi] with z + o prime for every offset o."""
    lo, hi, offsets = job
    bits = prime_bitmap(lo, hi + offsets[-1])
    size = hi - lo + 1
    hits = bits[:size].copy()
    for o in offsets[1:]:
        hits &= bits[o:o + size]
    return (np.flatnonzero(hits) + lo).tolist()


def _count_in_segment(job):
    return len(_starts_in_segment(job))


def constellation_starts(lo, hi, offsets, segment_size=DEFAULT_SEGMENT_SIZE, threads=1):
    """Ascending z in [lo, hi] with z + o prime for all o in offsets."""
    if hi < lo:
        return []
    helper = SegmentHelper(segment_size, threads)
    jobs = [(start, end, tuple(offsets)) for start, end in helper.bounds(max(lo, 1), hi)]
    return list(itertools.chain.from_iterable(helper.map(_starts_in_segment, jobs)))


def twin_formers(lo, hi, segment_size=DEFAULT_SEGMENT_SIZE, threads=1):
    """Former numbers p in [lo, hi] of twin primes (p, p + 2)."""
    if hi < lo:
        raise DomainError('twin_formers needs lo <= hi, got [{}, {}]'.format(lo, hi))
    return constellation_starts(lo, hi, DOUBLE.offsets, segment_size, threads)


def _with_gaps(starts):
    return [(z, nxt - z) for z, nxt in zip(starts, starts[1:])] + \
        ([(starts[-1], None)] if starts else [])


def gap_table(limit, segment_size=DEFAULT_SEGMENT_SIZE, threads=1):
    """Twin formers <= limit with the distance to the next former.

    The last former has gap None; it is not extrapolated past limit.
    """
    if limit < 5:
        raise DomainError('gap_table needs limit >= 5, got {}'.format(limit))
    formers = twin_formers(2, limit, segment_size, threads)
    return [GapEntry(former, gap) for former, gap in _with_gaps(formers)]


def gap_frequencies(limit, segment_size=DEFAULT_SEGMENT_SIZE, threads=1):
    """(gap, how often it occurs) between successive twin formers <= limit."""
    counts = Counter(entry.gap for entry in gap_table(limit, segment_size, threads)
                     if entry.gap is not None)
    return sorted(counts.items())


def quadruplets(lo, hi, segment_size=DEFAULT_SEGMENT_SIZE, threads=1):
    """Every z in [lo, hi] with z, z+2, z+6, z+8 all prime."""
    if hi < lo:
        raise DomainError('quadruplets needs lo <= hi, got [{}, {}]'.format(lo, hi))
    starts = constellation_starts(lo, hi, QUAD.offsets, segment_size, threads)
    return [ConstellationRecord(z, QUAD.offsets, gap) for z, gap in _with_gaps(starts)]


def decade_histogram(d_lo, d_hi, segment_size=DEFAULT_SEGMENT_SIZE, threads=1, allow_large=False):
    """Number of quadruplet starts in each open interval (10^d, 10^(d+1))."""
    if not DECADE_FLOOR <= d_lo <= d_hi:
        raise DomainError('decades need {} <= from <= to, got {}..{}'.format(
            DECADE_FLOOR, d_lo, d_hi))
    if d_hi > DECADE_CEILING:
        if not allow_large:
            raise ResourceError('decade {} is above the ceiling {}; pass --allow-large'.format(
                d_hi, DECADE_CEILING))
        log.warning('Counting up to 10^%d, above the usual ceiling of 10^%d.',
                    d_hi + 1, DECADE_CEILING + 1)
    helper = SegmentHelper(segment_size, threads)
    counts = []
    for d in range(d_lo, d_hi + 1):
        jobs = [(start, end, QUAD.offsets)
                for start, end in helper.bounds(10 ** d + 1, 10 ** (d + 1) - 1)]
        count = sum(helper.map(_count_in_segment, jobs))
        log.info('Got %d quadruplets in (10^%d, 10^%d).', count, d, d + 1)
        counts.append(DecadeCount(d, count))
    return counts


def is_quadruplet_start(z):
    return all(is_prime(z + o) for o in QUAD.offsets)


def life_span(z):
    """Birth prime p_h (largest prime below sqrt(z + 10)) and death prime p_l = z."""
    if not is_quadruplet_start(z):
        raise DomainError('{} does not start a prime quadruplet'.format(z))
    birth = prime_below_sqrt(z + QUAD.cutoff_constant)
    return LifeSpan(
        z=z,
        dead_prime=z,
        birth_prime=birth,
        l=prime_index(z),
        h=prime_index(birth),
        lower=birth ** 2 - QUAD.cutoff_constant,
        upper=next_prime(birth) ** 2 - QUAD.cutoff_constant,
    )


def life_span_table(limit, segment_size=DEFAULT_SEGMENT_SIZE, threads=1):
    return [life_span(record.start) for record in quadruplets(1, limit, segment_size, threads)]


def effective_range_quadruplets(lo, hi, segment_size=DEFAULT_SEGMENT_SIZE):
    """Quad effective-range members in (lo, hi], from the offset sieve.

    Depth m covers (p_m, p_{m+1}^2 - 10]; consecutive cutoffs split (lo, hi]
    into disjoint windows, each sieved once at its own depth.
    """
    members = []
    floor = -QUAD.cutoff_constant
    for m in itertools.count(1):
        cutoff = effective_cutoff(m, QUAD)
        window_lo = max(lo, floor, nth_prime(m)) + 1
        window_hi = min(hi, cutoff)
        if window_lo <= window_hi:
            members.extend(survivors_between(window_lo, window_hi, m, QUAD, segment_size))
        if cutoff >= hi:
            return members
        floor = cutoff


def verify_theorem_71(limit, segment_size=DEFAULT_SEGMENT_SIZE, threads=1):
    """Compare quad-sieve jump values >= 5 with quadruplet starts, both <= limit.

    A jump value is the minimum n_{m-1,1} removed at a jump point p_m. The
    minimum function is followed until it passes limit, since later jumps
    can only remove larger values.
    """
    jump_values = []
    flagged = []
    previous = None
    for entry in iter_minimum_function(QUAD, segment_size):
        if entry.p_m > limit:
            break
        if entry.flagged:
            flagged.append(entry.m)
            continue
        if entry.is_jump and 5 <= previous <= limit:
            jump_values.append(previous)
        previous = entry.n_m1
        if previous > limit:
            break
    starts = [record.start for record in quadruplets(1, limit, segment_size, threads)]
    differences = [b - a for a, b in zip(jump_values, jump_values[1:])]
    spacing_violations = []
    for i, diff in enumerate(differences, start=1):
        if (i == 1 and diff != 6) or (i > 1 and diff < 30):
            spacing_violations.append((i, diff))
    jump_set, start_set = set(jump_values), set(starts)
    log.info('Got %d jump values and %d quadruplet starts up to %d.',
             len(jump_values), len(starts), limit)
    return Theorem71Report(
        limit=limit,
        jump_values=jump_values,
        quadruplet_starts=starts,
        jumps_not_quadruplets=sorted(jump_set - start_set),
        quadruplets_not_jumps=sorted(start_set - jump_set),
        differences=differences,
        spacing_violations=spacing_violations,
        flagged=flagged,
    )


def theorem_71_holds(report):
    return not (report.jumps_not_quadruplets or report.quadruplets_not_jumps
                or report.spacing_violations or report.flagged)
