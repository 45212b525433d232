"""The minimum function n_{m,1}, its jump points, and effective ranges.

n_{m,1} is the smallest element above 1 of N_m. It never decreases in m;
the primes p_m at which it strictly increases are the jump points.
"""

import itertools
import logging
from collections import namedtuple

import numpy as np

from .errors import DomainError
from .helpers.segment_helper import prime_bitmap
from .offset_sieve import (
    DEFAULT_SEGMENT_SIZE,
    DOUBLE,
    QUAD,
    effective_cutoff,
    first_survivor,
    survivors_between,
)
from .primes import first_primes, nth_prime, prime_count

log = logging.getLogger(__name__)

MinSeqEntry = namedtuple('MinSeqEntry', ['m', 'p_m', 'n_m1', 'is_jump', 'flagged'])
JumpPoint = namedtuple('JumpPoint', ['m', 'p_m', 'new_min', 'jump_value'])
EffectiveRange = namedtuple('EffectiveRange', ['m', 'cutoff', 'members', 'all_prime'])
Assumption41Row = namedtuple('Assumption41Row', [
    'm', 'p_m', 'cutoff', 'n_m1', 'nonempty', 'within_bound', 'margin', 'solitary_primes',
])
Assumption41Report = namedtuple('Assumption41Report', [
    'rows', 'violations', 'min_margin', 'min_margin_ratio', 'solitary_total',
])
JumpIdentityReport = namedtuple('JumpIdentityReport', ['checked', 'violations'])
InvariantReport = namedtuple('InvariantReport', ['system', 'm_max', 'checked', 'violations'])


def search_bound(m, system):
    """No survivor above this is looked for at depth m: p_{m+1}^2 + c."""
    return nth_prime(m + 1) ** 2 + system.cutoff_constant


def iter_minimum_function(system, segment_size=DEFAULT_SEGMENT_SIZE):
    """Yield MinSeqEntry for m = 0, 1, 2, ... without end.

    The previous minimum is carried forward; only when p_m removes it is a
    forward scan needed. A scan that reaches search_bound without finding a
    survivor yields a flagged entry with n_m1 = None.
    """
    previous = None
    scan_from = 2
    for m in itertools.count():
        p = nth_prime(m)
        if previous is not None and not system.removed_by(previous, p):
            yield MinSeqEntry(m, p, previous, False, False)
            continue
        if previous is not None:
            scan_from = previous + 1
        bound = search_bound(m, system)
        current = first_survivor(scan_from, bound, m, system, segment_size=segment_size)
        if current is None:
            log.warning('No survivor of N_%d (%s) up to %d; entry flagged.', m, system.name, bound)
            scan_from = max(scan_from, bound + 1)
            previous = None
            yield MinSeqEntry(m, p, None, False, True)
            continue
        is_jump = previous is not None and current > previous
        previous = current
        yield MinSeqEntry(m, p, current, is_jump, False)


def minimum_function(system, m_max, segment_size=DEFAULT_SEGMENT_SIZE):
    """Entries of the minimum function for m = 0 .. m_max."""
    if m_max < 0:
        raise DomainError('m_max must be >= 0, got {}'.format(m_max))
    return list(itertools.islice(iter_minimum_function(system, segment_size), m_max + 1))


def _jumps(entries):
    jumps = []
    for before, entry in zip(entries, entries[1:]):
        if entry.is_jump:
            jumps.append(JumpPoint(entry.m, entry.p_m, entry.n_m1, before.n_m1))
    return jumps


def jump_points(system, m_max, segment_size=DEFAULT_SEGMENT_SIZE):
    """All jumps with m <= m_max; jump_value is the removed minimum n_{m-1,1}."""
    if m_max < 1:
        return []
    return _jumps(minimum_function(system, m_max, segment_size))


def effective_range(m, system, segment_size=DEFAULT_SEGMENT_SIZE):
    """Survivors of N_m in (p_m, p_{m+1}^2 - c].

    all_prime records whether z + o was found prime for every member z and
    offset o, checked against a plain prime bitmap.
    """
    if m < 0:
        raise DomainError('m must be >= 0, got {}'.format(m))
    cutoff = effective_cutoff(m, system)
    members = survivors_between(nth_prime(m) + 1, cutoff, m, system, segment_size=segment_size)
    return EffectiveRange(m, cutoff, members, all_offsets_prime(members, system))


def all_offsets_prime(values, system):
    """True iff v + o is prime for every v in values and every offset o."""
    if not values:
        return True
    lo = values[0]
    bits = prime_bitmap(lo, values[-1] + system.max_offset)
    index = np.asarray(values, dtype=np.int64) - lo
    return all(bool(bits[index + o].all()) for o in system.offsets)


def solitary_primes(lo, hi):
    """Primes p with lo < p < hi and p + 2 composite."""
    if hi - lo < 2:
        return []
    bits = prime_bitmap(lo + 1, hi + 1)
    hits = np.flatnonzero(bits[:-2] & ~bits[2:])
    return (hits + lo + 1).tolist()


def check_assumption_41(m_max, segment_size=DEFAULT_SEGMENT_SIZE):
    """Check N_m meets (p_m, p_{m+1}^2 - 4] and n_{m,1} <= p_{m+1}^2 - 4 (double sieve).

    Also reports the margin p_{m+1}^2 - 4 - n_{m,1} and, at each jump, how
    many solitary primes lie between the old and the new minimum.
    """
    rows = []
    violations = []
    previous = None
    for entry in minimum_function(DOUBLE, m_max, segment_size):
        cutoff = effective_cutoff(entry.m, DOUBLE)
        n = entry.n_m1
        if n is not None and n > entry.p_m:
            nonempty = n <= cutoff
        else:
            nonempty = first_survivor(entry.p_m + 1, cutoff, entry.m, DOUBLE,
                                      segment_size=segment_size) is not None
        within_bound = n is not None and n <= cutoff
        solitary = 0
        if entry.is_jump and previous is not None:
            solitary = len(solitary_primes(previous, n))
        row = Assumption41Row(entry.m, entry.p_m, cutoff, n, nonempty, within_bound,
                              cutoff - n if n is not None else None, solitary)
        rows.append(row)
        if not (nonempty and within_bound):
            violations.append(row)
        previous = n
    margins = [(row.margin, row.cutoff) for row in rows if row.margin is not None]
    min_margin = min(margin for margin, _ in margins) if margins else None
    min_ratio = min(margin / cutoff for margin, cutoff in margins if cutoff > 0) if margins else None
    log.info('Checked %d rows; %d violations.', len(rows), len(violations))
    return Assumption41Report(rows, violations, min_margin, min_ratio,
                              sum(row.solitary_primes for row in rows))


def check_jump_identity(m_max, segment_size=DEFAULT_SEGMENT_SIZE):
    """Double sieve: every jump at m removes n_{m-1,1} = p_m, and p_m + 2 is prime."""
    jumps = jump_points(DOUBLE, m_max, segment_size)
    violations = []
    for jump in jumps:
        bits = prime_bitmap(jump.p_m, jump.p_m + 2)
        if jump.jump_value != jump.p_m or not bits[2]:
            violations.append(jump)
    return JumpIdentityReport(len(jumps), violations)


def check_minimum_invariants(system, m_max, segment_size=DEFAULT_SEGMENT_SIZE):
    """Coprimality, lower bound, monotonicity and jump consistency of n_{m,1}.

    Violations are (m, check name) pairs. For the quad system, jump values
    above 5 are also checked to be 11 mod 30.
    """
    entries = minimum_function(system, m_max, segment_size)
    primes = first_primes(m_max + 2)
    violations = []
    previous = None
    for entry in entries:
        n = entry.n_m1
        if n is None:
            violations.append((entry.m, 'flagged'))
            previous = None
            continue
        sieved = primes[:entry.m + 1]
        for o in system.offsets:
            if np.any((n + o) % sieved == 0):
                violations.append((entry.m, 'coprime+{}'.format(o)))
        if n < int(primes[entry.m + 1]):
            violations.append((entry.m, 'lower_bound'))
        if previous is not None:
            if n < previous:
                violations.append((entry.m, 'monotone'))
            if entry.is_jump != (n > previous):
                violations.append((entry.m, 'jump_flag'))
            if system == QUAD and entry.is_jump and previous > 5 and previous % 30 != 11:
                violations.append((entry.m, 'jump_mod_30'))
        previous = n
    return InvariantReport(system.name, m_max, len(entries), violations)


def m_for_prime_limit(p_max):
    """Largest m with p_m <= p_max."""
    count = prime_count(p_max)
    if not count:
        raise DomainError('no prime <= {}'.format(p_max))
    return count - 1
