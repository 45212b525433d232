"""Offset sieves over the natural numbers.

An OffsetSystem {o_0 = 0, o_1, ...} makes the sieve operator of a prime p
remove every n with n + o = 0 (mod p) for some offset o. Depth m means
p_0 .. p_m have been applied; the survivors form N_m.
"""

import logging
import math
from collections import namedtuple

import numpy as np

from .errors import DomainError, ResourceError
from .helpers.segment_helper import SegmentHelper
from .primes import first_primes, nth_prime, primes_through

log = logging.getLogger(__name__)

DEFAULT_SEGMENT_SIZE = 1 << 22
ENUMERATION_CAP = 10 ** 9
# Values plus offsets must stay inside int64.
MAX_VALUE = (1 << 63) - 1 - 1024

NAMED_OFFSETS = {
    'single': (0,),
    'double': (0, 2),
    'quad': (0, 2, 6, 8),
}


def _check_offsets(offsets):
    if not offsets or offsets[0] != 0:
        raise DomainError('offsets must start at 0, got {}'.format(list(offsets)))
    for low, high in zip(offsets, offsets[1:]):
        if high <= low:
            raise DomainError('offsets must be strictly increasing, got {}'.format(list(offsets)))
    for o in offsets:
        if o < 0 or o % 2:
            raise DomainError('offsets must be even and non-negative, got {}'.format(o))
    for p in primes_through(offsets[-1] + 1).tolist():
        if len({-o % p for o in offsets}) == p:
            raise DomainError(
                'offsets {} remove every residue class mod {}'.format(list(offsets), p))


class OffsetSystem(namedtuple('OffsetSystem', ['name', 'offsets'])):
    """An admissible offset set; houses the sieve operator of each prime."""
    __slots__ = ()

    def __new__(cls, name, offsets):
        offsets = tuple(int(o) for o in offsets)
        _check_offsets(offsets)
        return super().__new__(cls, name, offsets)

    @classmethod
    def from_name(cls, name):
        try:
            return cls(name, NAMED_OFFSETS[name])
        except KeyError:
            raise DomainError('unknown offset system {!r}'.format(name))

    @classmethod
    def custom(cls, offsets, name=None):
        offsets = tuple(offsets)
        return cls(name or 'custom' + ''.join('-{}'.format(o) for o in offsets), offsets)

    @property
    def max_offset(self):
        return self.offsets[-1]

    @property
    def cutoff_constant(self):
        """c in the effective-range cutoff p_{m+1}^2 - c."""
        return self.max_offset + 2

    def removed_by(self, n, p):
        """True if the sieve operator of p removes n."""
        return any((n + o) % p == 0 for o in self.offsets)


SINGLE = OffsetSystem.from_name('single')
DOUBLE = OffsetSystem.from_name('double')
QUAD = OffsetSystem.from_name('quad')

PeriodSummary = namedtuple('PeriodSummary', ['depth', 'period', 'survivor_count'])


def removed_residues(p, system):
    """Residues mod p removed by the sieve operator of p; collisions merge."""
    return frozenset(-o % p for o in system.offsets)


def _check_value(n, system):
    if n > MAX_VALUE - system.max_offset:
        raise DomainError('{} is outside the 64-bit value range'.format(n))


def survives(n, depth, system):
    """True iff n is in N_depth, i.e. no p_i (i <= depth) removes it."""
    if n <= 0:
        raise DomainError('survives is defined for n >= 1, got {}'.format(n))
    if depth < 0:
        raise DomainError('depth must be >= 0, got {}'.format(depth))
    _check_value(n, system)
    primes = first_primes(depth + 1)
    for o in system.offsets:
        if np.any((n + o) % primes == 0):
            return False
    return True


class SurvivorSegment(object):
    """Bitmap of N_depth restricted to the closed interval [lo, hi]."""
    def __init__(self, lo, hi, depth, system, bits):
        self.lo = lo
        self.hi = hi
        self.depth = depth
        self.system = system
        self.bits = bits

    def __len__(self):
        return self.hi - self.lo + 1

    def contains(self, n):
        return self.lo <= n <= self.hi and bool(self.bits[n - self.lo])

    def values(self):
        return (np.flatnonzero(self.bits) + self.lo).tolist()

    def count(self):
        return int(np.count_nonzero(self.bits))

    def first(self):
        """Smallest survivor in the segment, or None."""
        hits = np.flatnonzero(self.bits)
        return int(hits[0]) + self.lo if len(hits) else None

    def restrict(self, lo, hi):
        if not self.lo <= lo <= hi <= self.hi:
            raise DomainError('[{}, {}] is not inside [{}, {}]'.format(lo, hi, self.lo, self.hi))
        bits = self.bits[lo - self.lo:hi - self.lo + 1].copy()
        return SurvivorSegment(lo, hi, self.depth, self.system, bits)


def strike(bits, lo, primes, system):
    """Clear every position of bits (bits[i] is n = lo + i) removed by primes.

    Primes shorter than the segment are struck by striding once per removed
    residue class. Longer primes hit each class at most once, so they are
    handled as one vectorized scatter per offset.
    """
    size = len(bits)
    split = int(np.searchsorted(primes, size))
    for p in primes[:split].tolist():
        for r in removed_residues(p, system):
            bits[(r - lo) % p::p] = False
    large = primes[split:]
    if len(large):
        for o in system.offsets:
            first = (-(lo + o)) % large
            bits[first[first < size]] = False
    return bits


def sieve_segment(lo, hi, depth, system, segment_cap=DEFAULT_SEGMENT_SIZE):
    """Sieve [lo, hi] to depth and return the SurvivorSegment."""
    if not 1 <= lo <= hi:
        raise DomainError('sieve_segment needs 1 <= lo <= hi, got [{}, {}]'.format(lo, hi))
    if depth < 0:
        raise DomainError('depth must be >= 0, got {}'.format(depth))
    if hi - lo + 1 > segment_cap:
        raise ResourceError('segment [{}, {}] exceeds the cap of {} values'.format(
            lo, hi, segment_cap))
    _check_value(hi, system)
    bits = np.ones(hi - lo + 1, dtype=bool)
    strike(bits, lo, first_primes(depth + 1), system)
    return SurvivorSegment(lo, hi, depth, system, bits)


def _segment_values(job):
    lo, hi, depth, system = job
    return sieve_segment(lo, hi, depth, system, segment_cap=hi - lo + 1).values()


def survivors_between(lo, hi, depth, system, segment_size=DEFAULT_SEGMENT_SIZE, threads=1):
    """Ascending survivors of N_depth in [lo, hi], sieved segment by segment."""
    if hi < lo:
        return []
    helper = SegmentHelper(segment_size, threads)
    jobs = [(start, end, depth, system) for start, end in helper.bounds(lo, hi)]
    values = []
    for chunk in helper.map(_segment_values, jobs):
        values.extend(chunk)
    return values


def first_survivor(lo, bound, depth, system, segment_size=DEFAULT_SEGMENT_SIZE):
    """Smallest survivor of N_depth in [lo, bound], or None.

    Segments start small and double up to segment_size, since the answer
    is usually close to lo.
    """
    size = min(4096, segment_size)
    start = lo
    while start <= bound:
        end = min(start + size - 1, bound)
        found = sieve_segment(start, end, depth, system, segment_cap=size).first()
        if found is not None:
            return found
        start = end + 1
        size = min(size * 2, segment_size)
    return None


def survivors_prefix(count, depth, system, segment_size=DEFAULT_SEGMENT_SIZE):
    """The first count survivors of N_depth, ascending from 1."""
    values = []
    start = 1
    size = min(4096, segment_size)
    while len(values) < count:
        end = start + size - 1
        values.extend(sieve_segment(start, end, depth, system, segment_cap=size).values())
        start = end + 1
        size = min(size * 2, segment_size)
    return values[:count]


def period_summary(depth, system):
    """Exact period and survivor count of N_depth."""
    if depth < 0:
        raise DomainError('depth must be >= 0, got {}'.format(depth))
    primes = first_primes(depth + 1).tolist()
    period = math.prod(primes)
    survivor_count = math.prod(p - len(removed_residues(p, system)) for p in primes)
    return PeriodSummary(depth, period, survivor_count)


def period_elements(depth, system, cap=ENUMERATION_CAP):
    """Survivors of N_depth in [1, period], ascending.

    Lifted one prime at a time: the survivors of N_i are a + k P_{i-1} for
    survivors a of N_{i-1} and 0 <= k < p_i, minus the classes p_i removes.
    """
    summary = period_summary(depth, system)
    if summary.period > cap:
        raise ResourceError('period {} exceeds the enumeration cap {}'.format(
            summary.period, cap))
    elements = np.ones(1, dtype=np.int64)
    modulus = 1
    for p in first_primes(depth + 1).tolist():
        lifted = (elements[np.newaxis, :] + modulus * np.arange(p, dtype=np.int64)[:, np.newaxis]).ravel()
        keep = np.ones(len(lifted), dtype=bool)
        for o in system.offsets:
            keep &= (lifted + o) % p != 0
        elements = np.sort(lifted[keep])
        modulus *= p
    log.debug('Enumerated %d elements of N_%d (%s).', len(elements), depth, system.name)
    return elements.tolist()


def effective_cutoff(m, system):
    """p_{m+1}^2 - c, the upper end of the effective range of depth m."""
    return nth_prime(m + 1) ** 2 - system.cutoff_constant
