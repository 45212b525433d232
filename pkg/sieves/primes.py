"""Prime tables and exact primality, indexed from zero: p_0 = 2, p_1 = 3, ...

Every other module asks this one for p_m. Most prime libraries count from
one; nth_prime(0) here is 2.
"""

import logging
import math
import threading

import numpy as np

from .errors import DomainError, ResourceError

log = logging.getLogger(__name__)

# Largest index nth_prime will grow to (p_m near 1.1e9).
PRIME_INDEX_CAP = 55000000
# Largest value the shared table is sieved to; covers p_m for every m under the index cap.
PRIME_LIMIT_CAP = 1200000000
INITIAL_LIMIT = 1 << 16


def _sieve_array(limit):
    """Return a numpy array of all primes <= limit (plain Eratosthenes)."""
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


class PrimeTable(object):
    """Ascending primes up to limit; immutable once built.

    primes[0] is 2 and every prime <= limit is listed, so indexing the
    table with m gives p_m directly.
    """
    def __init__(self, limit, primes):
        self.limit = limit
        self.primes = primes
        self.primes.flags.writeable = False

    def __len__(self):
        return len(self.primes)

    def __getitem__(self, m):
        return int(self.primes[m])

    def __contains__(self, n):
        i = int(np.searchsorted(self.primes, n))
        return i < len(self.primes) and int(self.primes[i]) == n

    def tolist(self):
        return self.primes.tolist()

    def index_of(self, p):
        """Return m with p_m = p, or None if p is not in the table."""
        i = int(np.searchsorted(self.primes, p))
        if i < len(self.primes) and int(self.primes[i]) == p:
            return i
        return None


def primes_up_to(limit):
    """Build the PrimeTable of all primes <= limit."""
    if limit < 2:
        raise DomainError('primes_up_to needs limit >= 2, got {}'.format(limit))
    return PrimeTable(limit, _sieve_array(limit))


class _GrowingTable(object):
    """Process-wide prime table that is replaced, never mutated, on growth.

    Readers take a reference to the current PrimeTable; growth swaps in a
    larger one under the lock.
    """
    def __init__(self, limit=INITIAL_LIMIT):
        self._lock = threading.Lock()
        self._table = primes_up_to(limit)

    @property
    def table(self):
        return self._table

    def ensure_limit(self, limit):
        table = self._table
        if table.limit >= limit:
            return table
        if limit > PRIME_LIMIT_CAP:
            raise ResourceError(
                'prime table up to {} exceeds the cap {}'.format(limit, PRIME_LIMIT_CAP))
        with self._lock:
            if self._table.limit < limit:
                new_limit = min(max(limit, 2 * self._table.limit), PRIME_LIMIT_CAP)
                log.debug('Growing prime table to %d...', new_limit)
                self._table = primes_up_to(new_limit)
            return self._table

    def ensure_count(self, count):
        if count > PRIME_INDEX_CAP:
            raise ResourceError(
                'prime index {} exceeds the table cap {}'.format(count - 1, PRIME_INDEX_CAP))
        table = self._table
        while len(table) < count:
            n = max(count, 6)
            # Rosser's bound: p_n < n (ln n + ln ln n) for n >= 6.
            estimate = int(n * (math.log(n) + math.log(math.log(n)))) + 1
            table = self.ensure_limit(min(max(estimate, 2 * table.limit), PRIME_LIMIT_CAP))
        return table


_shared = _GrowingTable()


def nth_prime(m):
    """Return p_m, counting from p_0 = 2."""
    if m < 0:
        raise DomainError('prime index must be >= 0, got {}'.format(m))
    return _shared.ensure_count(m + 1)[m]


def first_primes(count):
    """Return p_0 .. p_{count-1} as a read-only int64 numpy array."""
    if count <= 0:
        return np.empty(0, dtype=np.int64)
    return _shared.ensure_count(count).primes[:count]


def primes_through(limit):
    """Return every prime <= limit as a read-only int64 numpy array."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    primes = _shared.ensure_limit(limit).primes
    return primes[:int(np.searchsorted(primes, limit, side='right'))]


def is_prime(n):
    """Exact primality by table lookup, or trial division past the table."""
    if n < 2:
        return False
    table = _shared.table
    if n <= table.limit:
        return n in table
    for p in primes_through(math.isqrt(n)).tolist():
        if n % p == 0:
            return False
    return True


def next_prime(n):
    """Return the smallest prime > n."""
    candidate = max(n + 1, 2)
    while not is_prime(candidate):
        candidate += 1
    return candidate


def prime_below_sqrt(x):
    """Return the largest prime p with p * p < x, or None if there is none."""
    root = math.isqrt(x - 1) if x > 1 else 0
    primes = primes_through(root)
    if not len(primes):
        return None
    return int(primes[-1])


def prime_index(p):
    """Return m with p_m = p."""
    if not is_prime(p):
        raise DomainError('{} is not prime'.format(p))
    table = _shared.ensure_limit(p)
    return table.index_of(p)


def prime_count(limit):
    """Return the number of primes <= limit."""
    return len(primes_through(limit))
