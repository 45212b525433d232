"""Split integer ranges into segments and map work over them in order."""

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..primes import primes_through

log = logging.getLogger(__name__)


def prime_bitmap(lo, hi):
    """Plain segmented Eratosthenes: bits[i] is True iff lo + i is prime.

    Knows nothing about offset systems, so it can serve as the oracle the
    offset sieves are checked against.
    """
    bits = np.ones(hi - lo + 1, dtype=bool)
    if lo < 2:
        bits[:2 - lo] = False
    for p in primes_through(math.isqrt(hi)).tolist():
        start = max(p * p, -(-lo // p) * p)
        if start <= hi:
            bits[start - lo::p] = False
    return bits


class SegmentHelper(object):
    """Cut [lo, hi] into segments and run a function over them.

    threads=1 runs in this process; threads=0 uses one worker per CPU.
    Results always come back in segment order, whatever the worker count.
    """
    def __init__(self, segment_size, threads=1):
        if segment_size < 1:
            raise ValueError('segment_size must be positive, got {}'.format(segment_size))
        self.segment_size = segment_size
        self.threads = threads

    @property
    def workers(self):
        return self.threads or os.cpu_count() or 1

    def bounds(self, lo, hi):
        bounds = []
        start = lo
        while start <= hi:
            end = min(start + self.segment_size - 1, hi)
            bounds.append((start, end))
            start = end + 1
        return bounds

    def map(self, func, items):
        """Apply func to every item; results keep the order of items."""
        items = list(items)
        if self.workers == 1 or len(items) < 2:
            return [func(item) for item in items]
        log.info('Running %d segments on %d workers...', len(items), self.workers)
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(func, items))
