"""Hot permutation kernels with a numba path and a pure-numpy fallback.

Both paths return identical arrays.  The numba path walks cycles once
(linear time); the numpy path uses pointer doubling and repeated squaring
(``O(n log n)``) but needs nothing beyond numpy.  ``SPECLAB_NUMBA=0`` forces
the fallback even when numba is importable.
"""
import math

import numpy as np

from speclab._config import numba_requested

try:
    if not numba_requested():
        raise ImportError("numba disabled by SPECLAB_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

BACKEND = "numba" if HAS_NUMBA else "numpy"

_INT64_SAFE = 2**62


# ---------------------------------------------------------------- numpy path

def cycle_labels_numpy(perm):
    """Label every point with the smallest point of its cycle."""
    perm = np.asarray(perm, dtype=np.int64)
    labels = np.arange(perm.size, dtype=np.int64)
    jump = perm.copy()
    # after t rounds each label is the min over 2**t consecutive orbit points
    span = 1
    while span < perm.size:
        labels = np.minimum(labels, labels[jump])
        jump = jump[jump]
        span *= 2
    return labels


def perm_power_numpy(perm, n):
    perm = np.asarray(perm, dtype=np.int64)
    result = np.arange(perm.size, dtype=np.int64)
    base = perm.copy()
    while n:
        if n & 1:
            result = base[result]
        n >>= 1
        if n:
            base = base[base]
    return result


# ---------------------------------------------------------------- numba path

if HAS_NUMBA:

    @njit(cache=True)
    def _cycle_labels_nb(perm):
        n = perm.size
        labels = np.full(n, -1, dtype=np.int64)
        for start in range(n):
            if labels[start] >= 0:
                continue
            x = start
            while labels[x] < 0:
                labels[x] = start
                x = perm[x]
        return labels

    @njit(cache=True)
    def _perm_power_nb(perm, n):
        size = perm.size
        out = np.empty(size, dtype=np.int64)
        seen = np.zeros(size, dtype=np.bool_)
        orbit = np.empty(size, dtype=np.int64)
        for start in range(size):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                orbit[length] = x
                length += 1
                x = perm[x]
            shift = n % length
            for i in range(length):
                out[orbit[i]] = orbit[(i + shift) % length]
        return out


def cycle_labels_numba(perm):
    if not HAS_NUMBA:
        raise RuntimeError("numba backend unavailable")
    return _cycle_labels_nb(np.ascontiguousarray(perm, dtype=np.int64))


def perm_power_numba(perm, n):
    if not HAS_NUMBA:
        raise RuntimeError("numba backend unavailable")
    return _perm_power_nb(np.ascontiguousarray(perm, dtype=np.int64), np.int64(n))


# ------------------------------------------------------------------ dispatch

def cycle_labels(perm):
    if HAS_NUMBA:
        return cycle_labels_numba(perm)
    return cycle_labels_numpy(perm)


def cycle_lengths(perm):
    """Cycle lengths, one entry per cycle, ordered by each cycle's smallest point."""
    labels = cycle_labels(perm)
    counts = np.bincount(labels, minlength=labels.size)
    return counts[np.flatnonzero(counts)]


def perm_power(perm, n):
    """``perm`` composed with itself ``n >= 0`` times."""
    if n < 0:
        raise ValueError("perm_power expects n >= 0; invert first")
    if n >= _INT64_SAFE:
        lengths = np.unique(cycle_lengths(perm))
        n %= math.lcm(*(int(x) for x in lengths)) if lengths.size else 1
    if HAS_NUMBA and n < _INT64_SAFE:
        return perm_power_numba(perm, n)
    return perm_power_numpy(perm, n)
