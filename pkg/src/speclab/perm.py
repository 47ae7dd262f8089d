"""Permutations of ``{0, ..., n-1}`` as int64 index arrays.

``perm[x]`` is the image of ``x``.  Composition follows ``(f o g)(x) = f(g(x))``
everywhere in the package, so ``compose(f, g) == f[g]``.
"""
import numpy as np

from speclab import _config
from speclab._kernels import cycle_labels, cycle_lengths, perm_power
from speclab.errors import CapExceededError

__all__ = [
    "as_perm",
    "check_cap",
    "compose",
    "cycle_labels",
    "cycle_lengths",
    "cycle_type",
    "identity",
    "inverse",
    "is_identity",
    "power",
    "tensor",
    "from_cycle_type",
]


def check_cap(size, what="permutation"):
    cap = _config.max_order()
    if size > cap:
        raise CapExceededError(
            f"{what} on {size} points exceeds the cap of {cap} "
            "(raise SPECLAB_MAX_ORDER to override)"
        )


def as_perm(values):
    perm = np.asarray(values, dtype=np.int64)
    if perm.ndim != 1:
        raise ValueError("a permutation is a 1-d index array")
    seen = np.zeros(perm.size, dtype=bool)
    if perm.size and (perm.min() < 0 or perm.max() >= perm.size):
        raise ValueError("permutation entries out of range")
    seen[perm] = True
    if not seen.all():
        raise ValueError("array is not a bijection")
    return perm


def identity(n):
    return np.arange(n, dtype=np.int64)


def compose(*perms):
    """``compose(f, g, h)(x) == f(g(h(x)))``."""
    out = perms[-1]
    for f in reversed(perms[:-1]):
        out = f[out]
    return out


def inverse(perm):
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.size, dtype=perm.dtype)
    return inv


def power(perm, n):
    """Integer power, negative exponents allowed."""
    if n < 0:
        return perm_power(inverse(perm), -n)
    return perm_power(perm, n)


def is_identity(perm):
    return bool(np.array_equal(perm, np.arange(perm.size)))


def tensor(*perms):
    """Product map on the lexicographically enumerated product space."""
    out = np.zeros(1, dtype=np.int64)
    for p in perms:
        out = (out[:, None] * p.size + p[None, :]).ravel()
    return out


def cycle_type(perm):
    """Sorted cycle lengths."""
    return tuple(sorted(int(x) for x in cycle_lengths(perm)))


def from_cycle_type(lengths):
    """A permutation whose cycles are consecutive blocks of the given lengths."""
    parts = []
    start = 0
    for length in lengths:
        block = np.arange(start, start + length, dtype=np.int64)
        parts.append(np.roll(block, -1))
        start += length
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(parts)
