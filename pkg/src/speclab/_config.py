"""Environment-driven switches.

``SPECLAB_NUMBA``      set to ``0``/``false``/``no`` to force the pure-numpy kernels.
``SPECLAB_MAX_ORDER``  largest space a permutation may be materialized on (default 10**6).
"""
import os

DEFAULT_MAX_ORDER = 10**6


def numba_requested():
    value = os.environ.get("SPECLAB_NUMBA", "1").strip().lower()
    return value not in ("0", "false", "no", "off")


def max_order():
    raw = os.environ.get("SPECLAB_MAX_ORDER")
    if raw is None or not raw.strip():
        return DEFAULT_MAX_ORDER
    value = int(raw)
    if value < 1:
        raise ValueError(f"SPECLAB_MAX_ORDER must be positive, got {raw!r}")
    return value
