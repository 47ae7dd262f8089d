import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("speclab", deadline=None, max_examples=60)
settings.load_profile("speclab")


@pytest.fixture
def rng():
    return np.random.default_rng(20110211)


def random_perm(rng, n):
    return rng.permutation(n).astype(np.int64)


def cycle_type_by_walking(perm):
    """Independent cycle type: plain Python walk over the mapping."""
    seen = set()
    lengths = []
    for start in range(len(perm)):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = int(perm[x])
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


ACCEPTANCE = []  # (criterion, ok, detail), filled by test_acceptance.py


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
