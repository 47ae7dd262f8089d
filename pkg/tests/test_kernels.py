import numpy as np
import pytest
from hypothesis import given, strategies as st

from speclab import _kernels as K
from speclab import perm as P

from conftest import cycle_type_by_walking

perms = st.integers(0, 200).flatmap(
    lambda n: st.permutations(list(range(n))).map(lambda p: np.array(p, dtype=np.int64))
)

needs_numba = pytest.mark.skipif(not K.HAS_NUMBA, reason="numba backend disabled")


@given(perms)
def test_numpy_labels_are_cycle_minima(perm):
    labels = K.cycle_labels_numpy(perm)
    for x in range(perm.size):
        orbit = {x}
        y = int(perm[x])
        while y != x:
            orbit.add(y)
            y = int(perm[y])
        assert labels[x] == min(orbit)


@needs_numba
@given(perms)
def test_backends_agree_on_labels(perm):
    np.testing.assert_array_equal(K.cycle_labels_numba(perm), K.cycle_labels_numpy(perm))


@needs_numba
@given(perms, st.integers(0, 10**6))
def test_backends_agree_on_powers(perm, n):
    np.testing.assert_array_equal(K.perm_power_numba(perm, n), K.perm_power_numpy(perm, n))


@given(perms, st.integers(0, 40))
def test_power_matches_repeated_composition(perm, n):
    expected = np.arange(perm.size)
    for _ in range(n):
        expected = perm[expected]
    np.testing.assert_array_equal(P.power(perm, n), expected)


@given(perms)
def test_cycle_type_matches_walk(perm):
    assert P.cycle_type(perm) == cycle_type_by_walking(perm)


def test_huge_exponent_reduced_by_order():
    perm = P.from_cycle_type([3, 4, 5])
    n = 10**30 + 7
    np.testing.assert_array_equal(P.power(perm, n), P.power(perm, n % 60))


def test_negative_power_is_inverse():
    perm = P.from_cycle_type([2, 5])
    np.testing.assert_array_equal(P.compose(P.power(perm, -3), P.power(perm, 3)), P.identity(7))


def test_tensor_enumeration_is_lexicographic():
    a = np.array([1, 0], dtype=np.int64)
    b = np.array([1, 2, 0], dtype=np.int64)
    t = P.tensor(a, b)
    for x in range(2):
        for y in range(3):
            assert t[x * 3 + y] == a[x] * 3 + b[y]


def test_as_perm_rejects_non_bijection():
    with pytest.raises(ValueError):
        P.as_perm([0, 0, 1])
