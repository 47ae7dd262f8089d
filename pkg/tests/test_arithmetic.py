from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st
from sympy import factorint

from speclab.arithmetic import (
    ArithmeticProgression as AP,
    PrimeSpec,
    admissible_check,
    factor_against,
    refine_progression,
    solve_alignment,
)
from speclab.errors import AdmissibilityError, NoSolutionError
from speclab.perm import from_cycle_type

SPECS = [PrimeSpec([2, 3, 5]), PrimeSpec([2, 5, 11]), PrimeSpec([3, 7, 13, 97], [2, 1, 3, 1])]


# ---------------------------------------------------------------- PrimeSpec

def test_prime_spec_validates():
    with pytest.raises(ValueError):
        PrimeSpec([2, 4])
    with pytest.raises(ValueError):
        PrimeSpec([3, 2])
    with pytest.raises(ValueError):
        PrimeSpec([])
    with pytest.raises(ValueError):
        PrimeSpec([2, 3], [1])
    with pytest.raises(ValueError):
        PrimeSpec([2], [0])
    assert PrimeSpec([2, 3], [10, 10]).moduli == (1024, 59049)


# ------------------------------------------------------------ factor_against

def _oracle_factor(n, spec):
    f = factorint(n)
    hits = tuple(sorted((p, e) for p, e in f.items() if p in spec.primes))
    residual = n
    for p, e in hits:
        residual //= p**e
    return hits, residual


@pytest.mark.parametrize(
    "n, spec, hits, q",
    [
        (20, PrimeSpec([2, 5, 11]), ((2, 2), (5, 1)), 1),
        (1, PrimeSpec([2, 3]), (), 1),
        (7, PrimeSpec([2, 3, 11]), (), 7),
    ],
)
def test_factor_examples(n, spec, hits, q):
    f = factor_against(n, spec)
    assert f.hits == hits and f.residual == q
    assert (hits, q) == _oracle_factor(n, spec)


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        factor_against(0, SPECS[0])


@pytest.mark.parametrize("spec", SPECS)
def test_factor_round_trip_to_1e5(spec):
    for n in range(1, 10**5 + 1):
        f = factor_against(n, spec)
        assert f.reassemble() == n
        assert all(f.residual % p for p in spec.primes)


@given(st.integers(1, 10**12), st.sampled_from(SPECS))
def test_factor_matches_sympy(n, spec):
    f = factor_against(n, spec)
    assert (f.hits, f.residual) == _oracle_factor(n, spec)


# ------------------------------------------------------------ solve_alignment

def _search(a, b):
    return [n for n in range(b) if (a * n) % b == 1 % b]


@pytest.mark.parametrize(
    "a, b, residue, n0, m0", [(2, 3, 2, 2, 1), (1, 1, 0, 1, 0), (6, 5, 1, 1, 1)]
)
def test_alignment_examples(a, b, residue, n0, m0):
    sol = solve_alignment(a, b)
    assert sol.progression == AP(residue, b)
    assert _search(a, b) == [residue]
    assert sol.n_min == n0
    assert sol.companion(n0) == m0


def test_alignment_b_one_companion_is_n_minus_one():
    sol = solve_alignment(1, 1)
    assert [sol.companion(n) for n in range(1, 6)] == [0, 1, 2, 3, 4]


def test_alignment_requires_coprime():
    with pytest.raises(NoSolutionError):
        solve_alignment(6, 4)


@given(st.integers(1, 500), st.integers(1, 500))
def test_alignment_identity_exact(a, b):
    if gcd(a, b) != 1:
        with pytest.raises(NoSolutionError):
            solve_alignment(a, b)
        return
    sol = solve_alignment(a, b)
    members = sol.members(20)
    assert members[0] == sol.n_min >= 1
    for n in members:
        assert a * n - b * sol.companion(n) == 1
        assert sol.companion(n) >= 0
    assert set(_search(a, b)) == {sol.progression.residue}


# -------------------------------------------------------- refine_progression

def test_refine_examples():
    assert refine_progression(AP(2, 3), AP(0, 4)) == AP(8, 12)
    assert refine_progression(AP(3, 7), AP(3, 7)) == AP(3, 7)
    assert refine_progression(AP(0, 2), AP(1, 4)).empty


progressions = st.builds(
    lambda m, r: AP(r % m, m), st.integers(1, 60), st.integers(0, 10**6)
) | st.just(AP.none())

LIMIT = 10**4


def _members(ap):
    return {n for n in range(LIMIT) if n in ap}


@given(progressions, progressions)
def test_refine_is_intersection(a, b):
    got = refine_progression(a, b)
    assert _members(got) == _members(a) & _members(b)


@given(progressions, progressions)
def test_refine_commutes(a, b):
    assert _members(refine_progression(a, b)) == _members(refine_progression(b, a))


@given(progressions, progressions, progressions)
def test_refine_associates(a, b, c):
    left = refine_progression(refine_progression(a, b), c)
    right = refine_progression(a, refine_progression(b, c))
    assert _members(left) == _members(right)


@given(progressions)
def test_refine_idempotent(a):
    assert refine_progression(a, a) == a


def test_progression_enumeration():
    ap = AP(3, 5)
    it = iter(ap)
    assert [next(it) for _ in range(4)] == [3, 8, 13, 18]
    assert ap.take(3, start=9) == [13, 18, 23]
    assert list(AP.none()) == [] and AP.none().take(3) == []
    with pytest.raises(ValueError):
        AP(5, 5)


# ----------------------------------------------------------- admissible_check

def test_admissible_examples():
    assert admissible_check({0: 1}).coefficients == {0: 1}
    poly = admissible_check({1: Fraction(1, 2), 3: Fraction(1, 2)})
    assert sum(poly.coefficients.values()) == 1
    with pytest.raises(AdmissibilityError, match="5/6"):
        admissible_check({0: Fraction(1, 2), 1: Fraction(1, 3)})
    with pytest.raises(AdmissibilityError, match="negative"):
        admissible_check({0: Fraction(3, 2), 1: Fraction(-1, 2)})


def test_admissible_polynomial_of_permutation_is_doubly_stochastic():
    poly = admissible_check({0: Fraction(1, 4), 1: Fraction(1, 4), 2: Fraction(1, 2)})
    M = poly(from_cycle_type([3, 4]))
    assert M.is_doubly_stochastic()
    # on the 3-cycle, P^0, P^1, P^2 hit distinct columns
    assert M[0, 0] == Fraction(1, 4) and M[0, 1] == Fraction(1, 4) and M[0, 2] == Fraction(1, 2)
