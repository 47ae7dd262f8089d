from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from speclab import perm as P
from speclab.errors import NotCommutingError, SpeclabError
from speclab.gp import quotient_action
from speclab.joining import (
    RationalMatrix,
    adjoint_decompositions,
    graph_disjointness,
    markov_decompose,
    multivalued_graph_check,
    off_diagonal_joining,
    rotation_average,
)


def rot(n, c):
    return (np.arange(n) + c) % n


def sym(M):
    """Same matrix as a sympy Rational matrix (independent arithmetic)."""
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                         for row in M.to_fractions()])


def sym_rotation_average(n, shifts):
    out = sympy.zeros(n, n)
    for c in shifts:
        for x in range(n):
            out[x, (x + c) % n] += sympy.Rational(1, len(shifts))
    return out


# ---------------------------------------------------------- rational matrices

def test_rational_matrix_arithmetic_matches_sympy(rng):
    for _ in range(20):
        n = int(rng.integers(1, 7))
        A = RationalMatrix.from_fractions(
            [[Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 9))) for _ in range(n)] for _ in range(n)])
        B = RationalMatrix.from_fractions(
            [[Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 9))) for _ in range(n)] for _ in range(n)])
        assert sym(A @ B) == sym(A) * sym(B)
        assert sym(A + B) == sym(A) + sym(B)
        assert sym(A - B.scale(Fraction(2, 3))) == sym(A) - sympy.Rational(2, 3) * sym(B)
        assert sym(A.T) == sym(A).T


def test_dump_strings():
    M = rotation_average(3, [0, 1])
    assert M.dump()[0] == ["1/2", "1/2", "0"]


def test_size_cap():
    with pytest.raises(SpeclabError):
        RationalMatrix.identity(1001)


# ------------------------------------------------------------------- markov

def test_permutation_gives_identity():
    J = RationalMatrix.from_perm(rot(5, 2))
    dec = markov_decompose(J.T @ J)
    assert dec.alpha == 1 and dec.Q is None and dec.valuedness == 1


def test_two_rotations_of_z5():
    J = rotation_average(5, [1, 2])
    assert sym(J.T @ J) == sym_rotation_average(5, [1, 2]).T * sym_rotation_average(5, [1, 2])
    dec = markov_decompose(J.T @ J)
    assert dec.alpha == Fraction(1, 2) and dec.valuedness == 2
    # Q = (P1^-1 P2 + P2^-1 P1) / 2 = rotations by +1 and -1
    assert dec.Q == rotation_average(5, [1, -1])
    assert not any(dec.Q.diagonal())


def test_three_rotations_of_z7():
    J = rotation_average(7, [0, 3, 5])
    left, right = adjoint_decompositions(J)
    assert left.alpha == right.alpha == Fraction(1, 3)
    assert left.valuedness == right.valuedness == 3


def test_non_constant_diagonal_rejected():
    M = RationalMatrix.from_fractions([[1, 0, 0], [0, Fraction(1, 2), Fraction(1, 2)],
                                       [0, Fraction(1, 2), Fraction(1, 2)]])
    with pytest.raises(SpeclabError, match="not constant"):
        markov_decompose(M)


def test_not_doubly_stochastic_rejected():
    with pytest.raises(SpeclabError):
        markov_decompose(RationalMatrix.from_fractions([[1, 1], [0, 0]]))


@given(st.integers(2, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(1, n - 1), min_size=1, max_size=n - 1, unique=True),
                        st.fractions(0, 1).filter(lambda a: a < 1))))
def test_round_trip(case):
    n, shifts, alpha = case
    Q = rotation_average(n, shifts)  # nonzero shifts: zero diagonal
    M = RationalMatrix.identity(n).scale(alpha) + Q.scale(1 - alpha)
    dec = markov_decompose(M)
    assert dec.alpha == alpha and dec.Q == Q and dec.recompose() == M


@pytest.mark.parametrize("n,shifts", [(7, [0, 1]), (11, [0, 1, 5]), (13, [0, 1, 3, 7, 12])])
def test_uniform_average_valuedness(n, shifts):
    J = rotation_average(n, shifts)
    left, right = adjoint_decompositions(J)
    assert left.valuedness == right.valuedness == len(shifts)


# ----------------------------------------------------------------- joinings

def test_identity_perm_gives_diagonal():
    J = off_diagonal_joining(rot(15, 5), P.identity(15))
    assert J.valuedness == 1 and J.marginals_uniform()
    assert J.matrix == RationalMatrix.identity(5).scale(Fraction(1, 5))


def test_rotation_factor_joining_is_single_valued():
    # R commutes with phi, so the pushed graph lands on one atom per atom
    for n, shift in [(15, 5), (6, 3)]:
        J = off_diagonal_joining(rot(n, shift), rot(n, 1))
        assert J.valuedness == 1
        assert J.marginals_uniform() and J.invariance_witness() is None


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_quotient_joining_is_p_valued(p, m):
    S, Phi = quotient_action(p, m)
    R = P.compose(S, Phi)
    J = off_diagonal_joining(Phi, R)
    assert J.size == m**p
    assert J.valuedness == p
    assert J.marginals_uniform() and J.invariance_witness() is None
    left, right = adjoint_decompositions(J.markov())
    assert left.alpha == right.alpha == Fraction(1, p)


def test_joining_matches_enumeration():
    S, Phi = quotient_action(3, 2)
    R = P.compose(S, Phi)
    J = off_diagonal_joining(Phi, R)
    # nu(A_a x A_b) = mu(A_a ∩ R^-1 A_b), counted point by point
    orbit = {}
    for x in range(Phi.size):
        y, o = x, []
        while y not in o:
            o.append(y)
            y = int(Phi[y])
        orbit[x] = min(o)
    reps = sorted(set(orbit.values()))
    expected = sympy.zeros(len(reps), len(reps))
    for x in range(Phi.size):
        expected[reps.index(orbit[x]), reps.index(orbit[int(R[x])])] += sympy.Rational(1, Phi.size)
    assert sym(J.matrix) == expected


def test_joining_errors():
    with pytest.raises(NotCommutingError):
        # base +1 on Z_6 commutes with phi, but perm (a reflection) does not commute with base
        off_diagonal_joining(rot(6, 3), (-np.arange(6)) % 6, base=rot(6, 1))
    with pytest.raises(SpeclabError):
        off_diagonal_joining(rot(6, 3), [0, 0, 1, 2, 3, 4])


# ------------------------------------------------------------ graph checks

def test_disjointness_examples():
    assert graph_disjointness([rot(7, 1), rot(7, 2)], rot(7, 1)).disjoint
    assert graph_disjointness([rot(15, 1), rot(15, 4), rot(15, 7)], rot(15, 1)).disjoint
    same = graph_disjointness([rot(7, 3), rot(7, 3)], rot(7, 1))
    assert not same.disjoint and same.coincidences[0] == (0, 1, 0)


def test_disjointness_errors():
    with pytest.raises(NotCommutingError):
        graph_disjointness([(-np.arange(7)) % 7], rot(7, 1))
    with pytest.raises(ValueError):
        graph_disjointness([rot(6, 1)], rot(6, 2))


def test_distinct_commuting_maps_are_disjoint(rng):
    # everything commuting with an ergodic rotation of Z_n is a rotation
    for _ in range(30):
        n = int(rng.integers(2, 40))
        shifts = rng.choice(n, size=min(n, 4), replace=False)
        assert graph_disjointness([rot(n, int(c)) for c in shifts], rot(n, 1)).disjoint


def test_multivalued_commuting_rotation_collides():
    # R = +1 commutes with phi = +5: all three images project to x + 1
    g = multivalued_graph_check(rot(15, 5), rot(15, 1), 3)
    assert list(g.domain) == [0, 1, 2, 3, 4]
    assert g.witnesses == (0, 1, 2, 3, 4)
    assert (g.graph == ((np.arange(5) + 1) % 5)[:, None]).all()
    g = multivalued_graph_check(rot(6, 3), rot(6, 1), 2)
    assert g.witnesses == (0, 1, 2)


def test_multivalued_degenerate_p1():
    g = multivalued_graph_check(P.identity(4), rot(4, 1), 1)
    assert g.distinct and g.graph.shape == (4, 1)


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (3, 3), (5, 2)])
def test_multivalued_quotient_distinct(p, m):
    S, Phi = quotient_action(p, m)
    g = multivalued_graph_check(Phi, P.compose(S, Phi), p)
    assert g.distinct
    assert set(g.graph.ravel().tolist()) <= set(g.domain.tolist())


def test_multivalued_no_domain():
    with pytest.raises(SpeclabError, match="fundamental domain"):
        multivalued_graph_check(rot(6, 2), rot(6, 1), 2)
