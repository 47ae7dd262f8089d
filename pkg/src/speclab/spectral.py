"""Exact spectral multiplicity profiles.

Eigenvalues of a permutation operator (and of a rotation of a finite abelian
group) are roots of unity, stored as rotation numbers ``k/L`` in ``[0, 1)``.
Both kinds of operator have spectra invariant under the Galois action, so all
primitive ``d``-th roots of unity share one multiplicity.  A profile therefore
stores ``{d: multiplicity}`` and expands to the per-angle map on demand.
"""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd, prod

from sympy import divisors, primerange, totient

from speclab import perm as P
from speclab.arithmetic import PrimeSpec, factor_against

__all__ = [
    "EigenvalueAngle",
    "MultiplicityProfile",
    "oracle_profile",
    "closed_form_profile",
    "mm_theorem4",
    "multiplicity_set_theorem5",
    "hm_prime_powers",
    "ratio_scan",
    "theorem4_example",
    "remark1_configurations",
]

#: Rotation number of an eigenvalue ``exp(2 pi i k/L)``; ``Fraction`` keeps it reduced.
EigenvalueAngle = Fraction


@dataclass(frozen=True)
class MultiplicityProfile:
    by_order: tuple  # ((d, multiplicity), ...) sorted by d

    @classmethod
    def from_orders(cls, orders):
        return cls(tuple(sorted((int(d), int(m)) for d, m in orders.items() if m)))

    @classmethod
    def from_entries(cls, entries):
        """Build from ``{angle: multiplicity}``; the map must be Galois invariant."""
        orders = {}
        for angle, mult in entries.items():
            angle = Fraction(angle) % 1
            d = angle.denominator
            if orders.setdefault(d, mult) != mult:
                raise ValueError(f"primitive {d}-th roots carry different multiplicities")
        profile = cls.from_orders(orders)
        if len(profile.entries) != len(entries):
            raise ValueError("entries omit some primitive roots of unity")
        return profile

    @cached_property
    def entries(self):
        out = {}
        for d, mult in self.by_order:
            for k in range(d):
                if gcd(k, d) == 1:
                    out[Fraction(k, d)] = mult
        return dict(sorted(out.items()))

    def multiplicity(self, angle):
        return dict(self.by_order).get(Fraction(angle).denominator, 0)

    @property
    def mm(self):
        return max(m for _, m in self.by_order)

    @property
    def multiplicity_set(self):
        return tuple(sorted({m for _, m in self.by_order}))

    @property
    def cardm(self):
        return len(self.multiplicity_set)

    @property
    def homogeneous(self):
        return self.cardm == 1

    @property
    def distinct_eigenvalues(self):
        return sum(int(totient(d)) for d, _ in self.by_order)

    @property
    def dimension(self):
        return sum(int(totient(d)) * m for d, m in self.by_order)


def oracle_profile(perm):
    """Spectrum of the permutation operator read off its cycle type.

    A cycle of length ``L`` contributes each ``L``-th root of unity once, so the
    multiplicity of a primitive ``d``-th root is the number of cycles whose
    length is divisible by ``d``.
    """
    perm = P.as_perm(perm)
    P.check_cap(perm.size, "oracle permutation")
    orders = Counter()
    for length, count in Counter(int(x) for x in P.cycle_lengths(perm)).items():
        for d in divisors(length):
            orders[d] += count
    return MultiplicityProfile.from_orders(orders)


def closed_form_profile(moduli, n):
    """Profile of ``R^n`` for the all-ones rotation on ``prod Z_{m_j}``.

    With pairwise coprime moduli the group is cyclic of order ``M`` and ``R^n``
    is rotation by ``n``; its spectrum is ``{k*g/M}`` each with multiplicity
    ``g = gcd(n, M) = prod gcd(n, m_j)``.
    """
    moduli = tuple(int(m) for m in moduli)
    n = int(n)
    if n < 1:
        raise ValueError(f"power must be >= 1, got {n}")
    for i, a in enumerate(moduli):
        for b in moduli[i + 1:]:
            if gcd(a, b) != 1:
                raise ValueError(
                    f"moduli {a} and {b} are not coprime; use oracle_profile instead"
                )
    order = prod(moduli)
    mult = prod(gcd(n, m) for m in moduli)
    return MultiplicityProfile.from_orders({d: mult for d in divisors(order // mult)})


def mm_theorem4(n, spec):
    """Product of the distinct primes of ``spec`` dividing ``n`` (1 if none)."""
    return prod(factor_against(n, spec).hit_primes)


def multiplicity_set_theorem5(n, spec):
    """All products of subsets of the primes of ``spec`` dividing ``n``."""
    hits = factor_against(n, spec).hit_primes
    values = {prod(c) for r in range(len(hits) + 1) for c in combinations(hits, r)}
    return tuple(sorted(values))


def hm_prime_powers(n, spec):
    """``prod_j gcd(n, p_j ** d_j)``: the homogeneous multiplicity of ``R^n``."""
    exps = dict(zip(spec.primes, spec.exponents))
    return prod(p ** min(e, exps[p]) for p, e in factor_against(n, spec).hits)


def ratio_scan(spec, horizon):
    """Distinct values of ``hm(R^n)/n`` for ``1 <= n <= horizon``.

    Returns ``[(value, first_n), ...]`` sorted by value.
    """
    horizon = int(horizon)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    first = {}
    for n in range(1, horizon + 1):
        value = Fraction(hm_prime_powers(n, spec), n)
        first.setdefault(value, n)
    return sorted(first.items())


@dataclass(frozen=True)
class Theorem4Example:
    k: int
    n: int
    formula_mm: int
    coprime_to_spec: bool
    growth_hypothesis: object  # True/False, or None when p_{k+1} is not in the prime list

    @property
    def claim_holds(self):
        return self.formula_mm == 1


def theorem4_example(spec, k):
    """Evaluate ``N = p_1 ... p_k + 1``, the example attached to the mm formula.

    The growth condition ``p_{k+1} > p_1 ... p_k`` does not rule out
    ``N`` itself being in ``spec`` (e.g. ``2*3 + 1 = 7``), in which case the
    formula gives ``N`` rather than 1.  Both facts are reported.
    """
    if not 1 <= k <= len(spec):
        raise ValueError(f"k must be in 1..{len(spec)}")
    base = prod(spec.primes[:k])
    n = base + 1
    growth = spec.primes[k] > base if k < len(spec) else None
    return Theorem4Example(k, n, mm_theorem4(n, spec), spec.is_coprime(n), growth)


@dataclass(frozen=True)
class Remark1Report:
    target: int
    exponent: int
    largest_prime: int
    # first n < target with hm(R^n) != n, or None
    literal_first_failure: object
    omitted_first_failure: object
    literal_hm_target: int
    omitted_hm_target: int

    @property
    def discrepancy(self):
        return self.literal_hm_target != self.omitted_hm_target


def remark1_configurations(target=2011, exponent=10, largest_prime=None):
    """Compare the two readings of the prime-power product space.

    *literal*: every prime up to ``largest_prime`` with exponent ``exponent``
    except ``target``, which keeps exponent 1.  *omitted*: the same space with
    the ``Z_target`` factor dropped.  Both are scanned for ``hm(R^n) == n`` on
    ``n < target`` and evaluated at ``n = target``.
    """
    if largest_prime is None:
        largest_prime = target
    primes = list(primerange(2, largest_prime + 1))
    if target not in primes:
        raise ValueError(f"target {target} must be a prime <= {largest_prime}")
    literal = PrimeSpec(primes, [1 if p == target else exponent for p in primes])
    omitted = literal.without(target)

    def first_failure(spec):
        for n in range(1, target):
            if hm_prime_powers(n, spec) != n:
                return n
        return None

    return Remark1Report(
        target=target,
        exponent=exponent,
        largest_prime=largest_prime,
        literal_first_failure=first_failure(literal),
        omitted_first_failure=first_failure(omitted),
        literal_hm_target=hm_prime_powers(target, literal),
        omitted_hm_target=hm_prime_powers(target, omitted),
    )
