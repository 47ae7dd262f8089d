"""Exact number theory behind the models.

Everything here is plain Python integers (arbitrary precision) and
:class:`fractions.Fraction`; nothing is floating point.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Iterator, Mapping

from sympy import isprime

from speclab.errors import AdmissibilityError, NoSolutionError

__all__ = [
    "PrimeSpec",
    "Factorization",
    "ArithmeticProgression",
    "AlignmentSolution",
    "AdmissiblePolynomial",
    "factor_against",
    "solve_alignment",
    "refine_progression",
    "admissible_check",
]


@dataclass(frozen=True)
class PrimeSpec:
    """A strictly increasing list of primes with an exponent for each."""

    primes: tuple
    exponents: tuple

    def __init__(self, primes, exponents=None):
        primes = tuple(int(p) for p in primes)
        if exponents is None:
            exponents = (1,) * len(primes)
        exponents = tuple(int(d) for d in exponents)
        if not primes:
            raise ValueError("PrimeSpec needs at least one prime")
        if len(primes) != len(exponents):
            raise ValueError(
                f"{len(primes)} primes but {len(exponents)} exponents"
            )
        for a, b in zip(primes, primes[1:]):
            if a >= b:
                raise ValueError(f"primes must be strictly increasing ({a} >= {b})")
        for p in primes:
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
        for d in exponents:
            if d < 1:
                raise ValueError(f"exponents must be >= 1, got {d}")
        object.__setattr__(self, "primes", primes)
        object.__setattr__(self, "exponents", exponents)

    @property
    def moduli(self):
        return tuple(p**d for p, d in zip(self.primes, self.exponents))

    def __len__(self):
        return len(self.primes)

    def __contains__(self, p):
        return p in self.primes

    def is_coprime(self, n):
        return all(n % p for p in self.primes)

    def prefix(self, k):
        return PrimeSpec(self.primes[:k], self.exponents[:k])

    def without(self, p):
        keep = [(q, d) for q, d in zip(self.primes, self.exponents) if q != p]
        return PrimeSpec([q for q, _ in keep], [d for _, d in keep])


@dataclass(frozen=True)
class Factorization:
    n: int
    hits: tuple  # ((prime, exponent), ...) sorted by prime
    residual: int

    @property
    def hit_primes(self):
        return tuple(p for p, _ in self.hits)

    @property
    def m(self):
        return len(self.hits)

    def reassemble(self):
        return self.residual * prod(p**e for p, e in self.hits)


def factor_against(n, spec):
    """Split ``n`` into prime powers from ``spec`` and a part coprime to it.

    >>> factor_against(20, PrimeSpec([2, 5, 11]))
    Factorization(n=20, hits=((2, 2), (5, 1)), residual=1)
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"factor_against needs N >= 1, got {n}")
    rest = n
    hits = []
    for p in spec.primes:
        if p > rest:
            break
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            hits.append((p, e))
    return Factorization(n=n, hits=tuple(hits), residual=rest)


@dataclass(frozen=True)
class ArithmeticProgression:
    """The set ``{r, r + m, r + 2m, ...}`` or the empty set."""

    residue: int = 0
    modulus: int = 1
    empty: bool = False

    def __post_init__(self):
        if self.empty:
            return
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(
                f"residue {self.residue} not reduced modulo {self.modulus}"
            )

    @classmethod
    def none(cls):
        return cls(0, 1, empty=True)

    @classmethod
    def of(cls, residue, modulus):
        return cls(residue % modulus, modulus)

    def __contains__(self, n):
        return not self.empty and n >= self.residue and (n - self.residue) % self.modulus == 0

    def __iter__(self) -> Iterator[int]:
        if self.empty:
            return
        n = self.residue
        while True:
            yield n
            n += self.modulus

    def first_at_least(self, lower):
        if self.empty:
            return None
        if lower <= self.residue:
            return self.residue
        steps = -(-(lower - self.residue) // self.modulus)
        return self.residue + steps * self.modulus

    def take(self, count, start=0):
        """``count`` consecutive members, the first being ``>= start``."""
        first = self.first_at_least(start)
        if first is None:
            return []
        return [first + i * self.modulus for i in range(count)]

    def __str__(self):
        if self.empty:
            return "AP(empty)"
        return f"AP({self.residue} mod {self.modulus})"


def refine_progression(base, extra):
    """Intersection of two progressions (general CRT, moduli need not be coprime)."""
    if base.empty or extra.empty:
        return ArithmeticProgression.none()
    r1, m1 = base.residue, base.modulus
    r2, m2 = extra.residue, extra.modulus
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return ArithmeticProgression.none()
    lcm = m1 // g * m2
    # r1 + m1*t == r2 (mod m2)  =>  t == (r2 - r1)/g * inv(m1/g) (mod m2/g)
    mg = m2 // g
    t = ((r2 - r1) // g) * pow(m1 // g, -1, mg) % mg if mg > 1 else 0
    # the least nonnegative solution already dominates both reduced residues
    return ArithmeticProgression((r1 + m1 * t) % lcm, lcm)


@dataclass(frozen=True)
class AlignmentSolution:
    """Solutions ``n`` of ``a*n == b*companion(n) + 1``."""

    a: int
    b: int
    progression: ArithmeticProgression
    n_min: int = field(default=0)

    def companion(self, n):
        num = self.a * n - 1
        if num % self.b:
            raise ValueError(f"{n} does not solve {self.a}*n = {self.b}*m + 1")
        return num // self.b

    def members(self, count):
        return self.progression.take(count, start=self.n_min)


def solve_alignment(a, b):
    """All ``n`` with ``a*n = b*m + 1`` for an integer ``m``.

    >>> sol = solve_alignment(2, 3)
    >>> str(sol.progression), sol.companion(2)
    ('AP(2 mod 3)', 1)
    """
    a, b = int(a), int(b)
    if a < 1 or b < 1:
        raise ValueError("alignment coefficients must be positive")
    if gcd(a, b) != 1:
        raise NoSolutionError(f"{a}*n == 1 (mod {b}) has no solution: gcd is {gcd(a, b)}")
    residue = pow(a, -1, b) if b > 1 else 0
    progression = ArithmeticProgression(residue, b)
    # companion(n) >= 0 exactly when a*n >= 1
    n_min = progression.first_at_least(1)
    return AlignmentSolution(a, b, progression, n_min)


@dataclass(frozen=True)
class AdmissiblePolynomial:
    coefficients: Mapping[int, Fraction]

    def __call__(self, perm):
        """The Markov operator ``sum a_i P^i`` for a permutation ``perm``."""
        from speclab.joining import RationalMatrix
        from speclab.perm import power

        return RationalMatrix.from_weighted_perms(
            [(w, power(perm, d)) for d, w in self.coefficients.items()], size=len(perm)
        )


def admissible_check(coefficients):
    """Validate ``{degree: weight}``: weights nonnegative and summing to one.

    Raises :class:`AdmissibilityError` naming the violated condition.
    """
    coeffs = {}
    for degree, weight in coefficients.items():
        degree = int(degree)
        if degree < 0:
            raise AdmissibilityError(f"degree {degree} is negative")
        coeffs[degree] = Fraction(weight)
    for degree, weight in sorted(coeffs.items()):
        if weight < 0:
            raise AdmissibilityError(f"negative coefficient {weight} at degree {degree}")
    total = sum(coeffs.values(), Fraction(0))
    if total != 1:
        raise AdmissibilityError(f"coefficients sum to {total}, not 1")
    return AdmissiblePolynomial({d: w for d, w in sorted(coeffs.items()) if w})
