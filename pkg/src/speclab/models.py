"""Finite measure-preserving systems: rotations of finite abelian groups,
truncated infinite products, multiplier automorphisms and the coordinate
shift model.

Group elements are coordinate tuples ``(x_1, ..., x_k)`` with ``0 <= x_j < m_j``.
Points are numbered lexicographically (first coordinate most significant),
which is numpy's C order, so ``np.ravel_multi_index`` is the numbering.
Maps are composed as ``(f o g)(x) = f(g(x))``.
"""
from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm, prod
from typing import Sequence

import numpy as np

from speclab import perm as P
from speclab.arithmetic import PrimeSpec
from speclab.errors import NoSolutionError, SpeclabError

__all__ = [
    "FiniteAbelianGroup",
    "GroupRotation",
    "ProductModel",
    "MultiplierAutomorphism",
    "Model2System",
    "truncate",
    "power",
    "multiplier_for",
    "build_model2",
    "sigma_family",
]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    moduli: tuple

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if not moduli:
            raise ValueError("a group needs at least one cyclic factor")
        if any(m < 2 for m in moduli):
            raise ValueError(f"every modulus must be >= 2, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @property
    def order(self):
        return prod(self.moduli)

    @property
    def exponent(self):
        return lcm(*self.moduli)

    @property
    def rank(self):
        return len(self.moduli)

    def reduce(self, element):
        element = tuple(int(x) for x in element)
        if len(element) != self.rank:
            raise ValueError(f"element {element} has wrong length for {self.moduli}")
        return tuple(x % m for x, m in zip(element, self.moduli))

    def coordinates(self):
        """``(order, rank)`` array listing every element in point order."""
        P.check_cap(self.order, "group enumeration")
        grids = np.indices(self.moduli, dtype=np.int64)
        return grids.reshape(self.rank, -1).T

    def index_of(self, coords):
        coords = np.asarray(coords, dtype=np.int64)
        return np.ravel_multi_index(tuple(coords.T), self.moduli)

    def translation(self, step):
        step = np.asarray(self.reduce(step), dtype=np.int64)
        moved = (self.coordinates() + step) % np.asarray(self.moduli)
        return self.index_of(moved)


@dataclass(frozen=True)
class GroupRotation:
    """``x -> x + step`` on a finite abelian group with Haar (uniform) measure."""

    group: FiniteAbelianGroup
    step: tuple = None

    def __post_init__(self):
        step = (1,) * self.group.rank if self.step is None else self.step
        object.__setattr__(self, "step", self.group.reduce(step))

    @classmethod
    def cyclic(cls, m, step=1):
        return cls(FiniteAbelianGroup((m,)), (step,))

    @cached_property
    def permutation(self):
        return self.group.translation(self.step)

    @property
    def order(self):
        return lcm(*(m // gcd(s, m) for s, m in zip(self.step, self.group.moduli)))

    @property
    def is_identity(self):
        return not any(self.step)

    def power(self, n):
        return power(self, n)


def power(rotation, n):
    """The rotation by ``n * step``; ``n >= 1``."""
    n = int(n)
    if n < 1:
        raise ValueError(f"power expects n >= 1, got {n}")
    return GroupRotation(rotation.group, tuple(n * s for s in rotation.step))


@dataclass(frozen=True)
class ProductModel:
    """``Z_{m_1} x Z_{m_2} x ...`` rotated by the all-ones element, truncatable.

    Build it from a :class:`PrimeSpec` (``m_j = p_j ** d_j``) or from an explicit,
    pairwise coprime list of moduli.
    """

    moduli: tuple
    depth: int = None
    spec: PrimeSpec = None
    name: str = ""

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if any(m < 2 for m in moduli):
            raise ValueError(f"moduli must be >= 2, got {moduli}")
        for i, a in enumerate(moduli):
            for b in moduli[i + 1:]:
                if gcd(a, b) != 1:
                    raise ValueError(f"moduli {a} and {b} are not coprime")
        depth = len(moduli) if self.depth is None else int(self.depth)
        if not 1 <= depth <= len(moduli):
            raise ValueError(f"depth {depth} outside 1..{len(moduli)}")
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "depth", depth)
        if not self.name:
            object.__setattr__(self, "name", "x".join(f"Z{m}" for m in moduli[:depth]))

    @classmethod
    def from_spec(cls, spec, depth=None, name=""):
        return cls(spec.moduli, depth, spec, name)

    def moduli_at(self, k):
        self._check_level(k)
        return self.moduli[:k]

    def order_at(self, k):
        return prod(self.moduli_at(k))

    def truncate(self, k):
        return truncate(self, k)

    def _check_level(self, k):
        if not 1 <= k <= self.depth:
            raise ValueError(f"level {k} outside 1..{self.depth}")


def truncate(model, k):
    """Level-``k`` finite realization: the group and its all-ones rotation."""
    group = FiniteAbelianGroup(model.moduli_at(k))
    return group, GroupRotation(group)


@dataclass(frozen=True)
class MultiplierAutomorphism:
    """``x_j -> c_j * x_j mod m_j``."""

    group: FiniteAbelianGroup
    coefficients: tuple

    def __post_init__(self):
        for c, m in zip(self.coefficients, self.group.moduli):
            if gcd(c, m) != 1:
                raise NoSolutionError(f"multiplier {c} is not invertible modulo {m}")

    @cached_property
    def permutation(self):
        coords = self.group.coordinates()
        scaled = coords * np.asarray(self.coefficients, dtype=np.int64)
        return self.group.index_of(scaled % np.asarray(self.group.moduli))

    def is_automorphism(self):
        """Bijective and additive, checked pointwise on every generator translate."""
        psi = self.permutation
        if not np.array_equal(np.sort(psi), np.arange(psi.size)):
            return False
        # psi(x + e_j) == psi(x) + psi(e_j) for each basis vector e_j suffices
        for j in range(self.group.rank):
            e = [0] * self.group.rank
            e[j] = 1
            shift = self.group.translation(e)
            image_shift = self.group.translation(
                [self.coefficients[j] if i == j else 0 for i in range(self.group.rank)]
            )
            if not np.array_equal(psi[shift], image_shift[psi]):
                return False
        return True

    def conjugation_witness(self, rotation, q):
        """First point where ``psi^-1 o R o psi`` and ``R^q`` differ, else ``None``."""
        psi = self.permutation
        lhs = P.compose(P.inverse(psi), rotation.permutation, psi)
        rhs = power(rotation, q).permutation
        bad = np.flatnonzero(lhs != rhs)
        return int(bad[0]) if bad.size else None


def multiplier_for(model, q, k):
    """The multiplier conjugating the level-``k`` rotation to its ``q``-th power."""
    q = int(q)
    coeffs = []
    for m in model.moduli_at(k):
        if gcd(q, m) != 1:
            raise NoSolutionError(f"q={q} has no inverse modulo {m}")
        coeffs.append(pow(q, -1, m))
    return MultiplierAutomorphism(FiniteAbelianGroup(model.moduli_at(k)), tuple(coeffs))


@dataclass(frozen=True)
class Model2System:
    """``R = F o (U_1 x ... x U_p)`` on the ``p``-fold power of a base group.

    ``F`` is the cyclic coordinate shift ``F(x)_j = x_{j+1 mod p}``; for ``p = 2``
    and ``U_1 = T``, ``U_2 = id`` this is ``R(x, y) = (y, T x)``.
    """

    p: int
    bases: tuple
    F: np.ndarray
    D: np.ndarray
    R: np.ndarray

    @property
    def base_group(self):
        return self.bases[0].group

    @property
    def size(self):
        return self.R.size


def _coordinate_shift(base_order, p):
    shape = (base_order,) * p
    P.check_cap(base_order**p, "product space")
    coords = np.indices(shape, dtype=np.int64).reshape(p, -1)
    return np.ravel_multi_index(tuple(np.roll(coords, -1, axis=0)), shape)


def build_model2(p, bases: Sequence[GroupRotation]):
    p = int(p)
    bases = tuple(bases)
    if p < 1:
        raise ValueError("p must be >= 1")
    if len(bases) != p:
        raise ValueError(f"need {p} base rotations, got {len(bases)}")
    group = bases[0].group
    for b in bases[1:]:
        if b.group != group:
            raise SpeclabError(
                f"base rotations act on different spaces: {group.moduli} vs {b.group.moduli}"
            )
    F = _coordinate_shift(group.order, p)
    D = P.tensor(*(b.permutation for b in bases))
    R = P.compose(F, D)
    if not P.is_identity(P.power(F, p)):
        raise SpeclabError("coordinate shift does not have order p")
    return Model2System(p, bases, F, D, R)


def sigma_family(system):
    """``S_j = F^-j o R o F^(j-1)`` for ``j = 1..p``.

    Checks that the ``S_j`` commute pairwise and that their product is ``R^p``;
    raises :class:`SpeclabError` with the offending index otherwise.
    """
    F, R, p = system.F, system.R, system.p
    sigmas = [P.compose(P.power(F, -j), R, P.power(F, j - 1)) for j in range(1, p + 1)]
    for i in range(p):
        for j in range(i + 1, p):
            if not np.array_equal(P.compose(sigmas[i], sigmas[j]), P.compose(sigmas[j], sigmas[i])):
                raise SpeclabError(f"S_{i + 1} and S_{j + 1} do not commute")
    product = P.compose(*sigmas)
    if not np.array_equal(product, P.power(R, p)):
        raise SpeclabError("S_1 ... S_p differs from R^p")
    return sigmas
