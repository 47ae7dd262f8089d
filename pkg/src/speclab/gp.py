"""The group ``G_p = <s, phi | phi^p = e, [phi^i s phi^-i, phi^j s phi^-j] = e>``.

Elements are kept in the normal form ``phi^a t_0^b_0 ... t_{p-1}^b_{p-1}`` with
``t_i = phi^i s phi^-i``, i.e. coordinates ``(a, b)`` in ``Z_p`` acting on
``Z^p`` by cyclic shift.  The product is

    (a, b) * (a', b') = (a + a' mod p, shift_{a'}(b) + b'),
    shift_c(b)_j = b_{j + c mod p}.
"""
from dataclasses import dataclass
import re

import numpy as np

from speclab import perm as P

__all__ = ["GpNormalForm", "gp_reduce", "parse_word", "relator_words", "quotient_action"]

_TOKEN = re.compile(r"(phi|s|f|S|F)(\^-1|\^\{-1\}|⁻¹)?")


@dataclass(frozen=True)
class GpNormalForm:
    p: int
    a: int
    b: tuple

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if len(self.b) != self.p:
            raise ValueError(f"exponent vector must have length {self.p}")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))

    @classmethod
    def identity(cls, p):
        return cls(p, 0, (0,) * p)

    @classmethod
    def s(cls, p, exponent=1):
        return cls(p, 0, (exponent,) + (0,) * (p - 1))

    @classmethod
    def phi(cls, p, exponent=1):
        return cls(p, exponent, (0,) * p)

    @classmethod
    def t(cls, p, i, exponent=1):
        b = [0] * p
        b[i % p] = exponent
        return cls(p, 0, tuple(b))

    def __mul__(self, other):
        if self.p != other.p:
            raise ValueError("cannot multiply elements of different G_p")
        c, p = other.a, self.p
        shifted = [self.b[(j + c) % p] for j in range(p)]
        return GpNormalForm(p, self.a + other.a, tuple(x + y for x, y in zip(shifted, other.b)))

    def inverse(self):
        p, c = self.p, -self.a
        return GpNormalForm(p, c, tuple(-self.b[(j + c) % p] for j in range(p)))

    def __pow__(self, n):
        result = GpNormalForm.identity(self.p)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = result * base
        return result

    @property
    def is_identity(self):
        return self.a == 0 and not any(self.b)

    def __str__(self):
        return f"(a={self.a}, b=({','.join(map(str, self.b))}))"


def parse_word(word):
    """Letters ``s``, ``phi`` (or ``f``) with optional ``^-1``; ``S``/``F`` are inverses.

    Whitespace and ``*`` separators are ignored.  Returns ``[(letter, +-1), ...]``
    with ``letter`` in ``{"s", "phi"}``.
    """
    if not isinstance(word, str):
        return [_letter(tok) for tok in word]
    text = re.sub(r"[\s*·]", "", word)
    letters = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character {text[pos]!r} at position {pos} of {word!r}")
        letters.append(_letter(m.group(0)))
        pos = m.end()
    return letters


def _letter(token):
    if isinstance(token, tuple):
        return token
    m = _TOKEN.fullmatch(token)
    if not m:
        raise ValueError(f"unknown generator {token!r}")
    name, inv = m.groups()
    sign = -1 if inv else 1
    if name in ("S", "F"):
        sign = -sign
    return ("s" if name in ("s", "S") else "phi", sign)


def gp_reduce(p, word):
    """Normal form of a word in ``s``, ``phi`` and their inverses."""
    if p < 2:
        raise ValueError("p must be >= 2")
    gens = {
        ("s", 1): GpNormalForm.s(p),
        ("s", -1): GpNormalForm.s(p, -1),
        ("phi", 1): GpNormalForm.phi(p),
        ("phi", -1): GpNormalForm.phi(p, -1),
    }
    result = GpNormalForm.identity(p)
    for letter in parse_word(word):
        result = result * gens[letter]
    return result


def _conjugate(i):
    return [("phi", 1)] * i + [("s", 1)] + [("phi", -1)] * i


def _invert(word):
    return [(name, -sign) for name, sign in reversed(word)]


def relator_words(p):
    """``phi^p`` and every commutator ``[t_i, t_j]``, as letter lists."""
    words = [[("phi", 1)] * p]
    for i in range(p):
        for j in range(i + 1, p):
            ti, tj = _conjugate(i), _conjugate(j)
            words.append(ti + tj + _invert(ti) + _invert(tj))
    return words


def quotient_action(p, m):
    """Left-regular action of the finite quotient ``Z_m^p x| Z_p`` on itself.

    Points are the normal forms ``(a, b)`` with ``b`` reduced mod ``m``, numbered
    lexicographically over moduli ``(p, m, ..., m)``.  Returns the permutations
    ``(S, Phi)`` of left multiplication by ``s`` and ``phi``; the action is free.
    """
    shape = (p,) + (m,) * p
    size = p * m**p
    P.check_cap(size, "G_p quotient")
    coords = np.indices(shape, dtype=np.int64).reshape(p + 1, -1)
    a, b = coords[0], coords[1:]

    # s * (a, b) = (a, shift_a(e_0) + b): adds 1 to coordinate j where j + a == 0 mod p
    s_b = b.copy()
    target = (-a) % p
    s_b[target, np.arange(size)] += 1
    s_b %= m
    S = np.ravel_multi_index((a,) + tuple(s_b), shape)

    # phi * (a, b) = (a + 1, b)
    Phi = np.ravel_multi_index(((a + 1) % p,) + tuple(b), shape)
    return S, Phi
