"""Off-diagonal joinings, multi-valued graphs and Markov operators on finite spaces.

Rational matrices are stored as an integer numerator array over one common
denominator, which keeps products exact and fast.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from speclab import perm as P
from speclab.errors import NotCommutingError, SpeclabError

__all__ = [
    "RationalMatrix",
    "JoiningMatrix",
    "MarkovDecomposition",
    "DisjointnessVerdict",
    "MultivaluedGraph",
    "off_diagonal_joining",
    "markov_decompose",
    "adjoint_decompositions",
    "graph_disjointness",
    "multivalued_graph_check",
    "rotation_average",
]

MAX_MATRIX = 1000
_SAFE = 2**62


@dataclass(frozen=True, eq=False)
class RationalMatrix:
    """``numer / denom`` with ``numer`` an integer array and ``denom >= 1``."""

    numer: np.ndarray
    denom: int = 1

    def __post_init__(self):
        numer = np.asarray(self.numer)
        if numer.ndim != 2:
            raise ValueError("RationalMatrix must be 2-d")
        if max(numer.shape) > MAX_MATRIX:
            raise SpeclabError(f"matrix of shape {numer.shape} exceeds {MAX_MATRIX}")
        denom = int(self.denom)
        if denom < 1:
            raise ValueError("denominator must be positive")
        g = denom
        for x in np.unique(numer):
            g = gcd(g, int(x))
            if g == 1:
                break
        if g > 1:
            numer = numer // g
            denom //= g
        object.__setattr__(self, "numer", numer)
        object.__setattr__(self, "denom", denom)

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n, dtype=np.int64), 1)

    @classmethod
    def from_perm(cls, perm):
        """Matrix of ``f -> f o perm``: row ``x`` has its one at column ``perm[x]``."""
        n = len(perm)
        m = np.zeros((n, n), dtype=np.int64)
        m[np.arange(n), perm] = 1
        return cls(m, 1)

    @classmethod
    def from_weighted_perms(cls, terms, size):
        terms = [(Fraction(w), np.asarray(p)) for w, p in terms]
        denom = lcm(*(w.denominator for w, _ in terms)) if terms else 1
        m = np.zeros((size, size), dtype=np.int64)
        rows = np.arange(size)
        for w, p in terms:
            np.add.at(m, (rows, p), w.numerator * (denom // w.denominator))
        return cls(m, denom)

    @classmethod
    def from_fractions(cls, rows):
        rows = [[Fraction(x) for x in row] for row in rows]
        denom = lcm(*(x.denominator for row in rows for x in row)) if rows else 1
        numer = np.array([[x.numerator * (denom // x.denominator) for x in row] for row in rows],
                         dtype=object)
        return cls(_shrink(numer), denom)

    @property
    def shape(self):
        return self.numer.shape

    @property
    def T(self):
        return RationalMatrix(self.numer.T.copy(), self.denom)

    def __getitem__(self, idx):
        return Fraction(int(self.numer[idx]), self.denom)

    def __matmul__(self, other):
        a, b = self.numer, other.numer
        bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * a.shape[1]
        if bound >= _SAFE:
            a, b = a.astype(object), b.astype(object)
        return RationalMatrix(_shrink(a @ b), self.denom * other.denom)

    def _aligned(self, other):
        d = lcm(self.denom, other.denom)
        return (self.numer.astype(object) * (d // self.denom),
                other.numer.astype(object) * (d // other.denom), d)

    def __add__(self, other):
        a, b, d = self._aligned(other)
        return RationalMatrix(_shrink(a + b), d)

    def __sub__(self, other):
        a, b, d = self._aligned(other)
        return RationalMatrix(_shrink(a - b), d)

    def scale(self, factor):
        factor = Fraction(factor)
        return RationalMatrix(_shrink(self.numer.astype(object) * factor.numerator),
                              self.denom * factor.denominator)

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix) and self.denom == other.denom
                and self.shape == other.shape and bool(np.array_equal(self.numer, other.numer)))

    def __hash__(self):
        return hash((self.shape, self.denom, self.numer.tobytes()))

    def row_sums(self):
        return [Fraction(int(x), self.denom) for x in self.numer.sum(axis=1)]

    def col_sums(self):
        return [Fraction(int(x), self.denom) for x in self.numer.sum(axis=0)]

    def diagonal(self):
        return [Fraction(int(x), self.denom) for x in np.diagonal(self.numer)]

    def is_nonnegative(self):
        return bool((self.numer >= 0).all())

    def is_doubly_stochastic(self):
        return (self.is_nonnegative()
                and all(s == 1 for s in self.row_sums())
                and all(s == 1 for s in self.col_sums()))

    def support_counts(self):
        """Number of nonzero entries per row."""
        return (self.numer != 0).sum(axis=1)

    def to_fractions(self):
        return [[Fraction(int(x), self.denom) for x in row] for row in self.numer]

    def dump(self):
        """Rows of ``"p/q"`` strings (integers without a slash)."""
        return [[_fmt(x) for x in row] for row in self.to_fractions()]


def _shrink(a):
    """Back to int64 when every entry fits."""
    if a.dtype == object:
        if a.size == 0 or max(abs(int(x)) for x in a.flat) < _SAFE:
            return a.astype(np.int64)
    return a


def _fmt(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rotation_average(n, shifts):
    """``(1/len) * sum P_c`` for rotations ``x -> x + c`` of ``Z_n``."""
    base = np.arange(n, dtype=np.int64)
    w = Fraction(1, len(shifts))
    return RationalMatrix.from_weighted_perms([(w, (base + c) % n) for c in shifts], n)


# ----------------------------------------------------------------- joinings

@dataclass(frozen=True, eq=False)
class JoiningMatrix:
    """Self-joining of a factor, ``matrix[a, b] = nu(A_a x A_b)``.

    ``domain`` lists the representative point of each factor atom (the least
    point of each orbit), and ``factor_map`` sends every point to its atom index.
    """

    matrix: RationalMatrix
    domain: np.ndarray
    factor_map: np.ndarray
    factor_transformation: np.ndarray  # induced map on atom indices

    @property
    def size(self):
        return self.matrix.shape[0]

    @property
    def valuedness(self):
        counts = self.matrix.support_counts()
        return int(counts.max()) if counts.size else 0

    def marginals_uniform(self):
        target = Fraction(1, self.size)
        return (all(s == target for s in self.matrix.row_sums())
                and all(s == target for s in self.matrix.col_sums()))

    def markov(self):
        """The Markov operator ``J`` (row-stochastic): ``size * matrix``."""
        return self.matrix.scale(self.size)

    def invariance_witness(self):
        """First ``(a, b)`` with ``nu(T a, T b) != nu(a, b)``, else ``None``."""
        t = self.factor_transformation
        moved = self.matrix.numer[np.ix_(t, t)]
        bad = np.argwhere(moved != self.matrix.numer)
        return tuple(int(v) for v in bad[0]) if len(bad) else None


def _orbit_domain(phi):
    labels = P.cycle_labels(phi)
    domain = np.unique(labels)
    index = np.full(phi.size, -1, dtype=np.int64)
    index[domain] = np.arange(domain.size)
    return domain, index[labels]


def _period(perm):
    lengths = np.unique(P.cycle_lengths(perm))
    return lcm(*(int(x) for x in lengths)), lengths


def off_diagonal_joining(phi, perm, base=None):
    """Joining of the factor by ``<phi>``-invariant sets, carried by the graph of ``perm``.

    ``nu(A x B) = mu(A ∩ perm^-1 B)``.  The factor is that of ``base``
    (default ``perm^p`` with ``p`` the order of ``phi``); ``base`` must commute
    with ``phi`` and ``perm`` must commute with ``base``.
    """
    phi = P.as_perm(phi)
    try:
        perm = P.as_perm(perm)
    except ValueError as exc:
        raise SpeclabError(f"not measure preserving: {exc}") from None
    if perm.size != phi.size:
        raise ValueError("phi and perm act on different spaces")
    p, _ = _period(phi)
    base = P.power(perm, p) if base is None else P.as_perm(base)
    if not np.array_equal(P.compose(base, phi), P.compose(phi, base)):
        raise NotCommutingError("base transformation does not commute with phi")
    if not np.array_equal(P.compose(perm, base), P.compose(base, perm)):
        raise NotCommutingError("perm does not commute with the base transformation")

    domain, atom = _orbit_domain(phi)
    counts = np.zeros((domain.size, domain.size), dtype=np.int64)
    np.add.at(counts, (atom, atom[perm]), 1)
    induced = atom[base[domain]]
    return JoiningMatrix(RationalMatrix(counts, phi.size), domain, atom, induced)


# ------------------------------------------------------------------ markov

@dataclass(frozen=True, eq=False)
class MarkovDecomposition:
    """``M = alpha I + (1 - alpha) Q`` with ``Q`` zero-diagonal doubly stochastic."""

    alpha: Fraction
    Q: object  # RationalMatrix or None when alpha == 1
    size: int

    @property
    def valuedness(self):
        if self.alpha == 0:
            return None
        n = 1 / self.alpha
        return int(n) if n.denominator == 1 else None

    def recompose(self):
        eye = RationalMatrix.identity(self.size).scale(self.alpha)
        if self.Q is None:
            return eye
        return eye + self.Q.scale(1 - self.alpha)


def markov_decompose(M):
    M = M if isinstance(M, RationalMatrix) else RationalMatrix.from_fractions(M)
    n, cols = M.shape
    if n != cols:
        raise ValueError("Markov operator must be square")
    if not M.is_doubly_stochastic():
        raise SpeclabError("matrix is not doubly stochastic")
    diag = M.diagonal()
    alpha = diag[0] if diag else Fraction(1)
    for i, d in enumerate(diag):
        if d != alpha:
            raise SpeclabError(
                f"diagonal is not constant (entry {i} is {d}, entry 0 is {alpha}): "
                "not a composition of a finite-valued graph with its adjoint"
            )
    eye = RationalMatrix.identity(n)
    if alpha == 1:
        if M != eye:
            raise SpeclabError("unit diagonal but M is not the identity")
        return MarkovDecomposition(alpha, None, n)
    Q = (M - eye.scale(alpha)).scale(1 / (1 - alpha))
    if any(Q.diagonal()) or not Q.is_doubly_stochastic():
        raise SpeclabError("remainder Q is not a zero-diagonal doubly stochastic matrix")
    return MarkovDecomposition(alpha, Q, n)


def adjoint_decompositions(J):
    """Decompose ``J* J`` and ``J J*``; their diagonal weights must agree."""
    left = markov_decompose(J.T @ J)
    right = markov_decompose(J @ J.T)
    if left.alpha != right.alpha:
        raise SpeclabError(f"J*J has weight {left.alpha} but JJ* has {right.alpha}")
    return left, right


# ----------------------------------------------------------------- graphs

@dataclass(frozen=True)
class DisjointnessVerdict:
    disjoint: bool
    coincidences: tuple  # ((i, j, x), ...) with perms[i][x] == perms[j][x]


def graph_disjointness(perms, rotation):
    """Pairwise disjointness of graphs of maps commuting with an ergodic rotation."""
    rotation = P.as_perm(rotation)
    if len(P.cycle_lengths(rotation)) != 1:
        raise ValueError("rotation is not ergodic (more than one cycle)")
    perms = [P.as_perm(s) for s in perms]
    for i, s in enumerate(perms):
        if not np.array_equal(P.compose(s, rotation), P.compose(rotation, s)):
            raise NotCommutingError(f"map {i} does not commute with the rotation")
    hits = []
    for i in range(len(perms)):
        for j in range(i + 1, len(perms)):
            same = np.flatnonzero(perms[i] == perms[j])
            if same.size:
                hits.append((i, j, int(same[0])))
    return DisjointnessVerdict(not hits, tuple(hits))


@dataclass(frozen=True, eq=False)
class MultivaluedGraph:
    p: int
    domain: np.ndarray
    graph: np.ndarray  # (len(domain), p) points of the domain
    witnesses: tuple  # domain points whose p images are not distinct

    @property
    def distinct(self):
        return not self.witnesses


def multivalued_graph_check(phi, R, p=None):
    """The map ``x -> (pi(R x), pi(R phi x), ..., pi(R phi^(p-1) x))`` on a domain.

    ``pi`` projects a point to the representative of its ``phi``-orbit, i.e.
    ``pi(y) = phi^(n(y)) y`` lands in the fundamental domain ``D`` of least
    representatives.  Reports every ``x`` in ``D`` whose ``p`` images collide.
    """
    phi, R = P.as_perm(phi), P.as_perm(R)
    period, lengths = _period(phi)
    if p is None:
        p = period
    if lengths.size != 1 or int(lengths[0]) != p:
        raise SpeclabError(
            f"phi does not act freely with order {p} (cycle lengths {lengths.tolist()}); "
            "no fundamental domain"
        )
    domain, atom = _orbit_domain(phi)
    columns = []
    shifted = domain.copy()
    for _ in range(p):
        columns.append(domain[atom[R[shifted]]])
        shifted = phi[shifted]
    graph = np.stack(columns, axis=1)
    witnesses = tuple(int(x) for x, row in zip(domain, graph) if len(set(row.tolist())) < p)
    return MultivaluedGraph(p, domain, graph, witnesses)
