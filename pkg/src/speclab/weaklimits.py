"""Rigidity and WL(k) certificates on truncated product models.

A weak limit ``U^{n_i} -> L`` restricted to a finite level is eventual exact
equality of permutations, and for rotations it depends only on ``n`` modulo
the rotation order.  Each check below therefore has two routes:

* arithmetic: the set of good ``n`` is itself a progression, and the claim is
  that the given progression is contained in it;
* direct: the permutations are materialized and compared for one full period
  of progression members (capped by ``sample``).

The certificate records both and refuses to certify if they disagree.
"""
from dataclasses import dataclass, field
from math import gcd, lcm, prod

import numpy as np

from speclab import perm as P
from speclab.arithmetic import (
    ArithmeticProgression,
    refine_progression,
    solve_alignment,
)
from speclab.errors import NoSolutionError, SpeclabError
from speclab.models import ProductModel, truncate
from speclab.spectral import oracle_profile

__all__ = [
    "WLCertificate",
    "StageResult",
    "rigidity_progression",
    "check_rigidity",
    "stage_target",
    "wl_progressions",
    "check_wl",
]

DEFAULT_SAMPLE = 64


@dataclass(frozen=True)
class StageResult:
    factors: int  # number of tensor factors R_1 ... R_j in this stage
    exponent_prefix: int  # p_1 ... p_{j-1}
    progression: ArithmeticProgression
    target: ArithmeticProgression
    verdict: bool
    threshold: object  # least member n past which the claim holds, or None
    checked: tuple  # ((n, direct_ok), ...)
    decomposition_ok: bool
    product_simple: bool
    witness: object = None  # first failing n, if any


@dataclass(frozen=True)
class WLCertificate:
    level: object
    limit: str
    verdict: bool
    threshold: object
    verdicts: tuple = ()
    vacuous: bool = False
    stages: tuple = ()
    notes: tuple = field(default=())

    @property
    def threshold_index(self):
        return 0 if self.threshold is not None else None


def rigidity_progression(order, multiplier=1):
    """``{n >= 0 : order | multiplier * n}``, i.e. ``R^(multiplier*n) = I``."""
    return ArithmeticProgression(0, order // gcd(order, multiplier))


def _sample_members(progression, period, sample):
    """Members ``>= 1`` to check directly, and whether they cover a full period."""
    full = period // gcd(progression.modulus, period)
    count = min(full, DEFAULT_SAMPLE if sample is None else sample)
    return progression.take(max(count, 1), start=1), count >= full


def check_rigidity(model: ProductModel, progression, k, sample=None):
    """Does ``R^n`` converge to the identity along ``progression`` at level ``k``?"""
    group, rotation = truncate(model, k)
    order = group.exponent
    if progression.empty:
        return WLCertificate(level=k, limit="I", verdict=True, threshold=None, vacuous=True,
                             notes=("empty progression: vacuously rigid",))
    target = rigidity_progression(order)
    arithmetic = refine_progression(progression, target) == progression
    members, complete = _sample_members(progression, order, sample)
    R = rotation.permutation
    checked = tuple((n, P.is_identity(P.power(R, n))) for n in members)
    direct = all(ok for _, ok in checked)
    if direct != arithmetic and complete:
        raise SpeclabError(f"rigidity routes disagree at level {k} for {progression}")
    witness = next((n for n, ok in checked if not ok), None)
    notes = (f"criterion: lcm {order} divides every member",)
    if witness is not None:
        notes += (f"FAIL at n={witness}",)
    return WLCertificate(
        level=k,
        limit="I",
        verdict=arithmetic,
        threshold=members[0] if arithmetic else None,
        verdicts=checked,
        notes=notes,
    )


def _rotations(models, level):
    """Level truncations; an int level is clipped to each model's depth."""
    if isinstance(level, int):
        levels = [min(level, m.depth) for m in models]
    else:
        levels = list(level)
        if len(levels) != len(models):
            raise ValueError("one level per model expected")
    return [truncate(m, k)[1] for m, k in zip(models, levels)]


def stage_target(orders, primes, j):
    """Members ``n`` for which stage ``j`` holds exactly.

    Stage ``j`` (``2 <= j <= k``) claims
    ``(R_1 x ... x R_j)^(p_1...p_{j-1} n) = I x ... x I x R_j``: every ``R_i``
    with ``i < j`` is killed and ``R_j`` survives to the first power.  The
    alignment ``p_1...p_{j-1} n = p_j m + 1`` is required as well, so that the
    power splits as ``T_j^m R_j``.
    """
    c = prod(primes[: j - 1])
    try:
        target = solve_alignment(c, lcm(orders[j - 1], primes[j - 1])).progression
    except NoSolutionError:
        return ArithmeticProgression.none()
    for o in orders[: j - 1]:
        target = refine_progression(target, rigidity_progression(o, c))
    return target


def wl_progressions(models, primes, level=1):
    """Nested stage progressions ``n(2) ⊃ n(3) ⊃ ...`` built by congruences.

    ``n(1)`` is the rigidity set of ``T_1 = R_1^{p_1}``; each later stage
    refines the previous one with the alignment ``p_1...p_{j-1} n = p_j m + 1``,
    rigidity of ``T_j`` along ``m`` and rigidity of the earlier factors.
    Raises :class:`NoSolutionError` if a stage becomes empty.
    """
    rotations = _rotations(list(models), level)
    orders = [r.order for r in rotations]
    primes = [int(p) for p in primes]
    if len(primes) != len(orders):
        raise ValueError(f"{len(orders)} models but {len(primes)} primes")
    current = rigidity_progression(orders[0], primes[0])
    out = []
    for j in range(2, len(orders) + 1):
        c = prod(primes[: j - 1])
        if gcd(c, primes[j - 1]) != 1:
            raise NoSolutionError(f"p_1...p_{j - 1} = {c} shares a factor with p_{j} = {primes[j - 1]}")
        current = refine_progression(current, solve_alignment(c, primes[j - 1]).progression)
        current = refine_progression(current, stage_target(orders, primes, j))
        if current.empty:
            raise NoSolutionError(f"stage {j} admits no aligned rigid sequence")
        out.append(current)
    return out


def check_wl(models, primes, progressions, level=1, sample=None):
    """Verify the WL(k) chain for the tensor product of the level truncations.

    ``progressions[j - 2]`` carries the sequence for stage ``j = 2..k``.
    """
    models = list(models)
    primes = [int(p) for p in primes]
    k = len(models)
    if len(primes) != k:
        raise ValueError(f"{k} models but {len(primes)} primes")
    if k == 1:
        return WLCertificate(level=level, limit="R_1", verdict=True, threshold=None,
                             vacuous=True, notes=("k = 1: no condition",))
    progressions = list(progressions)
    if len(progressions) != k - 1:
        raise ValueError(f"WL({k}) needs {k - 1} progressions, got {len(progressions)}")
    rotations = _rotations(models, level)
    orders = [r.order for r in rotations]
    perms = [r.permutation for r in rotations]
    P.check_cap(prod(p.size for p in perms), "WL product space")

    stages = []
    for j in range(2, k + 1):
        prog = progressions[j - 2]
        if prog.empty:
            raise NoSolutionError(f"stage {j} progression is empty")
        c = prod(primes[: j - 1])
        if gcd(c, primes[j - 1]) != 1:
            raise NoSolutionError(
                f"misaligned primes: {c} and p_{j} = {primes[j - 1]} are not coprime"
            )
        stages.append(_check_stage(perms[:j], orders[:j], primes[:j], prog, sample))

    verdict = all(s.verdict for s in stages)
    threshold = max((s.threshold for s in stages if s.threshold is not None), default=None)
    return WLCertificate(
        level=level,
        limit=" x ".join(["I"] * (k - 1) + [f"R_{k}"]),
        verdict=verdict,
        threshold=threshold if verdict else None,
        verdicts=tuple(v for s in stages for v in s.checked),
        stages=tuple(stages),
    )


def _check_stage(perms, orders, primes, prog, sample):
    j = len(perms)
    c = prod(primes[:-1])
    target = stage_target(orders, primes, j)
    arithmetic = refine_progression(prog, target) == prog

    period = lcm(*orders, primes[-1])
    members, complete = _sample_members(prog, period, sample)
    # companion m >= 0 needs c*n >= 1, i.e. n >= 1; members already start there
    product = P.tensor(*perms)
    limit = P.tensor(*[P.identity(p.size) for p in perms[:-1]], perms[-1])
    checked = []
    decomposition_ok = True
    for n in members:
        limit_ok = bool(np.array_equal(P.power(product, c * n), limit))
        split_ok = _decomposition_holds(perms, primes, n)
        decomposition_ok &= split_ok
        checked.append((n, limit_ok and split_ok))
    checked = tuple(checked)
    direct = all(ok for _, ok in checked)
    if direct != arithmetic and complete:
        raise SpeclabError(f"stage {j}: arithmetic and direct checks disagree on {prog}")

    witness = next((n for n, ok in checked if not ok), None)
    if witness is None and not arithmetic:
        # the failure lies beyond the sampled members; name it from arithmetic
        witness = next(n for n in prog.take(period + 1, start=1) if n not in target)
    return StageResult(
        factors=j,
        exponent_prefix=c,
        progression=prog,
        target=target,
        verdict=arithmetic,
        threshold=members[0] if arithmetic else None,
        checked=checked,
        decomposition_ok=decomposition_ok,
        product_simple=oracle_profile(product).mm == 1,
        witness=witness,
    )


def _decomposition_holds(perms, primes, n):
    """``R_i^(c n) = T_i^(c n / p_i)`` for ``i < j`` and ``R_j^(c n) = T_j^m R_j``.

    Here ``T_i = R_i^{p_i}`` and ``m = (c n - 1) / p_j``.  Only meaningful when
    ``c n == 1 (mod p_j)``; returns False otherwise.
    """
    c = prod(primes[:-1])
    exponent = c * n
    for R, p in zip(perms[:-1], primes[:-1]):
        T = P.power(R, p)
        if not np.array_equal(P.power(R, exponent), P.power(T, exponent // p)):
            return False
    R, p = perms[-1], primes[-1]
    if (exponent - 1) % p:
        return False
    T = P.power(R, p)
    return bool(np.array_equal(P.power(R, exponent), P.compose(P.power(T, (exponent - 1) // p), R)))
