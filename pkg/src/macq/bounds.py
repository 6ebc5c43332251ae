"""Exact counting quantities and conjectured round bounds.

Everything here is pure integer mathematics except claimed_bound_analytic,
which compares a transcendental threshold using certified interval
arithmetic: the inequality is evaluated at 120 bits (about 36 significant
digits) and the precision doubles until the interval no longer straddles
zero.  For integer arguments the two sides are never exactly equal, so the
escalation terminates.
"""

from __future__ import annotations

import math
from enum import Enum

from mpmath import iv

from .errors import DomainError, MacqError

_START_PREC_BITS = 120
_MAX_PREC_BITS = 4000


def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer; arguments must satisfy 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binomial needs 0 <= k <= n, got n={n} k={k}")
    return math.comb(n, k)


def info_lower_bound(n: int, d: int) -> int:
    """Smallest t with (d+2)**t >= C(n,d), by exact integer comparison.

    This treats every round as a (d+2)-way split of the C(n,d) possible live
    sets.  Beware: a single round can actually distinguish up to |query| + 2
    outcomes, so for d = 1 and n >= 4 this quantity exceeds the true optimum;
    the report module flags exactly that discrepancy.
    """
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got n={n} d={d}")
    target = binomial(n, d)
    t = 0
    power = 1
    while power < target:
        power *= d + 2
        t += 1
    return t


def path_count_bound(x: int, d: int) -> int:
    """Number of feedback paths of length at most x with exactly d reveals.

    Counts colored sequences: length h in d..x, d positions black carrying
    distinct ordered station labels (d! orders), every other position one of
    two red symbols; in closed form  sum_h C(h,d) * 2**(h-d) * d!.
    """
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    if x < d:
        raise DomainError(f"need x >= d, got x={x} d={d}")
    factor = math.factorial(d)
    return sum(math.comb(h, d) * (1 << (h - d)) * factor for h in range(d, x + 1))


class GrowthFactor(Enum):
    """Ordering factor used by the combinatorial threshold: d! or d**d."""

    FACTORIAL = "factorial"
    POWER = "power"


def claimed_bound_combinatorial(n: int, d: int, factor: GrowthFactor) -> int:
    """Smallest x >= d with C(x,d) * 2**(x+1-d) * F >= C(n,d).

    F is d! or d**d per ``factor``.  Found by a forward scan; the left side
    is nondecreasing in x, so the first hit is the threshold.
    """
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got n={n} d={d}")
    if not isinstance(factor, GrowthFactor):
        raise DomainError(f"factor must be a GrowthFactor, got {factor!r}")
    scale = math.factorial(d) if factor is GrowthFactor.FACTORIAL else d**d
    target = binomial(n, d)
    x = d
    while math.comb(x, d) * (1 << (x + 1 - d)) * scale < target:
        x += 1
    return x


def claimed_bound_analytic(n: int, d: int) -> int:
    """Smallest integer x >= 1 with x + d*lg2(x) >= d*lg2(n/(d*e)) - d + 1.

    The right side is d*lg2(n) - d*lg2(d) - d*lg2(e) - d + 1; both sides are
    compared with certified interval arithmetic (see module docstring).
    """
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got n={n} d={d}")
    if n < 2:
        raise DomainError(f"the analytic threshold needs n >= 2, got n={n}")
    x = 1
    while not _analytic_threshold_holds(n, d, x):
        x += 1
    return x


def _analytic_threshold_holds(n: int, d: int, x: int) -> bool:
    prec_bits = _START_PREC_BITS
    saved = iv.prec
    try:
        while prec_bits <= _MAX_PREC_BITS:
            iv.prec = prec_bits
            lg_two = iv.log(2)
            rhs = d * iv.log(n) / lg_two - d * iv.log(d) / lg_two - d / lg_two - d + 1
            lhs = x + d * iv.log(x) / lg_two
            difference = lhs - rhs
            if difference.a > 0:
                return True
            if difference.b < 0:
                return False
            prec_bits *= 2
        raise MacqError(
            f"interval comparison failed to resolve at {_MAX_PREC_BITS} bits "
            f"for n={n} d={d} x={x}"
        )
    finally:
        iv.prec = saved
