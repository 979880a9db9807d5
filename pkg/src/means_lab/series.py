"""Coefficient sequences of the two odd power series behind the ratio
functions, exact ratio-monotonicity verdicts, truncated-series quotients,
and the bisection solver for the (p+1)^(1/p) = 2*log(1+sqrt(2)) root.

Both series pairs share the factor t^(2n+1), which cancels in the quotient;
the quotients here are therefore polynomials in t^2 divided termwise, which
also makes them exact at t = 0 (first-coefficient ratio).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, unique
from fractions import Fraction

from .exceptions import DomainError, EvaluationError

__all__ = [
    "CoefficientKind",
    "Direction",
    "MonotonicityVerdict",
    "EXACT_TERM_LIMIT",
    "coefficient",
    "coefficient_exact",
    "coefficient_float",
    "ratio_difference",
    "ratio_sequence_verdict",
    "truncated_quotient",
    "solve_p0",
]

# Largest index served as an exact rational by coefficient(); beyond it the
# log-space float path is returned.
EXACT_TERM_LIMIT = 20

_LN2 = math.log(2.0)


@unique
class CoefficientKind(Enum):
    """The four coefficient sequences: A_n/B_n form the harmonic-quadratic
    quotient, C_n/D_n the harmonic-contraharmonic one."""

    A = "A"  # 2n / ((2n+1) (2n)!)
    B = "B"  # (2^(2n-1) + 1) / (2n)!
    C = "C"  # 2^(2n)/(2n)! - 2/(2n+1)!
    D = "D"  # 2^(2n+1) / (2n)!


def _check_index(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"coefficient index must be an integer >= 1, got {n!r}")
    return n


def coefficient_exact(kind: CoefficientKind, n: int) -> Fraction:
    """Exact rational value of the n-th coefficient."""
    n = _check_index(n)
    fact = math.factorial(2 * n)
    if kind is CoefficientKind.A:
        return Fraction(2 * n, (2 * n + 1) * fact)
    if kind is CoefficientKind.B:
        return Fraction(2 ** (2 * n - 1) + 1, fact)
    if kind is CoefficientKind.C:
        return Fraction(2 ** (2 * n), fact) - Fraction(2, fact * (2 * n + 1))
    if kind is CoefficientKind.D:
        return Fraction(2 ** (2 * n + 1), fact)
    raise DomainError(f"unknown coefficient kind {kind!r}")


def coefficient_float(kind: CoefficientKind, n: int) -> float:
    """Log-space float value of the n-th coefficient; usable far past the
    point where (2n)! overflows."""
    n = _check_index(n)
    lgf = math.lgamma(2 * n + 1)
    if kind is CoefficientKind.A:
        return math.exp(math.log(2 * n) - math.log(2 * n + 1) - lgf)
    if kind is CoefficientKind.B:
        l1 = (2 * n - 1) * _LN2 - lgf
        return math.exp(l1 + math.log1p(math.exp(-(2 * n - 1) * _LN2)))
    if kind is CoefficientKind.C:
        l1 = 2 * n * _LN2 - lgf
        l2 = _LN2 - math.lgamma(2 * n + 2)
        return math.exp(l1 + math.log1p(-math.exp(l2 - l1)))
    if kind is CoefficientKind.D:
        return math.exp((2 * n + 1) * _LN2 - lgf)
    raise DomainError(f"unknown coefficient kind {kind!r}")


def coefficient(kind: CoefficientKind, n: int):
    """Exact Fraction for n <= EXACT_TERM_LIMIT, float (log-space) beyond."""
    n = _check_index(n)
    if n <= EXACT_TERM_LIMIT:
        return coefficient_exact(kind, n)
    return coefficient_float(kind, n)


def ratio_difference(numerator_kind: CoefficientKind, denominator_kind: CoefficientKind,
                     n: int) -> Fraction:
    """Exact consecutive-ratio difference r_(n+1) - r_n of the coefficient
    ratio sequence r_n = num_n / den_n."""
    n = _check_index(n)
    r_n = coefficient_exact(numerator_kind, n) / coefficient_exact(denominator_kind, n)
    r_next = coefficient_exact(numerator_kind, n + 1) / coefficient_exact(denominator_kind, n + 1)
    return r_next - r_n


@unique
class Direction(Enum):
    STRICTLY_INCREASING = "strictly-increasing"
    STRICTLY_DECREASING = "strictly-decreasing"
    NOT_MONOTONE = "not-monotone"


@dataclass(frozen=True)
class MonotonicityVerdict:
    direction: Direction
    checked_up_to: int
    first_violation: int | None = None


def ratio_sequence_verdict(numerator_kind: CoefficientKind,
                           denominator_kind: CoefficientKind,
                           N: int) -> MonotonicityVerdict:
    """Strict monotonicity verdict for the ratio sequence over n = 1..N.

    All comparisons are exact rational arithmetic: binary64 cannot even
    represent the C/D ratio differences (~4^-n around 1/2) past n ~ 26, so
    no floating comparison is used at any index.
    """
    if not isinstance(N, int) or N < 2:
        raise DomainError(f"need N >= 2 ratios to compare, got {N!r}")
    ratios = []
    for n in range(1, N + 1):
        den = coefficient_exact(denominator_kind, n)
        if den <= 0:
            raise DomainError(f"denominator coefficient {denominator_kind.value}_{n} is not positive")
        ratios.append(coefficient_exact(numerator_kind, n) / den)
    signs = []
    for n in range(N - 1):
        d = ratios[n + 1] - ratios[n]
        signs.append(0 if d == 0 else (1 if d > 0 else -1))
    lead = next((s for s in signs if s != 0), 0)
    if lead == 0:
        return MonotonicityVerdict(Direction.NOT_MONOTONE, N, first_violation=1)
    for i, s in enumerate(signs):
        if s != lead:
            return MonotonicityVerdict(Direction.NOT_MONOTONE, N, first_violation=i + 1)
    direction = Direction.STRICTLY_INCREASING if lead > 0 else Direction.STRICTLY_DECREASING
    return MonotonicityVerdict(direction, N)


def truncated_quotient(numerator_kind: CoefficientKind,
                       denominator_kind: CoefficientKind,
                       t: float, N: int = 40) -> float:
    """(sum_{n<=N} num_n t^(2n+1)) / (sum_{n<=N} den_n t^(2n+1)), with the
    common t^3 factor cancelled so t = 0 returns the first-coefficient
    ratio exactly."""
    if not (isinstance(t, (int, float)) and math.isfinite(t) and abs(t) < 1.5):
        raise DomainError(f"series argument must satisfy |t| < 1.5, got {t!r}")
    if not isinstance(N, int) or N < 1:
        raise DomainError(f"need N >= 1 terms, got {N!r}")
    s = t * t
    num = 0.0
    den = 0.0
    for n in range(N, 0, -1):
        cn = coefficient_exact(numerator_kind, n) if n <= EXACT_TERM_LIMIT \
            else coefficient_float(numerator_kind, n)
        dn = coefficient_exact(denominator_kind, n) if n <= EXACT_TERM_LIMIT \
            else coefficient_float(denominator_kind, n)
        num = num * s + float(cn)
        den = den * s + float(dn)
    if den == 0.0:
        raise EvaluationError("denominator series underflowed to zero")
    return num / den


def solve_p0(tolerance: float) -> float:
    """Bisection root of (p+1)^(1/p) = 2*log(1+sqrt(2)) on [1, 3];
    the left side is strictly decreasing in p, so the root is unique."""
    if not (isinstance(tolerance, (int, float)) and tolerance > 0):
        raise DomainError(f"tolerance must be positive, got {tolerance!r}")
    target = 2.0 * math.log1p(math.sqrt(2.0))

    def residual(p: float) -> float:
        return (p + 1.0) ** (1.0 / p) - target

    lo, hi = 1.0, 3.0
    r_lo, r_hi = residual(lo), residual(hi)
    if not (r_lo > 0.0 > r_hi):
        raise EvaluationError("bisection bracket [1, 3] does not straddle the root")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        r = residual(mid)
        if abs(r) < tolerance:
            return mid
        if r > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= math.ulp(lo):
            break
    mid = 0.5 * (lo + hi)
    if abs(residual(mid)) >= tolerance:
        raise EvaluationError("bisection stalled before reaching the requested tolerance")
    return mid
