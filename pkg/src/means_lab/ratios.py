"""The ratio functions whose ranges are exactly the valid weight intervals
of the weighted-mean bounds, the auxiliary sign functions used to pin the
geometric-quadratic pair, and the sharp constants themselves.

phi_hq(t) is (Q-M)/(Q-H) after the substitutions x = (a-b)/(a+b), x = sinh(t);
phi_hc(t) is (C-M)/(C-H); ratio_gq(x) is (Q-M)/(Q-G).  Each is a quotient of
two odd power series, so near the removable 0/0 point at the origin the
closed forms lose roughly 2*log10(1/t) digits to cancellation; below
``SERIES_SWITCH`` they are evaluated from truncated series instead.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum, unique

from .exceptions import DomainError
from .means import stable_asinh
from .series import CoefficientKind, solve_p0, truncated_quotient

__all__ = [
    "SharpConstants",
    "sharp_constants",
    "RatioFunctionKind",
    "Endpoint",
    "ASINH_ONE",
    "SERIES_SWITCH",
    "phi_hq",
    "phi_hc",
    "ratio_gq",
    "evaluate_ratio_function",
    "ratio_function_domain",
    "limit_at",
    "endpoint_value",
    "f_p",
    "g_p",
    "h_onethird",
    "h_lambda0",
    "mu_lambda0",
    "locate_h_lambda0_sign_change",
]

# asinh(1) = log(1 + sqrt(2)), the upper end of the t-domain.
ASINH_ONE = math.asinh(1.0)

# Below this argument the quotients switch to truncated series; at the
# switch the closed forms still carry ~3*eps/t^2 ~ 1.7e-12 relative error,
# the series ~1e-20.
SERIES_SWITCH = 0.02

_SERIES_TERMS = 10


@dataclass(frozen=True)
class SharpConstants:
    """The sharp weights of the three double inequalities, plus the shared
    endpoint constant lambda0 and the exponent p0 of the generalized-log
    sandwich."""

    alpha1: float
    beta1: float
    alpha2: float
    beta2: float
    alpha3: float
    beta3: float
    lambda0: float
    p0: float


@functools.cache
def sharp_constants() -> SharpConstants:
    lambda0 = 1.0 - 1.0 / (math.sqrt(2.0) * ASINH_ONE)
    return SharpConstants(
        alpha1=2.0 / 9.0,
        beta1=lambda0,
        alpha2=1.0 / 3.0,
        beta2=lambda0,
        alpha3=1.0 - 1.0 / (2.0 * ASINH_ONE),
        beta3=5.0 / 12.0,
        lambda0=lambda0,
        p0=solve_p0(1e-12),
    )


@unique
class RatioFunctionKind(Enum):
    PHI_HQ = "phi-hq"
    PHI_HC = "phi-hc"
    RATIO_GQ = "ratio-gq"


@unique
class Endpoint(Enum):
    LOWER = "lower"
    UPPER = "upper"


def _phi_hq_closed(t: float) -> float:
    ch = math.cosh(t)
    sh = math.sinh(t)
    sh_half = math.sinh(0.5 * t)
    # cosh(2t)/2 + cosh(t) - 3/2 == sinh(t)^2 + 2*sinh(t/2)^2, cancellation-free
    return (t * ch - sh) / (t * (sh * sh + 2.0 * sh_half * sh_half))


def phi_hq(t: float) -> float:
    """(Q-M)/(Q-H) in the t-coordinate; strictly decreasing on
    (0, log(1+sqrt(2))) from 2/9 down to lambda0."""
    if not (isinstance(t, (int, float)) and 0.0 < t < ASINH_ONE):
        raise DomainError(f"phi_hq needs 0 < t < log(1+sqrt(2)), got {t!r}")
    if t < SERIES_SWITCH:
        return truncated_quotient(CoefficientKind.A, CoefficientKind.B, t, _SERIES_TERMS)
    return _phi_hq_closed(t)


def _phi_hc_closed(t: float) -> float:
    ch = math.cosh(t)
    sh = math.sinh(t)
    # numerator t*(cosh(2t)+1) - 2*sinh(t) == 2*(t*cosh(t)^2 - sinh(t)),
    # denominator 2t*(cosh(2t)-1) == 4t*sinh(t)^2
    return (t * ch * ch - sh) / (2.0 * t * sh * sh)


def phi_hc(t: float) -> float:
    """(C-M)/(C-H) in the t-coordinate; even, strictly increasing on
    (0, log(1+sqrt(2))) from 5/12 up to 1 - 1/(2 log(1+sqrt(2)))."""
    if not isinstance(t, (int, float)):
        raise DomainError(f"phi_hc needs a real argument, got {t!r}")
    u = abs(t)
    if not 0.0 < u < ASINH_ONE:
        raise DomainError(f"phi_hc needs 0 < |t| < log(1+sqrt(2)), got {t!r}")
    if u < SERIES_SWITCH:
        return truncated_quotient(CoefficientKind.C, CoefficientKind.D, u, _SERIES_TERMS)
    return _phi_hc_closed(u)


# Series of (sqrt(1+x^2)*asinh(x) - x)/x^3 and of
# ((sqrt(1+x^2)-sqrt(1-x^2))*asinh(x))/x^3, exact rational coefficients.
_GQ_NUM_COEFFS = (
    1.0 / 3.0, -2.0 / 15.0, 8.0 / 105.0, -16.0 / 315.0, 128.0 / 3465.0,
    -256.0 / 9009.0, 1024.0 / 45045.0, -2048.0 / 109395.0,
)
_GQ_DEN_COEFFS = (
    1.0, -1.0 / 6.0, 1.0 / 5.0, -11.0 / 168.0, 17.0 / 180.0,
    -137.0 / 3696.0, 269.0 / 4680.0, -173.0 / 7040.0,
)


def _poly(coeffs, s: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def _ratio_gq_closed(x: float) -> float:
    s1 = math.sqrt(1.0 + x * x)
    s2 = math.sqrt(1.0 - x * x)
    ah = stable_asinh(x)
    # s1 - s2 == 2x^2/(s1+s2), cancellation-free
    return (s1 * ah - x) / ((2.0 * x * x / (s1 + s2)) * ah)


def ratio_gq(x: float) -> float:
    """(Q-M)/(Q-G) in the gap coordinate; range (lambda0, 1/3) on (0, 1)
    with the endpoints attained in the limits."""
    if not (isinstance(x, (int, float)) and 0.0 < x < 1.0):
        raise DomainError(f"ratio_gq needs 0 < x < 1, got {x!r}")
    if x < SERIES_SWITCH:
        s = x * x
        return _poly(_GQ_NUM_COEFFS, s) / _poly(_GQ_DEN_COEFFS, s)
    return _ratio_gq_closed(x)


def ratio_function_domain(kind: RatioFunctionKind) -> tuple[float, float]:
    """Open domain endpoints of a ratio function's argument."""
    if kind is RatioFunctionKind.RATIO_GQ:
        return (0.0, 1.0)
    return (0.0, ASINH_ONE)


def evaluate_ratio_function(kind: RatioFunctionKind, t: float) -> float:
    if kind is RatioFunctionKind.PHI_HQ:
        return phi_hq(t)
    if kind is RatioFunctionKind.PHI_HC:
        return phi_hc(t)
    if kind is RatioFunctionKind.RATIO_GQ:
        return ratio_gq(t)
    raise DomainError(f"unknown ratio function {kind!r}")


def limit_at(kind: RatioFunctionKind, end: Endpoint) -> float:
    """Closed-form endpoint limits: these are the sharp constants, exposed
    directly rather than extrapolated."""
    c = sharp_constants()
    table = {
        (RatioFunctionKind.PHI_HQ, Endpoint.LOWER): c.alpha1,
        (RatioFunctionKind.PHI_HQ, Endpoint.UPPER): c.lambda0,
        (RatioFunctionKind.PHI_HC, Endpoint.LOWER): c.beta3,
        (RatioFunctionKind.PHI_HC, Endpoint.UPPER): c.alpha3,
        (RatioFunctionKind.RATIO_GQ, Endpoint.LOWER): c.alpha2,
        (RatioFunctionKind.RATIO_GQ, Endpoint.UPPER): c.lambda0,
    }
    try:
        return table[(kind, end)]
    except KeyError:
        raise DomainError(f"unknown ratio function/endpoint {kind!r}/{end!r}") from None


def endpoint_value(kind: RatioFunctionKind, end: Endpoint) -> float:
    """Continuous-extension value at a domain endpoint, computed numerically
    from the defining expressions (the recovery-side counterpart of the
    closed-form limit_at)."""
    if end is Endpoint.LOWER:
        # at 0 the common t^3 factor cancels: the quotient of leading terms
        if kind is RatioFunctionKind.PHI_HQ:
            return truncated_quotient(CoefficientKind.A, CoefficientKind.B, 0.0, 1)
        if kind is RatioFunctionKind.PHI_HC:
            return truncated_quotient(CoefficientKind.C, CoefficientKind.D, 0.0, 1)
        return _GQ_NUM_COEFFS[0] / _GQ_DEN_COEFFS[0]
    if kind is RatioFunctionKind.PHI_HQ:
        return _phi_hq_closed(ASINH_ONE)
    if kind is RatioFunctionKind.PHI_HC:
        return _phi_hc_closed(ASINH_ONE)
    return _ratio_gq_closed(1.0)


# --- auxiliary sign functions -------------------------------------------

_ASINH_DEFICIT_COEFFS = (
    1.0 / 6.0, -3.0 / 40.0, 5.0 / 112.0, -35.0 / 1152.0, 63.0 / 2816.0,
    -231.0 / 13312.0, 143.0 / 10240.0, -6435.0 / 557056.0, 12155.0 / 1245184.0,
    -46189.0 / 5505024.0, 88179.0 / 12058624.0,
)


def _asinh_deficit(x: float) -> float:
    """x - asinh(x), computed with full relative accuracy also for small x
    where the direct subtraction would cancel."""
    if x < 0.1:
        return x * x * x * _poly(_ASINH_DEFICIT_COEFFS, x * x)
    return x - stable_asinh(x)


def _check_unit_interval(x, closed: bool = True) -> float:
    lo_ok = x >= 0.0 if closed else x > 0.0
    if not (isinstance(x, (int, float)) and lo_ok and x <= 1.0):
        raise DomainError(f"argument must lie in the unit interval, got {x!r}")
    return float(x)


def f_p(p: float, x: float) -> float:
    """asinh(x) - x/(sqrt(1+x^2) - p(sqrt(1+x^2) - sqrt(1-x^2))): negative
    on (0,1) for p = 1/3, positive for p = lambda0.

    Rearranged as x*(den-1)/den - (x - asinh(x)) so both O(x^3) pieces keep
    full relative accuracy; the naive form loses the sign for x below ~1e-3.
    """
    if not (isinstance(p, (int, float)) and 0.0 < p < 1.0):
        raise DomainError(f"f_p needs p in (0, 1), got {p!r}")
    x = _check_unit_interval(x)
    if x == 0.0:
        return 0.0
    s1 = math.sqrt(1.0 + x * x)
    s2 = math.sqrt(1.0 - x * x)
    den = s1 - p * (s1 - s2)
    assert den > 0.0, "weighted sqrt denominator must stay positive for p in (0,1)"
    # den - 1 = (1-p)(s1-1) - p(1-s2), each factor cancellation-free
    den_minus_1 = x * x * ((1.0 - p) / (1.0 + s1) - p / (1.0 + s2))
    return x * den_minus_1 / den - _asinh_deficit(x)


def g_p(p: float, x: float) -> float:
    """Numerator of f_p's derivative: sign analysis auxiliary."""
    if not (isinstance(p, (int, float)) and 0.0 < p < 1.0):
        raise DomainError(f"g_p needs p in (0, 1), got {p!r}")
    x = _check_unit_interval(x)
    s1 = math.sqrt(1.0 + x * x)
    s2 = math.sqrt(1.0 - x * x)
    w = s1 + p * (s2 - s1)
    return s2 * w * w - s2 - p * (s1 - s2)


def h_onethird(x: float) -> float:
    """Scaled derivative factor of g at weight 1/3; strictly negative on (0,1]."""
    x = _check_unit_interval(x)
    s1 = math.sqrt(1.0 + x * x)
    s2 = math.sqrt(1.0 - x * x)
    return 14.0 / (9.0 * (s1 + s2)) - (s1 + s2) - s2 / 3.0


def h_lambda0(x: float) -> float:
    """Scaled derivative factor of g at weight lambda0; positive then
    negative on (0, 1) with a single sign change."""
    x = _check_unit_interval(x)
    lam = sharp_constants().lambda0
    s1 = math.sqrt(1.0 + x * x)
    s2 = math.sqrt(1.0 - x * x)
    sq = x * x
    first = (2.0 - 3.0 * lam - 2.0 * lam * lam) - (3.0 - 6.0 * lam) * sq
    second = (3.0 * lam - 2.0 * lam * lam) + (6.0 * lam - 6.0 * lam * lam) * sq
    return first * s1 - second * s2


def mu_lambda0(x: float) -> float:
    """Scaled derivative factor of h_lambda0; strictly negative on (0, 0.9]."""
    if not (isinstance(x, (int, float)) and 0.0 <= x <= 0.9):
        raise DomainError(f"mu_lambda0 needs x in [0, 0.9], got {x!r}")
    lam = sharp_constants().lambda0
    s1 = math.sqrt(1.0 + x * x)
    s2 = math.sqrt(1.0 - x * x)
    sq = x * x
    first = (18.0 * lam - 18.0 * lam * lam) * sq - (9.0 * lam - 10.0 * lam * lam)
    second = (9.0 - 18.0 * lam) * sq + (4.0 - 9.0 * lam + 2.0 * lam * lam)
    return first * s1 - second * s2


def locate_h_lambda0_sign_change(grid_points: int = 10_000, tol: float = 1e-12) -> float:
    """The unique root x0 of h_lambda0 in (0, 0.9): grid scan to isolate the
    bracket (verifying there is exactly one sign change), then bisection."""
    if grid_points < 10:
        raise DomainError("need at least 10 grid points")
    if tol <= 0.0:
        raise DomainError("tolerance must be positive")
    xs = [0.9 * k / grid_points for k in range(grid_points + 1)]
    values = [h_lambda0(x) for x in xs]
    brackets = [i for i in range(grid_points) if values[i] > 0.0 >= values[i + 1]]
    flips = [i for i in range(grid_points) if (values[i] > 0.0) != (values[i + 1] > 0.0)]
    if len(brackets) != 1 or len(flips) != 1:
        raise DomainError(f"expected exactly one sign change on (0, 0.9), found {len(flips)}")
    lo, hi = xs[brackets[0]], xs[brackets[0] + 1]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if h_lambda0(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
