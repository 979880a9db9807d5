"""Numerically stable evaluation of ten bivariate means of positive reals.

Every mean here is symmetric and homogeneous of degree 1, so evaluation is
reduced to the arithmetic mean A = (a+b)/2 times a shape factor that depends
only on the normalized gap x = |a-b|/(a+b).  The shape factors of the
logarithmic, Seiffert and related means are quotients x/f(x) with f one of
asinh, asin, atan, atanh; those are 0/0 at the diagonal and are evaluated
from truncated power series below ``SMALL_GAP`` so that the relative error
stays at the rounding level through the switch region.

The diagonal a = b, excluded from the classical definitions, is defined here
by continuity: every mean returns ``a`` exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, unique

from .exceptions import DomainError

__all__ = [
    "MeanFamily",
    "MeanKind",
    "PositivePair",
    "HARMONIC",
    "GEOMETRIC",
    "LOGARITHMIC",
    "SEIFFERT_FIRST",
    "ARITHMETIC",
    "NEUMAN_SANDOR",
    "SEIFFERT_SECOND",
    "QUADRATIC",
    "CONTRA_HARMONIC",
    "CHAIN_ORDER",
    "generalized_log",
    "as_pair",
    "normalized_gap",
    "pair_from_gap",
    "evaluate_mean",
    "mean_shape",
    "stable_asinh",
]

# Gap below which the 0/0-shaped quotients switch to truncated series.
SMALL_GAP = 1e-4

# |p| and |p+1| windows inside which the generalized logarithmic mean uses
# the identric / logarithmic special cases.
_GLOG_SPECIAL_EPS = 1e-8

# |p| below which the generalized log mean uses the cumulant expansion of
# log((u^q - v^q)/(q(u-v))) around the identric point; above it, the direct
# log-space formula is accurate to ~eps/|p|.
_GLOG_CUMULANT_LIMIT = 3e-3

_LARGEST_GAP = math.nextafter(1.0, 0.0)


@unique
class MeanFamily(Enum):
    HARMONIC = "H"
    GEOMETRIC = "G"
    LOGARITHMIC = "L"
    SEIFFERT_FIRST = "P"
    ARITHMETIC = "A"
    NEUMAN_SANDOR = "M"
    SEIFFERT_SECOND = "T"
    QUADRATIC = "Q"
    CONTRA_HARMONIC = "C"
    GENERALIZED_LOG = "Lp"


@dataclass(frozen=True)
class MeanKind:
    """A mean family, plus the exponent for the generalized log family."""

    family: MeanFamily
    p: float | None = None

    def __post_init__(self) -> None:
        if self.family is MeanFamily.GENERALIZED_LOG:
            if self.p is None or not math.isfinite(self.p):
                raise DomainError("GeneralizedLog requires a finite exponent p")
        elif self.p is not None:
            raise DomainError(f"{self.family.value} does not take a parameter")

    @property
    def token(self) -> str:
        if self.family is MeanFamily.GENERALIZED_LOG:
            return f"Lp:{self.p:g}"
        return self.family.value


HARMONIC = MeanKind(MeanFamily.HARMONIC)
GEOMETRIC = MeanKind(MeanFamily.GEOMETRIC)
LOGARITHMIC = MeanKind(MeanFamily.LOGARITHMIC)
SEIFFERT_FIRST = MeanKind(MeanFamily.SEIFFERT_FIRST)
ARITHMETIC = MeanKind(MeanFamily.ARITHMETIC)
NEUMAN_SANDOR = MeanKind(MeanFamily.NEUMAN_SANDOR)
SEIFFERT_SECOND = MeanKind(MeanFamily.SEIFFERT_SECOND)
QUADRATIC = MeanKind(MeanFamily.QUADRATIC)
CONTRA_HARMONIC = MeanKind(MeanFamily.CONTRA_HARMONIC)

# The nine parameter-free means in strictly increasing pointwise order
# (for any a != b): H < G < L < P < A < M < T < Q < C.
CHAIN_ORDER = (
    HARMONIC,
    GEOMETRIC,
    LOGARITHMIC,
    SEIFFERT_FIRST,
    ARITHMETIC,
    NEUMAN_SANDOR,
    SEIFFERT_SECOND,
    QUADRATIC,
    CONTRA_HARMONIC,
)


def generalized_log(p: float) -> MeanKind:
    """Generalized logarithmic mean L_p; L_-1 is logarithmic, L_0 identric,
    L_1 arithmetic."""
    return MeanKind(MeanFamily.GENERALIZED_LOG, float(p))


@dataclass(frozen=True)
class PositivePair:
    """An unordered pair of positive reals, the argument of every mean."""

    a: float
    b: float

    def __post_init__(self) -> None:
        for v in (self.a, self.b):
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"pair entries must be finite positive reals, got {v!r}")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    @property
    def lo(self) -> float:
        return min(self.a, self.b)

    @property
    def hi(self) -> float:
        return max(self.a, self.b)


def as_pair(value) -> PositivePair:
    if isinstance(value, PositivePair):
        return value
    try:
        a, b = value
    except (TypeError, ValueError):
        raise DomainError(f"cannot interpret {value!r} as a pair") from None
    return PositivePair(a, b)


def normalized_gap(pair) -> float:
    """|a-b|/(a+b), in [0, 1)."""
    p = as_pair(pair)
    lo, hi = p.lo, p.hi
    s = lo + hi
    if math.isinf(s):
        lo, hi, s = 0.25 * lo, 0.25 * hi, 0.25 * lo + 0.25 * hi
    return min((hi - lo) / s, _LARGEST_GAP)


def pair_from_gap(x: float, scale: float) -> PositivePair:
    """The pair (scale*(1+x), scale*(1-x)), whose normalized gap is x."""
    if not (isinstance(x, (int, float)) and 0.0 <= x < 1.0):
        raise DomainError(f"gap must lie in [0, 1), got {x!r}")
    if not (isinstance(scale, (int, float)) and math.isfinite(scale) and scale > 0):
        raise DomainError(f"scale must be a finite positive real, got {scale!r}")
    return PositivePair(scale * (1.0 + x), scale * (1.0 - x))


def stable_asinh(x: float) -> float:
    """asinh via log1p(x + x^2/(1+sqrt(1+x^2))); log(x + sqrt(1+x^2))
    cancels for x < 0, this form does not."""
    if x < 0.0:
        return -stable_asinh(-x)
    return math.log1p(x + x * x / (1.0 + math.sqrt(1.0 + x * x)))


# --- shape factors ------------------------------------------------------
#
# Each helper returns mean((1+x, 1-x)) for the unit arithmetic mean.  The
# series below are the Maclaurin expansions of f(x)/x truncated after x^6;
# at the SMALL_GAP switch the omitted x^8 term is below 1e-32 relative.


def _shape_neuman_sandor(x: float) -> float:
    if x < SMALL_GAP:
        s = x * x
        return 1.0 / (1.0 + s * (-1.0 / 6.0 + s * (3.0 / 40.0 + s * (-15.0 / 336.0))))
    return x / stable_asinh(x)


def _shape_seiffert_second(x: float) -> float:
    if x < SMALL_GAP:
        s = x * x
        return 1.0 / (1.0 + s * (-1.0 / 3.0 + s * (1.0 / 5.0 + s * (-1.0 / 7.0))))
    return x / math.atan(x)


def _shape_seiffert_first(x: float, v: float) -> float:
    # v is the exact complement 1-x of the gap.
    if x < SMALL_GAP:
        s = x * x
        return 1.0 / (1.0 + s * (1.0 / 6.0 + s * (3.0 / 40.0 + s * (15.0 / 336.0))))
    if x <= 0.5:
        return x / math.asin(x)
    # asin(x) = pi/2 - 2*asin(sqrt((1-x)/2)); keeps full accuracy as x -> 1
    return x / (0.5 * math.pi - 2.0 * math.asin(math.sqrt(0.5 * v)))


def _shape_logarithmic(x: float, v: float) -> float:
    if x < SMALL_GAP:
        s = x * x
        return 1.0 / (1.0 + s * (1.0 / 3.0 + s * (1.0 / 5.0 + s * (1.0 / 7.0))))
    if x <= 0.5:
        return x / math.atanh(x)
    return 2.0 * x / math.log((1.0 + x) / v)


def _half_log_ratio(x: float, v: float) -> float:
    """atanh(x) computed from the exact complement v = 1-x."""
    if x <= 0.5:
        return math.atanh(x)
    return 0.5 * math.log((1.0 + x) / v)


def _log_expm1_ratio(w: float) -> float:
    """log((1 - exp(-w))/w) for w != 0, any sign, without overflow."""
    if w < 0.0:
        return -w + _log_expm1_ratio(-w)
    if w < 1e-3:
        return w * (-0.5 + w * (1.0 / 24.0 - w * w / 2880.0))
    return math.log(-math.expm1(-w) / w)


def _log_near_one(t: float) -> float:
    # t - 1 is exact for t in [0.5, 2] (Sterbenz), so log1p keeps full
    # absolute accuracy where plain log flattens near 1
    return math.log1p(t - 1.0) if t >= 0.5 else math.log(t)


def _glog_shape_cumulant(p: float, x: float, v: float) -> float:
    # Cumulant expansion of log[(u^q - v^q)/(q(u-v))]/p around p = 0, with
    # raw log-moments I_k = S_k - k*I_{k-1}; exact at p = 0 (identric mean).
    # Every ingredient is built from the same u, v floats: mixing x-based
    # logs with the quantized u - v shifts the exponent by ~eps/x.
    u = 1.0 + x
    d = u - v
    if d <= 0.0:
        return 1.0
    lu = _log_near_one(u)
    lv = _log_near_one(v) if v > 0.0 else 0.0
    s_prev_u = u * lu
    s_prev_v = 0.0 if v == 0.0 else v * lv
    moments = [1.0]
    for k in range(1, 6):
        moments.append((s_prev_u - s_prev_v) / d - k * moments[k - 1])
        s_prev_u *= lu
        s_prev_v *= lv
    i1, i2, i3, i4, i5 = moments[1:]
    k1 = i1
    k2 = i2 - i1 * i1
    k3 = i3 - 3.0 * i1 * i2 + 2.0 * i1**3
    k4 = i4 - 4.0 * i1 * i3 - 3.0 * i2 * i2 + 12.0 * i1 * i1 * i2 - 6.0 * i1**4
    k5 = (i5 - 5.0 * i4 * i1 - 10.0 * i3 * i2 + 20.0 * i3 * i1 * i1
          + 30.0 * i2 * i2 * i1 - 60.0 * i2 * i1**3 + 24.0 * i1**5)
    f = k1 + p * (k2 / 2.0 + p * (k3 / 6.0 + p * (k4 / 24.0 + p * k5 / 120.0)))
    return math.exp(f)


def _glog_shape(p: float, x: float, v: float, half_log_ratio: float) -> float:
    """Shape of L_p at gap x; v is the exact complement of x, half_log_ratio
    is atanh(x) (equivalently log(hi/lo)/2 of the underlying pair)."""
    if x == 0.0:
        return 1.0
    if abs(p + 1.0) < _GLOG_SPECIAL_EPS:
        return _shape_logarithmic(x, v)
    if abs(p) < _GLOG_CUMULANT_LIMIT:
        if abs(p) < _GLOG_SPECIAL_EPS:
            p = 0.0
        return _glog_shape_cumulant(p, x, v)
    q = p + 1.0
    w = 2.0 * q * half_log_ratio
    f = (q * math.log1p(x) + _log_expm1_ratio(w) + math.log(half_log_ratio / x)) / p
    return math.exp(f)


def mean_shape(kind: MeanKind, x: float) -> float:
    """Value of the mean on the pair (1+x, 1-x): the scale-free profile used
    by the certification grids.  Requires 0 <= x < 1."""
    if not isinstance(kind, MeanKind):
        raise DomainError(f"not a MeanKind: {kind!r}")
    if not (isinstance(x, (int, float)) and 0.0 <= x < 1.0):
        raise DomainError(f"gap must lie in [0, 1), got {x!r}")
    if x == 0.0:
        return 1.0
    v = 1.0 - x
    fam = kind.family
    if fam is MeanFamily.ARITHMETIC:
        return 1.0
    if fam is MeanFamily.HARMONIC:
        return (1.0 + x) * v
    if fam is MeanFamily.GEOMETRIC:
        return math.sqrt((1.0 + x) * v)
    if fam is MeanFamily.QUADRATIC:
        return math.sqrt(1.0 + x * x)
    if fam is MeanFamily.CONTRA_HARMONIC:
        return 1.0 + x * x
    if fam is MeanFamily.NEUMAN_SANDOR:
        return _shape_neuman_sandor(x)
    if fam is MeanFamily.SEIFFERT_SECOND:
        return _shape_seiffert_second(x)
    if fam is MeanFamily.SEIFFERT_FIRST:
        return _shape_seiffert_first(x, v)
    if fam is MeanFamily.LOGARITHMIC:
        return _shape_logarithmic(x, v)
    return _glog_shape(kind.p, x, v, _half_log_ratio(x, v))


def evaluate_mean(kind: MeanKind, pair) -> float:
    """Evaluate one mean on a pair of positive reals.

    Symmetric bit-exactly (the pair is canonicalized to lo <= hi first),
    homogeneous of degree 1 to rounding accuracy, and between min and max.
    """
    if not isinstance(kind, MeanKind):
        raise DomainError(f"not a MeanKind: {kind!r}")
    p = as_pair(pair)
    lo, hi = p.lo, p.hi
    if lo == hi:
        return lo
    s = lo + hi
    if math.isinf(s):
        # exact power-of-two rescale keeps homogeneity bit-clean
        return 4.0 * evaluate_mean(kind, PositivePair(0.25 * lo, 0.25 * hi))
    x = min((hi - lo) / s, _LARGEST_GAP)
    mean_of_pair = 0.5 * s
    fam = kind.family
    if fam is MeanFamily.ARITHMETIC:
        return mean_of_pair
    if fam is MeanFamily.HARMONIC:
        return 2.0 * lo * (hi / s)
    if fam is MeanFamily.GEOMETRIC:
        return math.sqrt(lo) * math.sqrt(hi)
    if fam is MeanFamily.QUADRATIC:
        return mean_of_pair * math.sqrt(1.0 + x * x)
    if fam is MeanFamily.CONTRA_HARMONIC:
        return mean_of_pair * (1.0 + x * x)
    if fam is MeanFamily.NEUMAN_SANDOR:
        return mean_of_pair * _shape_neuman_sandor(x)
    if fam is MeanFamily.SEIFFERT_SECOND:
        return mean_of_pair * _shape_seiffert_second(x)
    # the remaining families need the gap complement at full relative
    # accuracy; 2*lo/s keeps it accurate where 1-x has already rounded away
    v = 2.0 * lo / s
    if fam is MeanFamily.SEIFFERT_FIRST:
        return mean_of_pair * _shape_seiffert_first(x, v)
    if fam is MeanFamily.LOGARITHMIC:
        if x <= 0.5 or v >= 1e-300:
            return mean_of_pair * _shape_logarithmic(x, v)
        return (hi - lo) / (math.log(hi) - math.log(lo))
    # generalized log
    if x <= 0.5 or v >= 1e-300:
        hlr = _half_log_ratio(x, v)
    else:
        hlr = 0.5 * (math.log(hi) - math.log(lo))
    shape = _glog_shape(kind.p, x, v, hlr)
    if shape > 0.0 or abs(kind.p) < _GLOG_CUMULANT_LIMIT:
        return mean_of_pair * shape
    # shape underflowed; reassemble in log space (possible only for huge
    # |p| combined with an extreme lo/hi ratio)
    q = kind.p + 1.0
    w = 2.0 * q * hlr
    f = (q * math.log1p(x) + _log_expm1_ratio(w) + math.log(hlr / x)) / kind.p
    return math.exp(f + math.log(mean_of_pair))
