"""Grid certification of the weighted-mean bounds, sharpness probes for the
extremal weights, recovery of the sharp constants by extremizing the ratio
functions, and verification of the classical inequality corpus.

Margins are always normalized by the arithmetic mean of the pair (the grids
evaluate the scale-free mean profiles directly, so normalized margins are
identical at every scale).  A normalized margin whose magnitude is below
``STRICTNESS_FLOOR`` is numerically indistinguishable from zero in binary64
and is counted separately instead of deciding a verdict: near the endpoints
where the bounds are sharp the true margins drop below 1e-30.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum, unique

from .exceptions import DomainError
from .means import (
    ARITHMETIC,
    CHAIN_ORDER,
    CONTRA_HARMONIC,
    GEOMETRIC,
    HARMONIC,
    LOGARITHMIC,
    NEUMAN_SANDOR,
    QUADRATIC,
    SEIFFERT_FIRST,
    SEIFFERT_SECOND,
    MeanKind,
    PositivePair,
    evaluate_mean,
    generalized_log,
    mean_shape,
    pair_from_gap,
)
from .ratios import (
    ASINH_ONE,
    Endpoint,
    RatioFunctionKind,
    endpoint_value,
    evaluate_ratio_function,
    ratio_function_domain,
    sharp_constants,
)

__all__ = [
    "Relation",
    "SharpAt",
    "Objective",
    "ConvexCombination",
    "BoundClaim",
    "CertificationReport",
    "SharpnessReport",
    "STRICTNESS_FLOOR",
    "GRID_EDGE",
    "REPORT_ONLY_CORPUS_CLAIMS",
    "THREADS_ENV_VAR",
    "gap_grid",
    "theorem_claims",
    "verify_bound",
    "sharpness_probe",
    "recover_constant",
    "verify_chain",
    "verify_corpus",
]

STRICTNESS_FLOOR = 1e-15

# closest approach of the certification grid to the gap endpoints
GRID_EDGE = 1e-8

THREADS_ENV_VAR = "MEANS_LAB_THREADS"

# normalized margin below which a sharpness witness is not yet considered
# definitive (well above the ~1e-15 evaluation noise)
_VIOLATION_THRESHOLD = 1e-13


@unique
class Relation(Enum):
    """How a convex combination is claimed to compare against M."""

    LESS_THAN_M = "combination < M"
    GREATER_THAN_M = "M < combination"


@unique
class SharpAt(Enum):
    """Which end of the gap domain attains the ratio-function extremum that
    makes the claimed weight sharp."""

    GAP_ZERO = "gap-zero"
    GAP_ONE = "gap-one"


@unique
class Objective(Enum):
    SUPREMUM = "supremum"
    INFIMUM = "infimum"


@dataclass(frozen=True)
class ConvexCombination:
    """w * first + (1-w) * second."""

    weight: float
    first: MeanKind
    second: MeanKind

    def __post_init__(self) -> None:
        if not (isinstance(self.weight, (int, float)) and 0.0 <= self.weight <= 1.0):
            raise DomainError(f"weight must lie in [0, 1], got {self.weight!r}")
        for k in (self.first, self.second):
            if not isinstance(k, MeanKind):
                raise DomainError(f"not a MeanKind: {k!r}")

    def value(self, pair) -> float:
        w = self.weight
        return w * evaluate_mean(self.first, pair) + (1.0 - w) * evaluate_mean(self.second, pair)

    def shape(self, x: float) -> float:
        w = self.weight
        return w * mean_shape(self.first, x) + (1.0 - w) * mean_shape(self.second, x)


@dataclass(frozen=True)
class BoundClaim:
    """A one-sided weighted-mean bound against M with its claimed sharp
    weight and the gap endpoint where sharpness bites."""

    combination: ConvexCombination
    relation: Relation
    claimed_sharp_weight: float
    sharp_at: SharpAt


@dataclass(frozen=True)
class CertificationReport:
    grid_size: int
    min_margin: float
    worst_pair: PositivePair
    holds: bool
    near_zero: int = 0
    seed: int | None = None
    scale: float | None = None


@dataclass(frozen=True)
class SharpnessReport:
    perturbation: float
    witness: PositivePair | None
    violated: bool
    witness_gap: float | None


def theorem_claims(which: str) -> list[tuple[str, BoundClaim]]:
    """The six sharp claims, two per double inequality, keyed by claim id."""
    c = sharp_constants()
    table = {
        "1.1": (HARMONIC, QUADRATIC, c.alpha1, SharpAt.GAP_ZERO, c.beta1, SharpAt.GAP_ONE),
        "1.2": (GEOMETRIC, QUADRATIC, c.alpha2, SharpAt.GAP_ZERO, c.beta2, SharpAt.GAP_ONE),
        "1.3": (HARMONIC, CONTRA_HARMONIC, c.alpha3, SharpAt.GAP_ONE, c.beta3, SharpAt.GAP_ZERO),
    }
    if which not in table:
        raise DomainError(f"unknown theorem {which!r}; expected 1.1, 1.2 or 1.3")
    first, second, alpha, alpha_at, beta, beta_at = table[which]
    lower = BoundClaim(ConvexCombination(alpha, first, second), Relation.LESS_THAN_M, alpha, alpha_at)
    upper = BoundClaim(ConvexCombination(beta, first, second), Relation.GREATER_THAN_M, beta, beta_at)
    return [(f"{which}-lower", lower), (f"{which}-upper", upper)]


def gap_grid(n: int) -> list[float]:
    """n gaps log-dense toward both endpoints: a geometric ladder from
    GRID_EDGE to 0.5 and its mirror 1-x, because every sharp constant lives
    in an endpoint limit and uniform grids under-sample there."""
    if n < 2:
        raise DomainError("grid needs at least 2 points")
    m = n // 2
    lo_count, hi_count = m, n - m
    span = math.log(0.5) - math.log(GRID_EDGE)

    def ladder(count: int) -> list[float]:
        if count == 1:
            return [0.5]
        return [math.exp(math.log(GRID_EDGE) + span * i / (count - 1)) for i in range(count)]

    gaps = ladder(lo_count) + [1.0 - g for g in ladder(hi_count)]
    gaps.sort()
    return gaps


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        raw = os.environ.get(THREADS_ENV_VAR)
        if raw is None:
            return 1
        try:
            workers = int(raw)
        except ValueError:
            raise DomainError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from None
    return max(1, min(workers, os.cpu_count() or 1))


def _margin_shape(claim: BoundClaim, weight: float, x: float) -> float:
    m = mean_shape(NEUMAN_SANDOR, x)
    combo = (weight * mean_shape(claim.combination.first, x)
             + (1.0 - weight) * mean_shape(claim.combination.second, x))
    if claim.relation is Relation.LESS_THAN_M:
        return m - combo
    return combo - m


@dataclass(frozen=True)
class _ScanResult:
    min_margin: float
    worst_x: float
    near_zero: int

    def merge(self, other: "_ScanResult") -> "_ScanResult":
        near = self.near_zero + other.near_zero
        if (other.min_margin, other.worst_x) < (self.min_margin, self.worst_x):
            return _ScanResult(other.min_margin, other.worst_x, near)
        return _ScanResult(self.min_margin, self.worst_x, near)


def _scan_margins(pairs_of_x_and_margin) -> _ScanResult:
    best = _ScanResult(math.inf, 0.5, 0)
    near = 0
    for x, margin in pairs_of_x_and_margin:
        if abs(margin) < STRICTNESS_FLOOR:
            near += 1
            continue
        if (margin, x) < (best.min_margin, best.worst_x):
            best = _ScanResult(margin, x, 0)
    return _ScanResult(best.min_margin, best.worst_x, near)


def verify_bound(claim: BoundClaim, grid_size: int, scale: float = 1.0,
                 workers: int | None = None) -> CertificationReport:
    """Evaluate the claim's normalized margin over an endpoint-dense gap
    grid; holds iff every resolvable margin is positive."""
    if not isinstance(claim, BoundClaim):
        raise DomainError(f"not a BoundClaim: {claim!r}")
    if not isinstance(grid_size, int) or grid_size < 100:
        raise DomainError(f"grid_size must be an integer >= 100, got {grid_size!r}")
    grid = gap_grid(grid_size)
    w = claim.combination.weight
    nworkers = _resolve_workers(workers)

    def scan(chunk: list[float]) -> _ScanResult:
        return _scan_margins((x, _margin_shape(claim, w, x)) for x in chunk)

    if nworkers == 1 or len(grid) < 2 * nworkers:
        result = scan(grid)
    else:
        size = (len(grid) + nworkers - 1) // nworkers
        chunks = [grid[i:i + size] for i in range(0, len(grid), size)]
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            parts = list(pool.map(scan, chunks))
        result = parts[0]
        for part in parts[1:]:
            result = result.merge(part)
    return CertificationReport(
        grid_size=len(grid),
        min_margin=result.min_margin,
        worst_pair=pair_from_gap(result.worst_x, scale),
        holds=math.isinf(result.min_margin) or result.min_margin > 0.0,
        near_zero=result.near_zero,
        scale=scale,
    )


def sharpness_probe(claim: BoundClaim, epsilon: float) -> SharpnessReport:
    """Perturb the claimed sharp weight by epsilon in the falsifying
    direction (lower-bound weights down, upper-bound weights up) and walk a
    geometric ladder toward the sharp endpoint until the bound breaks."""
    if not isinstance(claim, BoundClaim):
        raise DomainError(f"not a BoundClaim: {claim!r}")
    if not (isinstance(epsilon, (int, float)) and 0.0 < epsilon <= 1e-2):
        raise DomainError(f"epsilon must lie in (0, 1e-2], got {epsilon!r}")
    if claim.relation is Relation.LESS_THAN_M:
        weight = claim.claimed_sharp_weight - epsilon
    else:
        weight = claim.claimed_sharp_weight + epsilon
    if not 0.0 <= weight <= 1.0:
        raise DomainError(f"perturbed weight {weight} leaves [0, 1]")
    offset = 0.5
    while offset >= 1e-15:
        x = offset if claim.sharp_at is SharpAt.GAP_ZERO else 1.0 - offset
        margin = _margin_shape(claim, weight, x)
        if margin < -_VIOLATION_THRESHOLD:
            return SharpnessReport(epsilon, pair_from_gap(x, 1.0), True, x)
        offset *= 0.5
    return SharpnessReport(epsilon, None, False, None)


def _golden_refine(fn, lo: float, hi: float, maximize: bool, iterations: int = 120) -> float:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    sign = 1.0 if maximize else -1.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = sign * fn(c), sign * fn(d)
    for _ in range(iterations):
        if b - a < 1e-14:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = sign * fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = sign * fn(d)
    best = max(fc, fd)
    return sign * best


def recover_constant(fn: RatioFunctionKind, objective: Objective, tol: float = 1e-9) -> float:
    """Numerically extremize a ratio function over its open domain: uniform
    scan, geometric endpoint approach, golden-section refinement of the best
    interior bracket, plus the continuous endpoint extensions."""
    if not isinstance(fn, RatioFunctionKind):
        raise DomainError(f"not a RatioFunctionKind: {fn!r}")
    if not isinstance(objective, Objective):
        raise DomainError(f"not an Objective: {objective!r}")
    if not (isinstance(tol, (int, float)) and tol >= 1e-12):
        raise DomainError(f"tolerance must be >= 1e-12, got {tol!r}")
    lo, hi = ratio_function_domain(fn)
    span = hi - lo
    maximize = objective is Objective.SUPREMUM

    def value(x: float) -> float:
        return evaluate_ratio_function(fn, x)

    scan_points = [lo + span * (i + 0.5) / 2001 for i in range(2001)]
    scan_points += [lo + span * 10.0**-j for j in range(2, 13)]
    scan_points += [hi - span * 10.0**-j for j in range(2, 13)]
    best_x = scan_points[0]
    best_v = value(best_x)
    for x in scan_points[1:]:
        v = value(x)
        if (v > best_v) == maximize and v != best_v:
            best_x, best_v = x, v
    step = span / 2001
    bracket_lo = max(lo + span * 1e-13, best_x - step)
    bracket_hi = min(hi - span * 1e-13, best_x + step)
    refined = _golden_refine(value, bracket_lo, bracket_hi, maximize)
    candidates = [best_v, refined,
                  endpoint_value(fn, Endpoint.LOWER),
                  endpoint_value(fn, Endpoint.UPPER)]
    return max(candidates) if maximize else min(candidates)


def _chain_rng_pair(rng: random.Random) -> PositivePair:
    scale = 10.0 ** rng.uniform(-3.0, 3.0)
    x = rng.random()
    while x == 0.0:
        x = rng.random()
    return pair_from_gap(x, scale)


def verify_chain(sample_count: int, seed: int) -> CertificationReport:
    """Strict ordering H < G < L < P < A < M < T < Q < C on random pairs,
    reporting the smallest resolvable normalized margin."""
    if not isinstance(sample_count, int) or sample_count < 1:
        raise DomainError(f"sample_count must be a positive integer, got {sample_count!r}")
    rng = random.Random(seed)
    best = _ScanResult(math.inf, 0.0, 0)
    worst_pair = None
    near = 0
    for _ in range(sample_count):
        pair = _chain_rng_pair(rng)
        a_mean = evaluate_mean(ARITHMETIC, pair)
        values = [evaluate_mean(kind, pair) for kind in CHAIN_ORDER]
        for prev, nxt in zip(values, values[1:]):
            margin = (nxt - prev) / a_mean
            if abs(margin) < STRICTNESS_FLOOR:
                near += 1
            elif margin < best.min_margin:
                best = _ScanResult(margin, 0.0, 0)
                worst_pair = pair
    if worst_pair is None:
        worst_pair = pair_from_gap(0.5, 1.0)
    return CertificationReport(
        grid_size=sample_count,
        min_margin=best.min_margin,
        worst_pair=worst_pair,
        holds=math.isinf(best.min_margin) or best.min_margin > 0.0,
        near_zero=near,
        seed=seed,
    )


# The two weighted Q/A displays cannot both be sharp as printed; they are
# evaluated and reported, but do not gate an overall corpus verdict.
REPORT_ONLY_CORPUS_CLAIMS = frozenset({
    "neuman-qa-alpha-lower",
    "neuman-qa-beta-upper",
    "neuman-qa-lambda-lower",
    "neuman-qa-mu-upper",
})

_KY_FAN_KINDS = (GEOMETRIC, LOGARITHMIC, SEIFFERT_FIRST, ARITHMETIC,
                 NEUMAN_SANDOR, SEIFFERT_SECOND)


def _corpus_claims():
    """(claim_id, sampler, margin_fn) triples; margin_fn maps a pair to the
    smallest normalized margin of the claim's strict inequalities."""
    c = sharp_constants()
    p0_kind = generalized_log(c.p0)
    l2_kind = generalized_log(2.0)
    neuman_alpha = (1.0 - ASINH_ONE) / ((math.sqrt(2.0) - 1.0) * ASINH_ONE)
    neuman_lambda = (1.0 - ASINH_ONE) / ASINH_ONE

    def ky_fan(pair: PositivePair) -> float:
        ratios = []
        mirror = PositivePair(1.0 - pair.a, 1.0 - pair.b)
        for kind in _KY_FAN_KINDS:
            ratios.append(evaluate_mean(kind, pair) / evaluate_mean(kind, mirror))
        return min(nxt - prev for prev, nxt in zip(ratios, ratios[1:]))

    def pm_lt_a2(pair):
        a = evaluate_mean(ARITHMETIC, pair)
        return (a * a - evaluate_mean(SEIFFERT_FIRST, pair) * evaluate_mean(NEUMAN_SANDOR, pair)) / (a * a)

    def at_lt_m2(pair):
        a = evaluate_mean(ARITHMETIC, pair)
        m = evaluate_mean(NEUMAN_SANDOR, pair)
        return (m * m - a * evaluate_mean(SEIFFERT_SECOND, pair)) / (a * a)

    def m2_lt_square_mean(pair):
        a = evaluate_mean(ARITHMETIC, pair)
        m = evaluate_mean(NEUMAN_SANDOR, pair)
        t = evaluate_mean(SEIFFERT_SECOND, pair)
        return ((a * a + t * t) / 2.0 - m * m) / (a * a)

    def lp0_lt_m(pair):
        a_mean = evaluate_mean(ARITHMETIC, pair)
        return (evaluate_mean(NEUMAN_SANDOR, pair) - evaluate_mean(p0_kind, pair)) / a_mean

    def m_lt_l2(pair):
        a_mean = evaluate_mean(ARITHMETIC, pair)
        return (evaluate_mean(l2_kind, pair) - evaluate_mean(NEUMAN_SANDOR, pair)) / a_mean

    def qa_margin(pair: PositivePair, weight: float, lower: bool) -> float:
        a_mean = evaluate_mean(ARITHMETIC, pair)
        combo = weight * evaluate_mean(QUADRATIC, pair) + (1.0 - weight) * a_mean
        m = evaluate_mean(NEUMAN_SANDOR, pair)
        return ((m - combo) if lower else (combo - m)) / a_mean

    return [
        ("ky-fan", "unit-interval", ky_fan),
        ("pm-lt-a2", "chain", pm_lt_a2),
        ("at-lt-m2", "chain", at_lt_m2),
        ("m2-lt-square-mean", "chain", m2_lt_square_mean),
        ("lp0-lt-m", "chain", lp0_lt_m),
        ("m-lt-l2", "chain", m_lt_l2),
        ("neuman-qa-alpha-lower", "chain", lambda pr: qa_margin(pr, neuman_alpha, True)),
        ("neuman-qa-beta-upper", "chain", lambda pr: qa_margin(pr, 1.0 / 3.0, False)),
        ("neuman-qa-lambda-lower", "chain", lambda pr: qa_margin(pr, neuman_lambda, True)),
        ("neuman-qa-mu-upper", "chain", lambda pr: qa_margin(pr, 1.0 / 6.0, False)),
    ]


def _ky_fan_pair(rng: random.Random) -> PositivePair:
    while True:
        a = rng.uniform(0.0, 0.5)
        b = rng.uniform(0.0, 0.5)
        if 0.0 < a < 0.5 and 0.0 < b < 0.5 and a != b:
            return PositivePair(a, b)


def verify_corpus(sample_count: int, seed: int) -> list[tuple[str, CertificationReport]]:
    """Evaluate every corpus claim on its own seeded sample stream."""
    if not isinstance(sample_count, int) or sample_count < 1:
        raise DomainError(f"sample_count must be a positive integer, got {sample_count!r}")
    results = []
    for claim_id, sampler, margin_fn in _corpus_claims():
        rng = random.Random(f"{seed}:{claim_id}")
        best_margin = math.inf
        worst_pair = None
        near = 0
        violated = False
        for _ in range(sample_count):
            pair = _ky_fan_pair(rng) if sampler == "unit-interval" else _chain_rng_pair(rng)
            margin = margin_fn(pair)
            if abs(margin) < STRICTNESS_FLOOR:
                near += 1
                continue
            if margin < best_margin:
                best_margin = margin
                worst_pair = pair
            if margin < 0.0:
                violated = True
        if worst_pair is None:
            worst_pair = pair_from_gap(0.5, 1.0)
        results.append((claim_id, CertificationReport(
            grid_size=sample_count,
            min_margin=best_margin,
            worst_pair=worst_pair,
            holds=not violated,
            near_zero=near,
            seed=seed,
        )))
    return results
