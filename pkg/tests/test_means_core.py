import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from means_lab import (
    ARITHMETIC,
    CHAIN_ORDER,
    HARMONIC,
    LOGARITHMIC,
    NEUMAN_SANDOR,
    QUADRATIC,
    SEIFFERT_FIRST,
    SEIFFERT_SECOND,
    DomainError,
    MeanFamily,
    MeanKind,
    PositivePair,
    evaluate_mean,
    generalized_log,
    mean_shape,
    normalized_gap,
    pair_from_gap,
    stable_asinh,
)
from oracles import mean_oracle, rel_err

# the ten families, with representative exponents for the generalized log
ALL_KINDS = list(CHAIN_ORDER) + [generalized_log(2.0)]
GLOG_EXTRA = [generalized_log(p) for p in (-3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 5.0)]

finite_positive = st.floats(min_value=1e-120, max_value=1e120,
                            allow_nan=False, allow_infinity=False)


class TestSpecExamples:
    def test_harmonic_1_2(self):
        assert evaluate_mean(HARMONIC, (1, 2)) == pytest.approx(4.0 / 3.0, rel=1e-15)

    def test_quadratic_1_7_exact(self):
        assert evaluate_mean(QUADRATIC, (1, 7)) == 5.0

    def test_diagonal_exact(self):
        assert evaluate_mean(NEUMAN_SANDOR, (2, 2)) == 2.0
        for kind in ALL_KINDS + GLOG_EXTRA:
            assert evaluate_mean(kind, (3.7, 3.7)) == 3.7

    def test_neuman_sandor_1_2(self):
        # 1/(2*asinh(1/3)) at 40 digits: 1.526949978913487213158...
        assert rel_err(evaluate_mean(NEUMAN_SANDOR, (1, 2)), "1.526949978913487213158") < 1e-15

    def test_generalized_log_minus1_at_1_e(self):
        got = evaluate_mean(generalized_log(-1.0), (1.0, math.e))
        assert got == pytest.approx(math.e - 1.0, rel=1e-13)

    def test_invalid_pairs(self):
        for bad in ((0, 1), (-1, 2), (1, float("nan")), (1, float("inf")), (1,)):
            with pytest.raises(DomainError):
                evaluate_mean(HARMONIC, bad)

    def test_invalid_parameter(self):
        with pytest.raises(DomainError):
            generalized_log(float("nan"))
        with pytest.raises(DomainError):
            generalized_log(float("inf"))
        with pytest.raises(DomainError):
            MeanKind(MeanFamily.HARMONIC, 2.0)


class TestNormalizedGap:
    def test_examples(self):
        assert normalized_gap((1, 1)) == 0.0
        assert normalized_gap((1, 3)) == 0.5
        assert normalized_gap((1, 1e6)) == float(Fraction(999999, 1000001))

    def test_symmetry_and_range(self):
        rng = random.Random(11)
        for _ in range(1000):
            a = 10 ** rng.uniform(-6, 6)
            b = 10 ** rng.uniform(-6, 6)
            x = normalized_gap((a, b))
            assert x == normalized_gap((b, a))
            assert 0.0 <= x < 1.0


class TestPairFromGap:
    def test_examples(self):
        assert pair_from_gap(0.0, 1.0) == PositivePair(1.0, 1.0)
        assert pair_from_gap(0.5, 1.0) == PositivePair(1.5, 0.5)

    def test_domain(self):
        for x in (-0.1, 1.0, 1.5):
            with pytest.raises(DomainError):
                pair_from_gap(x, 1.0)
        for scale in (0.0, -2.0, float("inf")):
            with pytest.raises(DomainError):
                pair_from_gap(0.5, scale)

    def test_round_trip_seeded(self):
        rng = random.Random(202)
        for _ in range(1000):
            x = rng.uniform(0.0, 0.999999)
            scale = 10 ** rng.uniform(-6, 6)
            rt = normalized_gap(pair_from_gap(x, scale))
            # the pair entries quantize at ~eps*scale, which bounds the
            # reconstruction at ~eps absolute regardless of ulp(x)
            assert abs(rt - x) <= 4.0 * (math.ulp(x) + math.ulp(1.0))

    @given(st.floats(min_value=0.0, max_value=0.999999),
           st.floats(min_value=1e-100, max_value=1e100))
    @settings(max_examples=200, deadline=None)
    def test_round_trip_property(self, x, scale):
        rt = normalized_gap(pair_from_gap(x, scale))
        assert abs(rt - x) <= 4.0 * (math.ulp(x) + math.ulp(1.0))


class TestInvariants:
    @given(finite_positive, finite_positive)
    @settings(max_examples=150, deadline=None)
    def test_symmetry_bit_exact(self, a, b):
        for kind in ALL_KINDS:
            assert evaluate_mean(kind, (a, b)) == evaluate_mean(kind, (b, a))

    def test_symmetry_bit_exact_seeded(self):
        rng = random.Random(5)
        for _ in range(2000):
            a = 10 ** rng.uniform(-9, 9)
            b = a * 10 ** rng.uniform(-9, 9)
            for kind in ALL_KINDS + GLOG_EXTRA:
                assert evaluate_mean(kind, (a, b)) == evaluate_mean(kind, (b, a))

    def test_homogeneity(self):
        rng = random.Random(17)
        for _ in range(500):
            scale = 10 ** rng.uniform(-2, 2)
            pair = pair_from_gap(rng.random(), scale)
            for kind in ALL_KINDS + GLOG_EXTRA:
                base = evaluate_mean(kind, pair)
                for lam in (1e-6, 1.0, 1e6):
                    scaled = evaluate_mean(kind, (lam * pair.a, lam * pair.b))
                    assert scaled == pytest.approx(lam * base, rel=1e-13)

    def test_betweenness(self):
        rng = random.Random(23)
        for _ in range(2000):
            pair = pair_from_gap(rng.uniform(1e-7, 1.0 - 1e-7), 10 ** rng.uniform(-3, 3))
            lo, hi = pair.lo, pair.hi
            for kind in ALL_KINDS + GLOG_EXTRA:
                value = evaluate_mean(kind, pair)
                assert lo < value < hi

    def test_chain_order_pointwise(self):
        rng = random.Random(31)
        for _ in range(500):
            pair = pair_from_gap(rng.uniform(1e-6, 1.0 - 1e-6), 10 ** rng.uniform(-3, 3))
            values = [evaluate_mean(kind, pair) for kind in CHAIN_ORDER]
            assert values == sorted(values)
            assert all(u < v for u, v in zip(values, values[1:]))


class TestAgainstOracle:
    def test_chain_pair_1_2(self):
        for kind in CHAIN_ORDER:
            assert rel_err(evaluate_mean(kind, (1, 2)), mean_oracle(kind, 1, 2)) < 1e-14

    def test_random_pairs_all_kinds(self):
        rng = random.Random(47)
        for _ in range(200):
            a = 10 ** rng.uniform(-3, 3)
            b = a * (1 + rng.uniform(-0.999, 2.0))
            if b <= 0:
                continue
            for kind in ALL_KINDS + GLOG_EXTRA:
                got = evaluate_mean(kind, (a, b))
                assert rel_err(got, mean_oracle(kind, a, b)) < 1e-13

    def test_extreme_ratio_pairs(self):
        for a, b in ((1e-300, 1e300), (1e-30, 1.0), (1.0, 1e250), (1e-308, 2e-308)):
            for kind in ALL_KINDS:
                got = evaluate_mean(kind, (a, b))
                assert min(a, b) <= got <= max(a, b)
                assert rel_err(got, mean_oracle(kind, a, b)) < 1e-12

    def test_near_overflow_pair(self):
        a, b = 1.2e308, 1.7e308
        for kind in ALL_KINDS:
            got = evaluate_mean(kind, (a, b))
            assert math.isfinite(got)
            assert rel_err(got, mean_oracle(kind, a, b)) < 1e-12


class TestDiagonalStability:
    def test_diagonal_continuity_window(self):
        delta = 1e-9
        for kind in ALL_KINDS + GLOG_EXTRA:
            value = evaluate_mean(kind, (1.0, 1.0 + delta))
            assert 1.0 <= value <= 1.0 + delta

    def test_stable_branch_matches_naive_high_precision(self):
        delta = 1e-9
        for kind in ALL_KINDS + GLOG_EXTRA:
            got = evaluate_mean(kind, (1.0, 1.0 + delta))
            assert rel_err(got, mean_oracle(kind, 1.0, 1.0 + delta)) < 1e-13

    def test_switch_region_relative_error(self):
        # series below 1e-4, closed form above; both must hold ~1e-14
        kinds = (NEUMAN_SANDOR, LOGARITHMIC, SEIFFERT_FIRST, SEIFFERT_SECOND)
        for i in range(81):
            x = 9.0e-5 + i * 0.25e-6
            for kind in kinds:
                got = mean_shape(kind, x)
                ref = mean_oracle(kind, 1.0 + x, 1.0 - x)
                assert rel_err(got, ref) < 1e-14, (kind, x)

    def test_tiny_gaps_all_kinds(self):
        for x in (1e-12, 1e-9, 1e-6, 1e-5):
            for kind in ALL_KINDS:
                got = mean_shape(kind, x)
                assert rel_err(got, mean_oracle(kind, 1.0 + x, 1.0 - x)) < 1e-13


class TestShapeConsistency:
    def test_shape_times_scale_matches_pair_evaluation(self):
        rng = random.Random(61)
        for _ in range(300):
            x = rng.uniform(0.0, 1.0 - 1e-9)
            scale = 10 ** rng.uniform(-3, 3)
            pair = pair_from_gap(x, scale)
            for kind in ALL_KINDS:
                via_pair = evaluate_mean(kind, pair)
                via_shape = scale * mean_shape(kind, normalized_gap(pair))
                assert via_pair == pytest.approx(via_shape, rel=1e-12)

    def test_shape_domain(self):
        with pytest.raises(DomainError):
            mean_shape(HARMONIC, 1.0)
        with pytest.raises(DomainError):
            mean_shape(HARMONIC, -0.1)


class TestGeneralizedLogConsistency:
    def test_p_minus_one_is_logarithmic(self):
        rng = random.Random(71)
        for _ in range(200):
            pair = pair_from_gap(rng.random(), 10 ** rng.uniform(-2, 2))
            assert evaluate_mean(generalized_log(-1.0), pair) == evaluate_mean(LOGARITHMIC, pair)

    def test_p_one_is_arithmetic(self):
        rng = random.Random(73)
        for _ in range(200):
            pair = pair_from_gap(rng.random(), 10 ** rng.uniform(-2, 2))
            got = evaluate_mean(generalized_log(1.0), pair)
            assert got == pytest.approx(evaluate_mean(ARITHMETIC, pair), rel=1e-13)

    def test_p_two_closed_form(self):
        # L_2(a,b) = sqrt((a^2 + ab + b^2)/3)
        rng = random.Random(79)
        for _ in range(200):
            pair = pair_from_gap(rng.random(), 10 ** rng.uniform(-2, 2))
            a, b = pair.a, pair.b
            expected = math.sqrt((a * a + a * b + b * b) / 3.0)
            assert evaluate_mean(generalized_log(2.0), pair) == pytest.approx(expected, rel=1e-13)

    def test_identric_special_case(self):
        got = evaluate_mean(generalized_log(0.0), (1.0, 2.0))
        assert got == pytest.approx(4.0 / math.e, rel=1e-14)

    def test_near_special_exponents_continuous(self):
        pair = PositivePair(1.0, 2.5)
        for p0, eps in ((0.0, 1e-9), (-1.0, 1e-9)):
            base = evaluate_mean(generalized_log(p0), pair)
            for sign in (-1.0, 1.0):
                nearby = evaluate_mean(generalized_log(p0 + sign * eps), pair)
                assert nearby == pytest.approx(base, rel=1e-8)

    def test_small_p_cumulant_path(self):
        rng = random.Random(83)
        for p in (2e-3, -2e-3, 1e-4, -1e-4, 1e-6):
            for _ in range(50):
                pair = pair_from_gap(rng.uniform(0.0, 0.99), 1.0)
                got = evaluate_mean(generalized_log(p), pair)
                assert rel_err(got, mean_oracle(generalized_log(p), pair.a, pair.b)) < 5e-13

    def test_huge_exponents_approach_min_max(self):
        pair = PositivePair(2.0, 5.0)
        assert evaluate_mean(generalized_log(1e8), pair) == pytest.approx(5.0, rel=1e-6)
        assert evaluate_mean(generalized_log(-1e8), pair) == pytest.approx(2.0, rel=1e-6)

    def test_huge_exponent_with_extreme_ratio_stays_between(self):
        # the shape underflows binary64 here; the log-space reassembly keeps
        # the mean inside [lo, hi]
        for p in (-1e6, 1e6):
            got = evaluate_mean(generalized_log(p), (1e-300, 1e300))
            assert 1e-300 <= got <= 1e300


class TestStableAsinh:
    def test_against_math_asinh(self):
        # both sides are ~1 ulp implementations; allow a few ulp of libm slack
        for e in range(-300, 1):
            x = 10.0**e
            assert stable_asinh(x) == pytest.approx(math.asinh(x), rel=1e-15)

    def test_odd(self):
        for x in (1e-8, 0.3, 0.99):
            assert stable_asinh(-x) == -stable_asinh(x)

    def test_against_oracle(self):
        import mpmath as mp
        rng = random.Random(89)
        for _ in range(500):
            x = 10 ** rng.uniform(-30, 0)
            assert rel_err(stable_asinh(x), mp.asinh(mp.mpf(x))) < 5e-16
