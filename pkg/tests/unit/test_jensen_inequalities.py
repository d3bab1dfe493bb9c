"""
Tests unitarios del motor de desigualdades Jensen/Mercer.
Los valores esperados salen de momentos en forma cerrada y evaluación a mano.
"""

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from src.domain.enums import Verdict
from src.domain.errors import HypothesisError, RangeError, UnsortedPoints, ValidationError
from src.domain.exprparse import catalog_entry, parse
from src.domain.jensen import InequalityEngine, InequalityInstance, ProbabilityMeasure
from src.domain.jensen.inequalities import INEQUALITY_IDS, INEQUALITY_REQUIREMENTS
from src.domain.kernels import make_riemann_liouville


square = catalog_entry("square")
identity = parse("x")


@pytest.fixture
def engine():
    return InequalityEngine(tolerance=1e-9, seed=42)


@pytest.fixture
def lenient():
    return InequalityEngine(tolerance=1e-9, seed=42, strict=False)


@pytest.fixture
def uniform():
    return ProbabilityMeasure.uniform(0.0, 1.0, 1e-11)


class TestJensenClassical:
    """φ(∫f dμ) ≤ ∫φ∘f dμ"""

    def test_square_under_uniform(self, engine, uniform):
        report = engine.jensen_classical(square, identity, uniform)
        assert report.lhs == pytest.approx(0.25, abs=1e-10)
        assert report.rhs == pytest.approx(1.0 / 3.0, abs=1e-10)
        assert report.slack == pytest.approx(1.0 / 12.0, abs=1e-9)
        assert report.verdict == Verdict.HOLDS

    def test_affine_phi_has_zero_slack(self, engine, uniform):
        report = engine.jensen_classical(parse("2*x + 1"), identity, uniform)
        assert report.slack == pytest.approx(0.0, abs=1e-10)
        assert report.verdict == Verdict.HOLDS

    def test_concave_phi_fails_hypothesis(self, engine, uniform):
        report = engine.jensen_classical(catalog_entry("neg_square"), identity, uniform)
        assert report.verdict == Verdict.HYPOTHESIS_FAILED
        assert report.slack == pytest.approx(-1.0 / 12.0, abs=1e-9)
        assert "convexity" in report.failed_checks()


class TestMJensen:
    """φ(m∫f dμ) ≤ m∫φ∘f dμ"""

    def test_discrete(self, engine):
        measure = ProbabilityMeasure.discrete([0.0, 1.0, 2.0])
        report = engine.mjensen_discrete(square, measure, 0.5)
        assert report.lhs == pytest.approx(0.25, abs=1e-15)
        assert report.rhs == pytest.approx(5.0 / 6.0, abs=1e-15)
        assert report.slack == pytest.approx(0.5833333, abs=1e-7)

    def test_discrete_m_one(self, engine):
        report = engine.mjensen_discrete(square, ProbabilityMeasure.discrete([0.0, 1.0], [0.5, 0.5]), 1.0)
        assert report.lhs == 0.25
        assert report.rhs == 0.5

    def test_single_zero_point(self, engine):
        report = engine.mjensen_discrete(square, ProbabilityMeasure.discrete([0.0]), 0.3)
        assert report.slack == 0.0

    def test_discrete_requires_zero_in_interval(self, engine):
        with pytest.raises(HypothesisError):
            engine.mjensen_discrete(square, ProbabilityMeasure.discrete([1.0, 2.0]), 0.5)

    def test_discrete_rejects_density_measure(self, engine, uniform):
        with pytest.raises(ValidationError):
            engine.mjensen_discrete(square, uniform, 0.5)

    def test_continuous(self, engine, uniform):
        report = engine.mjensen_continuous(square, identity, uniform, 0.5)
        assert report.lhs == pytest.approx(0.0625, abs=1e-10)
        assert report.rhs == pytest.approx(1.0 / 6.0, abs=1e-10)
        assert report.slack == pytest.approx(0.1041667, abs=1e-7)

    def test_continuous_m_one_reduces_to_jensen(self, engine, uniform):
        reduced = engine.mjensen_continuous(square, identity, uniform, 1.0)
        classical = engine.jensen_classical(square, identity, uniform)
        assert reduced.lhs == pytest.approx(classical.lhs, abs=1e-12)
        assert reduced.rhs == pytest.approx(classical.rhs, abs=1e-12)

    def test_continuous_zero_function(self, engine, uniform):
        report = engine.mjensen_continuous(square, parse("0"), uniform, 0.5, interval=(0.0, 1.0))
        assert report.slack == pytest.approx(0.0, abs=1e-15)


class TestMercerDiscrete:
    """φ(x₁ + x_n − Σw x) ≤ φ(x₁) + φ(x_n) − Σw φ(x)"""

    def test_three_points(self, engine):
        report = engine.mercer_discrete(square, [0.0, 0.5, 1.0])
        assert report.lhs == pytest.approx(0.25, abs=1e-15)
        assert report.rhs == pytest.approx(0.5833333, abs=1e-7)
        assert report.slack == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_all_weight_on_first_point(self, engine):
        report = engine.mercer_discrete(square, [0.0, 0.5, 1.0], [1.0, 0.0, 0.0])
        assert report.slack == pytest.approx(0.0, abs=1e-15)

    def test_single_point(self, engine):
        report = engine.mercer_discrete(square, [0.7])
        assert report.slack == pytest.approx(0.0, abs=1e-15)

    def test_unsorted_points_are_sorted_with_weights(self, engine):
        sorted_report = engine.mercer_discrete(square, [0.0, 0.5, 1.0], [0.2, 0.3, 0.5])
        shuffled = engine.mercer_discrete(square, [1.0, 0.0, 0.5], [0.5, 0.2, 0.3])
        assert shuffled.slack == pytest.approx(sorted_report.slack, abs=1e-15)

    def test_presorted_rejects_unsorted_points(self, engine):
        with pytest.raises(UnsortedPoints):
            engine.mercer_discrete(square, [1.0, 0.0], presorted=True)

    def test_weights_must_sum_to_one(self, engine):
        with pytest.raises(ValidationError):
            engine.mercer_discrete(square, [0.0, 1.0], [0.5, 0.6])


class TestLemmaTransform:
    """φ(x₁ + m x_n − m x_k) ≤ φ(x₁) + mφ(x_n) − φ(m x_k)"""

    def test_defects(self, engine):
        defects = engine.lemma_transform(square, [0.0, 1.0, 2.0], 0.5)
        assert defects[1] == pytest.approx(-1.5, abs=1e-15)
        assert np.all(defects <= 1e-12)

    def test_last_point_reduces_to_scaling(self, engine):
        """k = n deja φ(m x_n) − mφ(x_n)"""
        defects = engine.lemma_transform(square, [0.0, 1.0, 2.0], 0.5)
        assert defects[-1] == pytest.approx(1.0 - 2.0, abs=1e-15)

    def test_report_uses_worst_index(self, engine):
        report = engine.lemma_report(square, [0.0, 1.0, 2.0], 0.5)
        assert report.slack == pytest.approx(-max(report.extras["defects"]), abs=1e-15)
        assert report.verdict == Verdict.HOLDS

    def test_requires_zero_in_interval(self, engine):
        with pytest.raises(HypothesisError):
            engine.lemma_transform(square, [1.0, 2.0], 0.5)


class TestMercerM:
    """Versiones m-convexas de Mercer"""

    def test_discrete(self, engine):
        report = engine.mercer_m_discrete(square, [0.0, 1.0, 2.0], None, 0.5)
        assert report.lhs == pytest.approx(0.0625, abs=1e-15)
        assert report.rhs == pytest.approx(0.7916667, abs=1e-7)
        assert report.slack == pytest.approx(0.7291667, abs=1e-7)
        assert report.extras["argument_in_interval"]

    def test_discrete_m_one_equals_mercer(self, engine):
        points, weights = [-0.3, 0.4, 1.1], [0.2, 0.5, 0.3]
        reduced = engine.mercer_m_discrete(square, points, weights, 1.0)
        mercer = engine.mercer_discrete(square, points, weights)
        assert reduced.lhs == pytest.approx(mercer.lhs, abs=1e-12)
        assert reduced.rhs == pytest.approx(mercer.rhs, abs=1e-12)

    def test_endpoints(self, engine):
        report = engine.mercer_m_endpoints(square, -1.0, 1.0, [0.5], [1.0], 0.5)
        assert report.lhs == pytest.approx(0.140625, abs=1e-15)
        assert report.rhs == pytest.approx(0.71875, abs=1e-15)
        assert report.slack == pytest.approx(0.578125, abs=1e-15)

    def test_endpoints_as_points(self, engine):
        report = engine.mercer_m_endpoints(square, -1.0, 1.0, [-1.0, 1.0], [0.5, 0.5], 1.0)
        assert report.lhs == 0.0
        assert report.rhs == 1.0

    def test_endpoints_point_outside_raises(self, engine):
        with pytest.raises(RangeError):
            engine.mercer_m_endpoints(square, -1.0, 1.0, [1.5], None, 0.5)

    def test_epsilon_replay_converges_to_endpoints(self, engine):
        limit = engine.mercer_m_endpoints(square, -1.0, 1.0, [0.5, -0.2], [0.4, 0.6], 0.5)
        replay = engine.epsilon_replay(square, -1.0, 1.0, [0.5, -0.2], [0.4, 0.6], 0.5, 1e-6)
        assert replay.lhs == pytest.approx(limit.lhs, abs=1e-4)
        assert replay.rhs == pytest.approx(limit.rhs, abs=1e-4)
        assert replay.extras["epsilon"] == 1e-6

    def test_epsilon_out_of_range_raises(self, engine):
        with pytest.raises(ValidationError):
            engine.epsilon_replay(square, -1.0, 1.0, [0.5], None, 0.5, 1.5)

    def test_corollary(self, engine):
        report = engine.mercer_corollary(square, 0.0, 1.0, [0.25, 0.75])
        assert report.lhs == pytest.approx(0.25, abs=1e-15)
        assert report.rhs == pytest.approx(1.0 - 0.3125, abs=1e-15)

    def test_continuous(self, engine, uniform):
        report = engine.mercer_m_continuous(square, identity, uniform, 0.0, 1.0, 0.5)
        assert report.lhs == pytest.approx(0.015625, abs=1e-10)
        assert report.rhs == pytest.approx(0.2083333, abs=1e-7)
        assert report.slack == pytest.approx(0.1927083, abs=1e-7)
        assert report.extras["argument_in_interval"]

    def test_continuous_m_one(self, engine, uniform):
        report = engine.mercer_m_continuous(square, identity, uniform, 0.0, 1.0, 1.0)
        assert report.slack == pytest.approx(0.4166667, abs=1e-7)

    def test_continuous_constant_at_b(self, engine, uniform):
        report = engine.mercer_m_continuous(square, parse("1"), uniform, 0.0, 1.0, 1.0)
        assert report.slack == pytest.approx(0.0, abs=1e-10)

    def test_continuous_range_violation_raises(self, engine, uniform):
        with pytest.raises(RangeError):
            engine.mercer_m_continuous(square, parse("2*x"), uniform, 0.0, 1.0, 1.0)

    def test_continuous_range_violation_is_reported_when_lenient(self, lenient, uniform):
        report = lenient.mercer_m_continuous(square, parse("2*x"), uniform, 0.0, 1.0, 1.0)
        assert report.verdict == Verdict.HYPOTHESIS_FAILED
        assert "range" in report.failed_checks()

    def test_zero_check_is_reported_when_lenient(self, lenient, uniform):
        report = lenient.mercer_m_continuous(square, parse("1 + x"), uniform, 1.0, 2.0, 0.5)
        assert "zero_in_interval" in report.failed_checks()


class TestMercerContinuous:
    """Mercer convexa con saltos en los extremos"""

    def test_continuous_phi_matches_m_one(self, engine, uniform):
        report = engine.mercer_continuous(square, identity, uniform, 0.0, 1.0)
        assert report.slack == pytest.approx(0.4166667, abs=1e-7)

    def test_jump_at_left_endpoint(self, engine):
        measure = ProbabilityMeasure.discrete([0.0, 1.0], [0.5, 0.5])
        report = engine.mercer_continuous(square, identity, measure, 0.0, 1.0, phi_at_a=0.5)
        assert report.lhs == pytest.approx(0.25, abs=1e-15)
        assert report.rhs == pytest.approx(0.75, abs=1e-15)
        assert report.slack == pytest.approx(0.5, abs=1e-15)
        assert report.extras["delta_a"] == 0.5
        assert report.extras["atom_a"] == 0.5

    def test_f_at_a_everywhere(self, engine):
        measure = ProbabilityMeasure.discrete([0.0])
        report = engine.mercer_continuous(square, identity, measure, 0.0, 1.0, phi_at_a=0.3)
        assert report.slack == pytest.approx(0.0, abs=1e-15)

    def test_zero_jumps_match_plain_composition(self, engine):
        measure = ProbabilityMeasure.discrete([0.0, 0.4, 1.0], [0.3, 0.3, 0.4])
        plain = engine.mercer_continuous(square, identity, measure, 0.0, 1.0)
        explicit = engine.mercer_continuous(square, identity, measure, 0.0, 1.0, phi_at_a=0.0, phi_at_b=1.0)
        assert explicit.slack == pytest.approx(plain.slack, abs=1e-12)

    def test_negative_jump_fails_hypothesis(self, engine):
        measure = ProbabilityMeasure.discrete([0.0, 1.0], [0.5, 0.5])
        report = engine.mercer_continuous(square, identity, measure, 0.0, 1.0, phi_at_b=0.5)
        assert "endpoint_jumps_nonnegative" in report.failed_checks()


class TestSandwich:
    """φ(∫f dμ) ≤ ∫φ∘f dμ ≤ φ(a) + φ(b) − φ(a + b − ∫f dμ)"""

    def test_chain(self, engine, uniform):
        report = engine.jensen_sandwich(square, identity, uniform, 0.0, 1.0)
        assert report.lhs == pytest.approx(0.25, abs=1e-10)
        assert report.extras["middle"] == pytest.approx(1.0 / 3.0, abs=1e-10)
        assert report.rhs == pytest.approx(0.75, abs=1e-10)
        assert report.lhs <= report.extras["middle"] <= report.rhs

    def test_affine_gaps_vanish(self, engine, uniform):
        report = engine.jensen_sandwich(parse("3*x - 1"), identity, uniform, 0.0, 1.0)
        assert report.extras["lower_gap"] == pytest.approx(0.0, abs=1e-10)
        assert report.extras["upper_gap"] == pytest.approx(0.0, abs=1e-10)

    def test_concave_fails_hypothesis(self, engine, uniform):
        report = engine.jensen_sandwich(catalog_entry("neg_square"), identity, uniform, 0.0, 1.0)
        assert report.extras["lower_gap"] < 0
        assert report.verdict == Verdict.HYPOTHESIS_FAILED


class TestFractionalMercer:
    """Mercer con la medida del kernel fraccionario"""

    def test_riemann_liouville_half(self, engine):
        report = engine.fractional_mercer(make_riemann_liouville(), square, identity, 0.0, 1.0, 0.5, 0.0, 1.0, 1.0)
        assert report.lhs == pytest.approx(1.0 / 9.0, abs=1e-7)
        assert report.rhs == pytest.approx(7.0 / 15.0, abs=1e-7)
        assert report.slack == pytest.approx(16.0 / 45.0, abs=1e-7)
        assert report.extras["normalizer"] == pytest.approx(1.1283792, abs=1e-7)

    def test_alpha_one_reduces_to_uniform_mercer(self, engine, uniform):
        fractional = engine.fractional_mercer(make_riemann_liouville(), square, identity, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0)
        mercer = engine.mercer_continuous(square, identity, uniform, 0.0, 1.0)
        assert fractional.slack == pytest.approx(mercer.slack, abs=1e-8)

    def test_constant_function_matches_one_point_mercer(self, engine):
        fractional = engine.fractional_mercer(
            make_riemann_liouville(), square, parse("0.3"), 0.0, 1.0, 0.5, 0.0, 1.0, 1.0
        )
        corollary = engine.mercer_corollary(square, 0.0, 1.0, [0.3])
        assert fractional.slack == pytest.approx(corollary.slack, abs=1e-7)


class TestRun:
    """Despacho por identificador"""

    def test_ids_match_requirements(self):
        assert set(INEQUALITY_IDS) == set(INEQUALITY_REQUIREMENTS)
        assert len(INEQUALITY_IDS) == 13

    def test_run_dispatches(self, engine):
        instance = InequalityInstance(phi=square, points=(0.0, 0.5, 1.0))
        assert engine.run("mercer_discrete", instance).slack == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_unknown_id_raises(self, engine):
        with pytest.raises(ValidationError):
            engine.run("hermite_hadamard", InequalityInstance(phi=square))

    def test_missing_field_raises(self, engine):
        with pytest.raises(ValidationError):
            engine.run("mercer_discrete", InequalityInstance(phi=square))

    def test_instance_to_dict(self):
        data = InequalityInstance(phi=square, points=(0.0, 1.0), m=0.5).to_dict()
        assert data["phi"] == "square"
        assert data["points"] == [0.0, 1.0]
        assert data["m"] == 0.5


_points = st.lists(st.floats(min_value=-2.0, max_value=2.0, allow_nan=False), min_size=1, max_size=6)


@hypothesis_settings(max_examples=60, deadline=None)
@given(_points, st.floats(min_value=0.05, max_value=1.0))
def test_mercer_m_argument_stays_in_interval(points, m):
    """Con 0 ∈ I el argumento del lado izquierdo cae en I y cumple la identidad del lema"""
    engine = InequalityEngine(tolerance=1e-9, grid_size=5, random_triples=10, seed=1)
    report = engine.mercer_m_discrete(square, points + [0.0], None, m)
    assert report.extras["argument_in_interval"]
    assert abs(report.extras["lemma_identity_gap"]) <= 1e-13 * max(1.0, max(abs(x) for x in points))
    assert report.slack >= -1e-9
