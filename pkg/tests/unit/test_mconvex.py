"""
Tests unitarios de la certificación empírica de m-convexidad.
"""

import pytest

from src.domain.errors import DomainError, HypothesisError, ValidationError
from src.domain.exprparse import catalog_entry, parse
from src.domain.mconvex import certify_grid, check_equivalent_form, check_point, max_m


square = catalog_entry("square")
cube = catalog_entry("cube")


class TestCheckPoint:
    """Tests para el defecto puntual de la definición"""

    def test_square_holds(self):
        assert check_point(square, 1.0, 2.0, 0.5, 0.5) == pytest.approx(-0.5, abs=1e-15)

    def test_t_one_is_exactly_zero(self):
        assert check_point(parse("exp(x) - 3*x"), 0.3, 1.7, 1.0, 0.4) == 0.0

    def test_cube_violates_through_negative_region(self):
        assert check_point(cube, -1.0, 0.0, 0.5, 1.0) == pytest.approx(0.375, abs=1e-15)

    def test_point_outside_interval_raises(self):
        with pytest.raises(DomainError):
            check_point(square, 1.0, 2.0, 0.5, 1.0, interval=(1.6, 2.0))

    def test_m_out_of_range_raises(self):
        with pytest.raises(ValidationError):
            check_point(square, 1.0, 2.0, 0.5, 1.5)


class TestCheckEquivalentForm:
    """Tests para la forma equivalente φ(mtx + (1−t)y) ≤ mtφ(x) + (1−t)φ(y)"""

    def test_square(self):
        assert check_equivalent_form(square, 1.0, 2.0, 0.5, 0.5) == pytest.approx(-0.6875, abs=1e-15)

    def test_t_zero_is_exactly_zero(self):
        assert check_equivalent_form(parse("sin(x)"), 0.2, 0.9, 0.0, 0.7) == 0.0

    @pytest.mark.parametrize("x,y,t,m", [
        (1.0, 2.0, 0.25, 0.5),
        (-0.7, 0.3, 0.9, 0.8),
        (0.0, 1.5, 0.5, 1.0),
    ])
    def test_swap_identity(self, x, y, t, m):
        """La forma equivalente es la definición con (x, y, t) → (y, x, 1 − t)"""
        phi = parse("x^4 + x")
        assert check_equivalent_form(phi, x, y, t, m) == pytest.approx(
            check_point(phi, y, x, 1.0 - t, m), abs=1e-14
        )


class TestCertifyGrid:
    """Tests para certify_grid"""

    def test_convex_square_passes(self):
        report = certify_grid(square, (0.0, 2.0), 0.7, n=20, r=1000, seed=42)
        assert report.worst_violation == 0.0
        assert report.witness is None
        assert report.passed
        assert report.contains_zero
        assert report.scaling_violation <= 0.0

    def test_cube_fails_with_witness(self):
        report = certify_grid(cube, (-1.0, 1.0), 1.0, n=20, r=1000, seed=42)
        assert report.worst_violation >= 0.375
        assert not report.passed
        x, y, t = report.witness
        assert -1.0 <= x <= 1.0 and -1.0 <= y <= 1.0 and 0.0 <= t <= 1.0

    def test_missing_zero_with_m_below_one_raises(self):
        with pytest.raises(HypothesisError):
            certify_grid(square, (1.0, 2.0), 0.5, n=10, r=100)

    def test_missing_zero_allowed_when_not_required(self):
        report = certify_grid(square, (1.0, 2.0), 0.5, n=10, r=100, require_zero=False)
        assert not report.contains_zero
        assert report.skipped > 0

    def test_deterministic_given_seed(self):
        first = certify_grid(parse("x^3 - x"), (-1.0, 1.0), 0.8, n=12, r=500, seed=7)
        second = certify_grid(parse("x^3 - x"), (-1.0, 1.0), 0.8, n=12, r=500, seed=7)
        assert first == second

    def test_report_is_marked_empirical(self):
        report = certify_grid(square, (0.0, 1.0), 1.0, n=8, r=50)
        assert "empírica" in report.note
        assert report.to_dict()["note"] == report.note

    def test_invalid_m_raises(self):
        with pytest.raises(ValidationError):
            certify_grid(square, (0.0, 1.0), 0.0, n=5, r=10)


class TestMaxM:
    """Tests para max_m"""

    def test_convex_function_returns_one(self):
        assert max_m(square, (0.0, 2.0), n=20, r=500) == 1.0

    def test_concave_function_returns_zero(self):
        assert max_m(catalog_entry("neg_square"), (0.0, 1.0), n=20, r=500) == 0.0

    def test_requires_zero_in_interval(self):
        with pytest.raises(HypothesisError):
            max_m(square, (1.0, 2.0), n=10, r=100)
