"""
Tests unitarios del front-end de expresiones.
Verifica parseo, offsets de error, evaluación, derivada numérica y catálogo.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from src.domain.errors import DomainError, ExpressionSyntaxError, UnknownIdentifier, ValidationError
from src.domain.exprparse import (
    CATALOG_SOURCES,
    Add,
    Call,
    Const,
    Div,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
    catalog_entry,
    evaluate,
    numeric_derivative,
    parse,
    parse_tree,
    resolve,
    serialize,
)


class TestParse:
    """Tests para parse y parse_tree"""

    def test_power_tree(self):
        """x^2 produce Pow(Var, Const 2)"""
        assert parse("x^2").ast == Pow(Var("x"), Const(2.0))

    def test_log_over_x_tree(self):
        """log(x)/x produce Div(Call log, Var)"""
        assert parse("log(x)/x").ast == Div(Call("log", (Var("x"),)), Var("x"))

    def test_unary_minus_binds_looser_than_power(self):
        """-x^2 es -(x^2)"""
        assert parse_tree("-x^2") == Neg(Pow(Var("x"), Const(2.0)))

    def test_power_is_right_associative(self):
        """2^3^2 = 2^9"""
        assert evaluate(parse("2^3^2"), 0.0) == 512.0

    def test_subtraction_is_left_associative(self):
        """5 - 2 - 1 = 2"""
        assert parse_tree("5 - 2 - 1") == Sub(Sub(Const(5.0), Const(2.0)), Const(1.0))

    def test_named_constants(self):
        """pi y e se sustituyen por sus valores"""
        assert evaluate(parse("pi"), 0.0) == math.pi
        assert evaluate(parse("e"), 0.0) == math.e

    def test_bound_constants(self):
        """Los identificadores extra se ligan a constantes"""
        f = parse("x^(1 - alpha)", constants={"alpha": 0.5})
        assert evaluate(f, 4.0) == pytest.approx(2.0, abs=1e-15)

    def test_source_is_preserved(self):
        """La función conserva el texto original"""
        assert parse("sin(x) + 1").source == "sin(x) + 1"


class TestParseErrors:
    """Tests para los errores de sintaxis con offset en bytes"""

    def test_misplaced_operator_reports_offset(self):
        """2*+x falla en el offset 2"""
        with pytest.raises(ExpressionSyntaxError) as exc:
            parse("2*+x")
        assert exc.value.offset == 2

    def test_unexpected_end_reports_length(self):
        """El fin de entrada se reporta como la longitud del texto"""
        with pytest.raises(ExpressionSyntaxError) as exc:
            parse("x + ")
        assert exc.value.offset == len("x + ".encode("utf-8"))

    def test_unknown_variable(self):
        """y no es la variable de las expresiones"""
        with pytest.raises(UnknownIdentifier) as exc:
            parse("y + 1")
        assert exc.value.name == "y"
        assert exc.value.offset == 0

    def test_unknown_function(self):
        """tan no está en el catálogo de funciones"""
        with pytest.raises(UnknownIdentifier) as exc:
            parse("2*tan(x)")
        assert exc.value.offset == 2

    def test_wrong_arity(self):
        """pow espera dos argumentos"""
        with pytest.raises(ExpressionSyntaxError):
            parse("pow(x)")

    def test_syntax_errors_are_value_errors(self):
        """Los callers pueden capturar ValueError"""
        with pytest.raises(ValueError):
            parse("(x")


class TestEvaluate:
    """Tests para evaluate"""

    def test_square_at_three(self):
        assert evaluate(parse("x^2"), 3.0) == 9.0

    def test_log_at_one(self):
        assert evaluate(parse("log(x)"), 1.0) == 0.0

    def test_log_of_negative_raises(self):
        """log(−1) está fuera del dominio"""
        with pytest.raises(DomainError):
            evaluate(parse("log(x)"), -1.0)

    def test_sqrt_of_negative_raises(self):
        with pytest.raises(DomainError):
            evaluate(parse("sqrt(x)"), -4.0)

    def test_division_by_zero_raises(self):
        with pytest.raises(DomainError):
            evaluate(parse("1/x"), 0.0)

    def test_fractional_power_of_negative_base_raises(self):
        with pytest.raises(DomainError):
            evaluate(parse("x^0.5"), -1.0)

    def test_integer_power_of_negative_base(self):
        assert evaluate(parse("x^3"), -2.0) == -8.0

    def test_array_evaluation_keeps_shape(self):
        """Un array de entrada produce un array de la misma forma"""
        values = evaluate(parse("2*x + 1"), np.array([0.0, 1.0, 2.0]))
        np.testing.assert_array_equal(values, [1.0, 3.0, 5.0])

    def test_constant_over_array(self):
        values = parse("5")(np.linspace(0.0, 1.0, 4))
        np.testing.assert_array_equal(values, np.full(4, 5.0))

    def test_scalar_returns_float(self):
        assert isinstance(parse("x + 1")(1.0), float)


class TestNumericDerivative:
    """Tests para numeric_derivative"""

    def test_square_at_one(self):
        assert numeric_derivative(parse("x^2"), 1.0, 1e-5) == pytest.approx(2.0, abs=1e-9)

    def test_constant_function(self):
        assert numeric_derivative(parse("5"), 0.3, 1e-5) == pytest.approx(0.0, abs=1e-12)

    def test_exp_at_zero(self):
        assert numeric_derivative(parse("exp(x)"), 0.0, 1e-5) == pytest.approx(1.0, abs=1e-9)

    def test_non_positive_step_raises(self):
        with pytest.raises(ValidationError):
            numeric_derivative(parse("x"), 0.0, 0.0)


class TestCatalog:
    """Tests para el catálogo de funciones con nombre"""

    def test_catalog_names(self):
        assert set(CATALOG_SOURCES) == {"square", "abs", "exp", "neg_square", "cube"}

    def test_catalog_entry_uses_name_as_source(self):
        entry = catalog_entry("cube")
        assert entry.source == "cube"
        assert entry(2.0) == 8.0

    def test_resolve_catalog_name(self):
        assert resolve("neg_square")(3.0) == -9.0

    def test_resolve_expression(self):
        assert resolve(" x + 1 ")(1.0) == 2.0

    def test_unknown_catalog_name_raises(self):
        with pytest.raises(KeyError):
            catalog_entry("quartic")


# Árboles aleatorios con constantes no negativas (un literal negativo se re-parsea como Neg)
_constants = st.floats(min_value=0.0, max_value=1e6, allow_nan=False, allow_infinity=False).map(lambda v: Const(abs(v)))
_leaves = st.one_of(_constants, st.just(Var("x")))


def _extend(children):
    binary = st.sampled_from([Add, Sub, Mul, Div, Pow])
    return st.one_of(
        st.builds(lambda op, l, r: op(l, r), binary, children, children),
        st.builds(Neg, children),
        st.builds(lambda arg: Call("exp", (arg,)), children),
        st.builds(lambda l, r: Call("pow", (l, r)), children, children),
    )


_trees = st.recursive(_leaves, _extend, max_leaves=12)


@hypothesis_settings(max_examples=200, deadline=None)
@given(_trees)
def test_serialize_then_parse_is_stable(tree):
    """Serializar y re-parsear devuelve el mismo árbol"""
    assert parse_tree(serialize(tree)) == tree


@hypothesis_settings(max_examples=100, deadline=None)
@given(
    st.lists(st.integers(min_value=-5, max_value=5), min_size=1, max_size=6),
    st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
)
def test_polynomial_matches_horner(coefficients, x):
    """Un polinomio parseado coincide con la evaluación de Horner"""
    text = " + ".join(f"({c})*x^{k}" for k, c in enumerate(coefficients))
    expected = 0.0
    for c in reversed(coefficients):
        expected = expected * x + c
    scale = sum(abs(c) * 2.0 ** k for k, c in enumerate(coefficients))
    assert evaluate(parse(text), x) == pytest.approx(expected, abs=1e-12 * max(1.0, scale))
