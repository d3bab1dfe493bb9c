"""
Funciones escalares evaluables.

Un ScalarFunction envuelve el árbol parseado y una clausura compilada que
evalúa vectorizado con numpy. Es inmutable y seguro para evaluación
concurrente desde varios hilos.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Optional, Tuple, Union

import numpy as np

from ..errors import DomainError, ValidationError
from .nodes import Add, Call, Const, Div, Mul, Neg, Node, Pow, Sub, Var
from .parser import parse_tree


logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
Compiled = Callable[[np.ndarray], np.ndarray]


def _check_log(arg: np.ndarray) -> np.ndarray:
    if np.any(arg <= 0):
        raise DomainError("log de un valor no positivo")
    return np.log(arg)


def _check_sqrt(arg: np.ndarray) -> np.ndarray:
    if np.any(arg < 0):
        raise DomainError("sqrt de un valor negativo")
    return np.sqrt(arg)


def _checked_div(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    if np.any(den == 0):
        raise DomainError("división por cero")
    return num / den


def _checked_pow(base: np.ndarray, exponent: np.ndarray) -> np.ndarray:
    base, exponent = np.broadcast_arrays(base, exponent)
    if np.any((base < 0) & (exponent != np.round(exponent))):
        raise DomainError("potencia no entera de una base negativa")
    if np.any((base == 0) & (exponent < 0)):
        raise DomainError("potencia negativa de cero")
    return np.power(base, exponent)


_UNARY_FUNCTIONS = {
    "exp": np.exp,
    "log": _check_log,
    "sin": np.sin,
    "cos": np.cos,
    "sqrt": _check_sqrt,
    "abs": np.abs,
}


def _compile(node: Node) -> Compiled:
    """Traduce el árbol a una clausura que opera sobre arrays de numpy"""
    if isinstance(node, Const):
        value = float(node.value)
        return lambda x: np.full(np.shape(x), value)
    if isinstance(node, Var):
        return lambda x: x
    if isinstance(node, Neg):
        operand = _compile(node.operand)
        return lambda x: -operand(x)
    if isinstance(node, Add):
        left, right = _compile(node.left), _compile(node.right)
        return lambda x: left(x) + right(x)
    if isinstance(node, Sub):
        left, right = _compile(node.left), _compile(node.right)
        return lambda x: left(x) - right(x)
    if isinstance(node, Mul):
        left, right = _compile(node.left), _compile(node.right)
        return lambda x: left(x) * right(x)
    if isinstance(node, Div):
        left, right = _compile(node.left), _compile(node.right)
        return lambda x: _checked_div(left(x), right(x))
    if isinstance(node, Pow):
        base, exponent = _compile(node.base), _compile(node.exponent)
        return lambda x: _checked_pow(base(x), exponent(x))
    if isinstance(node, Call):
        compiled_args = [_compile(arg) for arg in node.args]
        if node.name == "pow":
            base, exponent = compiled_args
            return lambda x: _checked_pow(base(x), exponent(x))
        function = _UNARY_FUNCTIONS[node.name]
        (argument,) = compiled_args
        return lambda x: function(argument(x))
    raise TypeError(f"Nodo no soportado: {type(node).__name__}")


@dataclass(frozen=True)
class ScalarFunction:
    """
    Función real de una variable real: expresión parseada o entrada del catálogo.

    Attributes:
        source: Texto original o nombre del catálogo
        ast: Árbol de la expresión
        domain_hint: Intervalo sugerido donde la función está definida
    """
    source: str
    ast: Node
    domain_hint: Optional[Tuple[float, float]] = None
    _compiled: Compiled = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self._compiled is None:
            object.__setattr__(self, "_compiled", _compile(self.ast))

    def __call__(self, x: ArrayLike) -> ArrayLike:
        return evaluate(self, x)


def evaluate(f: ScalarFunction, x: ArrayLike) -> ArrayLike:
    """
    Evalúa la función en doble precisión IEEE.

    Args:
        f: Función a evaluar
        x: Escalar o array de puntos

    Returns:
        float si x es escalar, ndarray con la forma de x en otro caso

    Raises:
        DomainError: log de no positivo, raíz de negativo, división por cero,
            potencia no entera de base negativa o resultado no finito
    """
    scalar = np.ndim(x) == 0
    points = np.asarray(x, dtype=float)

    with np.errstate(all="ignore"):
        values = f._compiled(points)

    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise DomainError(f"Resultado no finito al evaluar '{f.source}'")

    if scalar:
        return float(values)
    return values


@lru_cache(maxsize=512)
def _parse_cached(text: str, constants: Tuple[Tuple[str, float], ...]) -> Node:
    return parse_tree(text, dict(constants))


def parse(
    text: str,
    domain_hint: Optional[Tuple[float, float]] = None,
    constants: Optional[Mapping[str, float]] = None
) -> ScalarFunction:
    """
    Parsea una expresión a ScalarFunction.

    Args:
        text: Expresión no vacía
        domain_hint: Intervalo de definición sugerido (opcional)
        constants: Identificadores extra ligados a constantes

    Returns:
        ScalarFunction lista para evaluar

    Raises:
        ExpressionSyntaxError: Entrada mal formada (con offset en bytes)
        UnknownIdentifier: Nombre fuera del catálogo
    """
    bound = tuple(sorted((constants or {}).items()))
    ast = _parse_cached(text, bound)
    return ScalarFunction(source=text, ast=ast, domain_hint=domain_hint)


def numeric_derivative(f: Callable[[ArrayLike], ArrayLike], x: float, h: float = 1e-5) -> float:
    """
    Derivada por diferencia central (f(x+h) − f(x−h)) / (2h).

    Args:
        f: Función evaluable
        x: Punto
        h: Paso positivo

    Returns:
        Aproximación de f'(x)

    Raises:
        ValidationError: Si h <= 0
        DomainError: Propagado desde la evaluación
    """
    if not h > 0:
        raise ValidationError(f"El paso h debe ser positivo, recibido {h}")

    return (float(f(x + h)) - float(f(x - h))) / (2.0 * h)
