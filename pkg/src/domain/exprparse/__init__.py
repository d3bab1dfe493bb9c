"""
Front-end de expresiones: parseo, evaluación y catálogo de funciones escalares.
"""

from .catalog import CATALOG_SOURCES, catalog_entry, resolve
from .function import ScalarFunction, evaluate, numeric_derivative, parse
from .nodes import Add, Call, Const, Div, Mul, Neg, Node, Pow, Sub, Var, serialize
from .parser import FUNCTION_ARITY, NAMED_CONSTANTS, parse_tree

__all__ = [
    "Add", "Call", "Const", "Div", "Mul", "Neg", "Node", "Pow", "Sub", "Var",
    "CATALOG_SOURCES", "FUNCTION_ARITY", "NAMED_CONSTANTS",
    "ScalarFunction", "catalog_entry", "evaluate", "numeric_derivative",
    "parse", "parse_tree", "resolve", "serialize",
]
