"""
Nodos del árbol de expresiones.
Son inmutables y comparables por valor, lo que permite verificar la
estabilidad parse -> serialize -> parse comparando árboles.
"""

from dataclasses import dataclass
from typing import Tuple, Union


@dataclass(frozen=True)
class Const:
    """Constante numérica"""
    value: float


@dataclass(frozen=True)
class Var:
    """La variable x"""
    name: str = "x"


@dataclass(frozen=True)
class Neg:
    """Menos unario"""
    operand: 'Node'


@dataclass(frozen=True)
class Add:
    left: 'Node'
    right: 'Node'


@dataclass(frozen=True)
class Sub:
    left: 'Node'
    right: 'Node'


@dataclass(frozen=True)
class Mul:
    left: 'Node'
    right: 'Node'


@dataclass(frozen=True)
class Div:
    left: 'Node'
    right: 'Node'


@dataclass(frozen=True)
class Pow:
    """Potencia, asociativa a derecha"""
    base: 'Node'
    exponent: 'Node'


@dataclass(frozen=True)
class Call:
    """Llamada a función del catálogo (exp, log, sin, cos, sqrt, abs, pow)"""
    name: str
    args: Tuple['Node', ...]


Node = Union[Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call]

_BINARY_SYMBOLS = {Add: "+", Sub: "-", Mul: "*", Div: "/", Pow: "^"}


def serialize(node: Node) -> str:
    """
    Serializa un árbol a texto totalmente parentizado.
    Las constantes usan repr(float) para que el re-parseo sea bit-exacto.

    Args:
        node: Raíz del árbol

    Returns:
        Texto que parsea al mismo árbol
    """
    if isinstance(node, Const):
        return repr(float(node.value))
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{serialize(node.operand)})"
    if isinstance(node, Call):
        args = ", ".join(serialize(arg) for arg in node.args)
        return f"{node.name}({args})"
    if isinstance(node, Pow):
        return f"({serialize(node.base)}^{serialize(node.exponent)})"

    symbol = _BINARY_SYMBOLS[type(node)]
    return f"({serialize(node.left)} {symbol} {serialize(node.right)})"
