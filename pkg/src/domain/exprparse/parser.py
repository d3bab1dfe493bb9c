"""
Parser de expresiones escalares de una variable.

Gramática LALR fija: + - (izquierda) < * / (izquierda) < menos unario < ^ (derecha).
Los errores se reportan con offset en bytes UTF-8 del texto original.
"""

import logging
import math
from typing import Dict, Mapping, Optional

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError

from ..errors import ExpressionSyntaxError, UnknownIdentifier
from .nodes import Add, Call, Const, Div, Mul, Neg, Node, Pow, Sub, Var


logger = logging.getLogger(__name__)


EXPRESSION_GRAMMAR = r"""
    ?start: sum

    ?sum: product
        | sum "+" product       -> add
        | sum "-" product       -> sub

    ?product: unary
        | product "*" unary     -> mul
        | product "/" unary     -> div

    ?unary: power
        | "-" unary             -> neg

    ?power: atom
        | atom "^" unary        -> pow

    ?atom: NUMBER               -> number
         | NAME                 -> name
         | NAME "(" args ")"    -> call
         | "(" sum ")"

    args: sum ("," sum)*

    %import common.CNAME -> NAME
    %import common.NUMBER
    %import common.WS

    %ignore WS
"""

VARIABLE_NAME = "x"

NAMED_CONSTANTS: Dict[str, float] = {
    "pi": math.pi,
    "e": math.e,
}

FUNCTION_ARITY: Dict[str, int] = {
    "exp": 1,
    "log": 1,
    "sin": 1,
    "cos": 1,
    "sqrt": 1,
    "abs": 1,
    "pow": 2,
}

_parser = Lark(EXPRESSION_GRAMMAR, parser="lalr", propagate_positions=False)


@v_args(inline=True)
class _TreeBuilder(Transformer):
    """Convierte el árbol de lark en nodos del dominio validando identificadores"""

    def __init__(self, text: str, constants: Mapping[str, float]):
        super().__init__()
        self._text = text
        self._constants = constants

    def _offset(self, token: Token) -> int:
        return _byte_offset(self._text, token.start_pos)

    def number(self, token):
        return Const(float(token))

    def name(self, token):
        identifier = str(token)
        if identifier == VARIABLE_NAME:
            return Var(VARIABLE_NAME)
        if identifier in self._constants:
            return Const(float(self._constants[identifier]))
        if identifier in NAMED_CONSTANTS:
            return Const(NAMED_CONSTANTS[identifier])
        raise UnknownIdentifier(identifier, self._offset(token))

    def call(self, token, args):
        identifier = str(token)
        if identifier not in FUNCTION_ARITY:
            raise UnknownIdentifier(identifier, self._offset(token))
        expected = FUNCTION_ARITY[identifier]
        if len(args) != expected:
            raise ExpressionSyntaxError(
                f"La función '{identifier}' espera {expected} argumento(s), recibió {len(args)}",
                self._offset(token),
            )
        return Call(identifier, tuple(args))

    def args(self, *children):
        return list(children)

    def add(self, left, right):
        return Add(left, right)

    def sub(self, left, right):
        return Sub(left, right)

    def mul(self, left, right):
        return Mul(left, right)

    def div(self, left, right):
        return Div(left, right)

    def neg(self, operand):
        return Neg(operand)

    def pow(self, base, exponent):
        return Pow(base, exponent)


def _byte_offset(text: str, char_offset: int) -> int:
    """Convierte un offset de caracteres en offset de bytes UTF-8"""
    return len(text[:char_offset].encode("utf-8"))


def _error_offset(text: str, error: UnexpectedInput) -> int:
    """Posición del error; el fin de entrada se reporta como len(text) en bytes"""
    token = getattr(error, "token", None)
    if isinstance(error, UnexpectedEOF) or getattr(token, "type", None) == "$END":
        return len(text.encode("utf-8"))
    position = getattr(error, "pos_in_stream", None)
    if position is None or position < 0:
        return len(text.encode("utf-8"))
    return _byte_offset(text, position)


def parse_tree(text: str, constants: Optional[Mapping[str, float]] = None) -> Node:
    """
    Parsea texto a un árbol de nodos.

    Args:
        text: Expresión en la gramática del módulo
        constants: Identificadores extra ligados a constantes (por ejemplo alpha)

    Returns:
        Raíz del árbol

    Raises:
        ExpressionSyntaxError: Si el texto está mal formado
        UnknownIdentifier: Si aparece un nombre fuera del catálogo
    """
    if text is None or not text.strip():
        raise ExpressionSyntaxError("La expresión no puede estar vacía", 0)

    try:
        raw_tree = _parser.parse(text)
    except UnexpectedInput as e:
        offset = _error_offset(text, e)
        logger.debug(f"Error de sintaxis en '{text}' offset {offset}")
        raise ExpressionSyntaxError("Expresión mal formada", offset) from None

    try:
        return _TreeBuilder(text, constants or {}).transform(raw_tree)
    except VisitError as e:
        if isinstance(e.orig_exc, ExpressionSyntaxError):
            raise e.orig_exc from None
        raise
