"""
Jerarquía de excepciones del dominio fracjensen.

Toda excepción propia hereda de FracJensenError y además del builtin más
cercano (ValueError o ArithmeticError), así los callers pueden capturar
cualquiera de los dos.
"""

from typing import Optional


class FracJensenError(Exception):
    """Base de todas las excepciones del proyecto"""


class ExpressionSyntaxError(FracJensenError, ValueError):
    """
    Expresión mal formada.

    Attributes:
        offset: Offset en bytes (UTF-8) donde se detectó el error
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class UnknownIdentifier(ExpressionSyntaxError):
    """Identificador fuera del catálogo (variable o función)"""

    def __init__(self, name: str, offset: int):
        super().__init__(f"Identificador desconocido '{name}'", offset)
        self.name = name


class DomainError(FracJensenError, ArithmeticError):
    """Evaluación fuera del dominio matemático de una función"""


class ValidationError(FracJensenError, ValueError):
    """Parámetros inválidos para una operación"""


class SingularKernel(FracJensenError, ArithmeticError):
    """El kernel T se anula en s = t (singularidad débil)"""


class QuadratureError(FracJensenError, ArithmeticError):
    """
    Falla de la cuadratura.

    Attributes:
        partial: Resultado parcial disponible al momento de fallar (puede ser None)
    """

    def __init__(self, message: str, partial: Optional[object] = None):
        super().__init__(message)
        self.partial = partial


class DivergentIntegral(QuadratureError):
    """Los incrementos del refinamiento graduado no contraen"""


class L1Violation(DivergentIntegral):
    """La integral de |f|/T no converge: f no pertenece a L¹_T"""


class MaxSubdivisions(QuadratureError):
    """Se alcanzó el máximo de subdivisiones sin cumplir la tolerancia"""


class NonFiniteIntegrand(QuadratureError):
    """El integrando devolvió un valor no finito en un punto interior"""


class StepTooLarge(FracJensenError, ValueError):
    """El paso de la diferencia central sale del intervalo abierto"""


class HypothesisError(FracJensenError, ValueError):
    """No se cumple una hipótesis estructural de un teorema"""


class UnsortedPoints(HypothesisError):
    """Se declararon puntos ordenados pero no lo están"""


class RangeError(HypothesisError):
    """La función muestreada sale del intervalo [a, b]"""


class ConfigError(FracJensenError, ValueError):
    """
    Error en el archivo de job o en los argumentos del CLI.

    Attributes:
        key: Nombre de la clave ofensiva
    """

    def __init__(self, key: str, message: Optional[str] = None):
        super().__init__(message or f"Clave inválida o faltante: {key}")
        self.key = key
