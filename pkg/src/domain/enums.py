"""
Enums del dominio fracjensen.
Define enumeraciones para lados de operadores, veredictos, medidas y formatos.
"""

from enum import Enum


class _ValueEnum(str, Enum):
    """Base con helpers de validación compartidos por todos los enums"""

    @classmethod
    def is_valid(cls, value: str) -> bool:
        """
        Verifica si un valor es válido para el enum.

        Args:
            value: String a validar

        Returns:
            True si es válido, False en caso contrario
        """
        if not value:
            return False

        try:
            cls(value.lower())
            return True
        except ValueError:
            return False

    @classmethod
    def values(cls) -> list:
        """Retorna todos los valores válidos del enum"""
        return [item.value for item in cls]


class Side(_ValueEnum):
    """
    Lado del operador fraccionario.
    RIGHT integra sobre [a, t] (operador a+), LEFT sobre [t, b] (operador b-).
    """
    RIGHT = "right"
    LEFT = "left"


class Endpoint(_ValueEnum):
    """Extremo del intervalo donde vive la singularidad débil"""
    LEFT = "left"
    RIGHT = "right"


class Verdict(_ValueEnum):
    """Veredicto de un reporte de desigualdad"""
    HOLDS = "holds"
    VIOLATED = "violated"
    HYPOTHESIS_FAILED = "hypothesis_failed"


class MeasureKind(_ValueEnum):
    """Tipos de medida de probabilidad soportados"""
    DISCRETE = "discrete"
    DENSITY = "density"
    FRACTIONAL_KERNEL = "fractional_kernel"


class Relaxation(_ValueEnum):
    """Hipótesis que el falsificador tiene permitido abandonar"""
    NONE = "none"
    DROP_CONVEXITY = "drop_convexity"
    DROP_ZERO_IN_I = "drop_zero_in_i"
    DROP_RANGE = "drop_range"


class KernelKind(_ValueEnum):
    """Kernels disponibles desde los jobs"""
    RL = "rl"
    HADAMARD = "hadamard"
    GWEIGHTED = "gweighted"
    CUSTOM = "custom"


class Command(_ValueEnum):
    """Comandos del CLI"""
    INTEGRATE = "integrate"
    DERIVE = "derive"
    CHECK = "check"
    SWEEP = "sweep"
    FALSIFY = "falsify"


class OutputFormat(_ValueEnum):
    """Formatos de salida soportados"""
    TEXT = "text"
    CSV = "csv"
    EXCEL = "excel"
