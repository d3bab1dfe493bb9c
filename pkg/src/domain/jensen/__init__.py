"""
Desigualdades tipo Jensen/Mercer: medidas, motor de certificados de holgura,
aproximación por funciones simples y búsqueda de contraejemplos.
"""

from .approximation import simple_approximation
from .falsifier import RELAXATION_ALLOWANCES, Falsifier, classify, falsify
from .generators import GeneratorConfig, generate_instance, random_phi
from .inequalities import (
    INEQUALITY_IDS,
    INEQUALITY_REQUIREMENTS,
    InequalityEngine,
    InequalityInstance,
)
from .measures import ProbabilityMeasure

__all__ = [
    "Falsifier",
    "GeneratorConfig",
    "INEQUALITY_IDS",
    "INEQUALITY_REQUIREMENTS",
    "InequalityEngine",
    "InequalityInstance",
    "ProbabilityMeasure",
    "RELAXATION_ALLOWANCES",
    "classify",
    "falsify",
    "generate_instance",
    "random_phi",
    "simple_approximation",
]
