"""
Modelos de dominio para fracjensen.
Objetos de valor producidos por la cuadratura, la certificación de m-convexidad
y el motor de desigualdades.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .enums import Verdict


@dataclass(frozen=True)
class QuadratureResult:
    """Resultado de una integración numérica"""
    value: float
    error_estimate: float
    subdivisions: int
    converged: bool

    def __post_init__(self):
        """Valida que la estimación de error sea no negativa"""
        if self.error_estimate < 0:
            raise ValueError("La estimación de error no puede ser negativa")

    def to_dict(self) -> Dict[str, Any]:
        """Convierte a diccionario"""
        return {
            "value": self.value,
            "error_estimate": self.error_estimate,
            "subdivisions": self.subdivisions,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class MConvexityReport:
    """
    Certificado empírico de m-convexidad sobre un intervalo.

    worst_violation es el máximo defecto observado, recortado a 0 cuando pasa.
    scaling_violation es el máximo de φ(my) − mφ(y) sobre la grilla (consecuencia t = 0).
    """
    m: float
    interval: Tuple[float, float]
    worst_violation: float
    witness: Optional[Tuple[float, float, float]]
    samples: int
    tolerance: float
    scaling_violation: float
    contains_zero: bool
    skipped: int = 0
    note: str = "evidencia empírica, no es una prueba"

    def __post_init__(self):
        """Valida la relación entre violación y testigo"""
        if self.worst_violation < 0:
            raise ValueError("worst_violation debe ser >= 0")
        if (self.witness is not None) != (self.worst_violation > self.tolerance):
            raise ValueError("El testigo existe sólo si hay violación")

    @property
    def passed(self) -> bool:
        """True si ningún triple superó la tolerancia"""
        return self.witness is None

    def to_dict(self) -> Dict[str, Any]:
        """Convierte a diccionario"""
        return {
            "m": self.m,
            "interval": list(self.interval),
            "worst_violation": self.worst_violation,
            "witness": list(self.witness) if self.witness else None,
            "samples": self.samples,
            "scaling_violation": self.scaling_violation,
            "contains_zero": self.contains_zero,
            "skipped": self.skipped,
            "note": self.note,
        }


@dataclass(frozen=True)
class HypothesisCheck:
    """Resultado de un chequeo de hipótesis"""
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        """Convierte a diccionario"""
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class InequalityReport:
    """
    Certificado de una instancia de desigualdad: ambos lados, holgura y veredicto.
    slack = rhs − lhs.
    """
    inequality_id: str
    lhs: float
    rhs: float
    slack: float
    hypothesis_checks: Tuple[HypothesisCheck, ...]
    verdict: Verdict
    quadrature_error: float = 0.0
    extras: Dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def build(
        cls,
        inequality_id: str,
        lhs: float,
        rhs: float,
        checks: List[HypothesisCheck],
        tolerance: float,
        quadrature_error: float = 0.0,
        extras: Optional[Dict[str, Any]] = None,
        slack: Optional[float] = None,
    ) -> 'InequalityReport':
        """
        Construye el reporte calculando holgura y veredicto.

        Args:
            inequality_id: Identificador de la desigualdad
            lhs: Lado izquierdo evaluado
            rhs: Lado derecho evaluado
            checks: Chequeos de hipótesis realizados
            tolerance: Tolerancia absoluta para declarar violación
            quadrature_error: Error de cuadratura acumulado
            extras: Datos adicionales (testigos, términos intermedios)
            slack: Holgura explícita (por defecto rhs − lhs)

        Returns:
            InequalityReport con veredicto
        """
        if slack is None:
            slack = rhs - lhs

        if not all(check.passed for check in checks):
            verdict = Verdict.HYPOTHESIS_FAILED
        elif slack >= -(tolerance + quadrature_error):
            verdict = Verdict.HOLDS
        else:
            verdict = Verdict.VIOLATED

        return cls(
            inequality_id=inequality_id,
            lhs=float(lhs),
            rhs=float(rhs),
            slack=float(slack),
            hypothesis_checks=tuple(checks),
            verdict=verdict,
            quadrature_error=float(quadrature_error),
            extras=dict(extras or {}),
        )

    def failed_checks(self) -> List[str]:
        """Nombres de los chequeos que fallaron"""
        return [check.name for check in self.hypothesis_checks if not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        """Convierte a diccionario"""
        return {
            "inequality_id": self.inequality_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "hypothesis_checks": [check.to_dict() for check in self.hypothesis_checks],
            "verdict": self.verdict.value,
            "quadrature_error": self.quadrature_error,
            "extras": self.extras,
        }


@dataclass(frozen=True)
class SimpleApproximation:
    """Aproximación por funciones simples diádicas de f bajo μ"""
    n: int
    masses: Tuple[float, ...]
    levels: Tuple[float, ...]
    integral: float

    def to_dict(self) -> Dict[str, Any]:
        """Convierte a diccionario"""
        return {
            "n": self.n,
            "masses": list(self.masses),
            "levels": list(self.levels),
            "integral": self.integral,
        }


@dataclass(frozen=True)
class Counterexample:
    """Instancia que viola una desigualdad bajo una relajación dada"""
    inequality_id: str
    relaxation: str
    instance_index: int
    kind: str
    report: InequalityReport
    instance: Dict[str, Any]
    shrink_steps: int = 0

    def to_dict(self) -> Dict[str, Any]:
        """Convierte a diccionario"""
        return {
            "inequality_id": self.inequality_id,
            "relaxation": self.relaxation,
            "instance_index": self.instance_index,
            "kind": self.kind,
            "report": self.report.to_dict(),
            "instance": self.instance,
            "shrink_steps": self.shrink_steps,
        }


@dataclass(frozen=True)
class SweepRow:
    """Fila de la tabla de salida: una por punto de grilla"""
    alpha: Optional[float]
    m: Optional[float]
    lhs: float
    rhs: float
    slack: float
    quadrature_error: float
    verdict: Verdict

    @classmethod
    def from_report(
        cls,
        report: InequalityReport,
        alpha: Optional[float] = None,
        m: Optional[float] = None
    ) -> 'SweepRow':
        """Crea la fila a partir de un reporte de desigualdad"""
        return cls(
            alpha=alpha,
            m=m,
            lhs=report.lhs,
            rhs=report.rhs,
            slack=report.slack,
            quadrature_error=report.quadrature_error,
            verdict=report.verdict,
        )


@dataclass
class JobResult:
    """Resultado de ejecutar un job completo"""
    command: str
    exit_code: int
    run_id: str
    rows: List[SweepRow] = field(default_factory=list)
    reports: List[InequalityReport] = field(default_factory=list)
    quadrature: Optional[QuadratureResult] = None
    derivative: Optional[float] = None
    counterexample: Optional[Counterexample] = None
    summary: Dict[str, Any] = field(default_factory=dict)
