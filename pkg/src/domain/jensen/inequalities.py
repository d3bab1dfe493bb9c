"""
Motor de desigualdades tipo Jensen/Mercer.

Cada operación evalúa ambos lados, la holgura rhs − lhs y los chequeos de
hipótesis (convexidad empírica, 0 ∈ I, rango de f). Con strict=True las
hipótesis estructurales fallidas lanzan excepción; con strict=False quedan
registradas y el veredicto pasa a hypothesis_failed.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ...config.constants import Constants
from ...config.settings import settings
from ..enums import MeasureKind
from ..errors import DomainError, HypothesisError, RangeError, UnsortedPoints, ValidationError
from ..exprparse import numeric_derivative
from ..kernels import KernelSpec
from ..mconvex import certify_grid
from ..model import HypothesisCheck, InequalityReport
from .measures import ProbabilityMeasure


logger = logging.getLogger(__name__)

Function = Callable[[np.ndarray], np.ndarray]

CHECK_CONVEXITY = "convexity"
CHECK_M_CONVEXITY = "m_convexity"
CHECK_ZERO = "zero_in_interval"
CHECK_RANGE = "range"
CHECK_JUMPS = "endpoint_jumps_nonnegative"

# Campos de la instancia que cada desigualdad necesita (m y weights tienen default)
INEQUALITY_REQUIREMENTS: Dict[str, Tuple[str, ...]] = {
    "jensen_classical": ("phi", "f", "measure"),
    "mjensen_discrete": ("phi", "points"),
    "mjensen_continuous": ("phi", "f", "measure"),
    "mercer_discrete": ("phi", "points"),
    "lemma_transform": ("phi", "points"),
    "mercer_m_discrete": ("phi", "points"),
    "mercer_m_endpoints": ("phi", "a", "b", "points"),
    "mercer_m_continuous": ("phi", "f", "measure", "a", "b"),
    "mercer_continuous": ("phi", "f", "measure", "a", "b"),
    "jensen_sandwich": ("phi", "f", "measure", "a", "b"),
    "fractional_mercer": ("kernel", "phi", "f", "c", "d", "alpha", "a", "b"),
    "mercer_corollary": ("phi", "a", "b", "points"),
    "epsilon_replay": ("phi", "a", "b", "points"),
}

INEQUALITY_IDS: Tuple[str, ...] = tuple(INEQUALITY_REQUIREMENTS)


def _source(fn: Any) -> Optional[str]:
    if fn is None:
        return None
    return getattr(fn, "source", None) or repr(fn)


@dataclass(frozen=True)
class InequalityInstance:
    """
    Datos de una instancia concreta de desigualdad.

    Attributes:
        phi: Función convexa o m-convexa (vectorizada)
        f: Función integrada contra μ
        measure: Medida de probabilidad μ
        points: Puntos de la versión discreta
        weights: Pesos (default uniformes)
        a, b: Extremos del rango de f
        c, d: Soporte de la medida fraccionaria
        alpha: Orden α del kernel
        m: Parámetro de m-convexidad
        kernel: KernelSpec para fractional_mercer
        interval: Intervalo I explícito de las hipótesis
        phi_at_a, phi_at_b: Valores de φ en los extremos (mercer_continuous)
        epsilon: Masa de los extremos en epsilon_replay
        presorted: Exigir puntos ya ordenados
    """
    phi: Optional[Function] = field(default=None, compare=False)
    f: Optional[Function] = field(default=None, compare=False)
    measure: Optional[ProbabilityMeasure] = field(default=None, compare=False)
    points: Optional[Tuple[float, ...]] = None
    weights: Optional[Tuple[float, ...]] = None
    a: Optional[float] = None
    b: Optional[float] = None
    c: Optional[float] = None
    d: Optional[float] = None
    alpha: Optional[float] = None
    m: float = 1.0
    kernel: Optional[KernelSpec] = field(default=None, compare=False)
    interval: Optional[Tuple[float, float]] = None
    phi_at_a: Optional[float] = None
    phi_at_b: Optional[float] = None
    epsilon: float = Constants.DEFAULT_EPSILON
    presorted: bool = False

    def require(self, names: Sequence[str]) -> None:
        """
        Verifica que los campos pedidos estén presentes.

        Raises:
            ValidationError: Nombrando el primer campo faltante
        """
        for name in names:
            if getattr(self, name) is None:
                raise ValidationError(f"Campo requerido faltante para la desigualdad: {name}")

    def with_changes(self, **changes) -> 'InequalityInstance':
        """Copia con campos reemplazados"""
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        """Resumen serializable de la instancia"""
        data: Dict[str, Any] = {
            "phi": _source(self.phi),
            "f": _source(self.f),
            "m": self.m,
        }
        if self.points is not None:
            data["points"] = [float(x) for x in self.points]
        if self.weights is not None:
            data["weights"] = [float(w) for w in self.weights]
        for name in ("a", "b", "c", "d", "alpha", "phi_at_a", "phi_at_b"):
            value = getattr(self, name)
            if value is not None:
                data[name] = value
        if self.interval is not None:
            data["interval"] = list(self.interval)
        if self.measure is not None:
            data["measure"] = self.measure.describe()
        if self.kernel is not None:
            data["kernel"] = self.kernel.name
        return data


def _value(phi: Function, x: float) -> float:
    """φ(x) como float escalar"""
    return float(np.asarray(phi(np.asarray(float(x))), dtype=float))


def _propagated_error(phi: Function, x: float, error: float) -> float:
    """Error de φ(x) inducido por un error en x: |φ'(x)| · error"""
    if error == 0.0:
        return 0.0
    try:
        slope = numeric_derivative(lambda y: _value(phi, y), x, 1e-6 * (1.0 + abs(x)))
    except DomainError:
        return error
    return abs(slope) * error


def _contains(interval: Tuple[float, float], x: float) -> bool:
    slack = 1e-12 * max(1.0, abs(interval[0]), abs(interval[1]))
    return interval[0] - slack <= x <= interval[1] + slack


class InequalityEngine:
    """
    Calcula certificados de holgura para las desigualdades de Jensen y Mercer.

    Los chequeos de convexidad usan certify_grid con una grilla reducida
    (settings.CHECK_GRID_SIZE / CHECK_RANDOM_TRIPLES) y nunca lanzan excepción.
    """

    def __init__(
        self,
        tolerance: Optional[float] = None,
        grid_size: Optional[int] = None,
        random_triples: Optional[int] = None,
        seed: Optional[int] = None,
        strict: bool = True
    ):
        """
        Inicializa el motor.

        Args:
            tolerance: Tolerancia de violación y de cuadratura
            grid_size: Puntos por eje de la grilla de convexidad
            random_triples: Triples aleatorios de la grilla de convexidad
            seed: Semilla de los triples aleatorios
            strict: Lanzar excepción ante hipótesis estructurales fallidas
        """
        self.tolerance = settings.TOLERANCE if tolerance is None else tolerance
        self.grid_size = settings.CHECK_GRID_SIZE if grid_size is None else grid_size
        self.random_triples = settings.CHECK_RANDOM_TRIPLES if random_triples is None else random_triples
        self.seed = settings.SEED if seed is None else seed
        self.strict = strict

        if not self.tolerance > 0:
            raise ValidationError(f"La tolerancia debe ser positiva, recibido {self.tolerance}")

        self._dispatch: Dict[str, Callable[[InequalityInstance], InequalityReport]] = {
            "jensen_classical": self._run_jensen_classical,
            "mjensen_discrete": self._run_mjensen_discrete,
            "mjensen_continuous": self._run_mjensen_continuous,
            "mercer_discrete": self._run_mercer_discrete,
            "lemma_transform": self._run_lemma,
            "mercer_m_discrete": self._run_mercer_m_discrete,
            "mercer_m_endpoints": self._run_mercer_m_endpoints,
            "mercer_m_continuous": self._run_mercer_m_continuous,
            "mercer_continuous": self._run_mercer_continuous,
            "jensen_sandwich": self._run_sandwich,
            "fractional_mercer": self._run_fractional_mercer,
            "mercer_corollary": self._run_corollary,
            "epsilon_replay": self._run_epsilon_replay,
        }

    # ------------------------------------------------------------------
    # Chequeos de hipótesis
    # ------------------------------------------------------------------

    def _convexity_check(self, phi: Function, interval: Tuple[float, float], m: float) -> HypothesisCheck:
        """Certificado empírico de (m-)convexidad registrado como chequeo"""
        name = CHECK_CONVEXITY if m == 1.0 else CHECK_M_CONVEXITY
        lo, hi = interval
        try:
            scale = float(np.max(np.abs(phi(np.linspace(lo, hi, self.grid_size)))))
            report = certify_grid(
                phi, (lo, hi), m,
                n=self.grid_size,
                r=self.random_triples,
                seed=self.seed,
                tolerance=self.tolerance * max(1.0, scale),
                require_zero=False,
            )
        except DomainError as e:
            return HypothesisCheck(name, False, f"φ no definida en [{lo}, {hi}]: {e}")

        if report.passed:
            return HypothesisCheck(name, True, f"{report.samples} triples, {report.note}")
        return HypothesisCheck(
            name, False,
            f"defecto {report.worst_violation:.3e} en (x, y, t) = {report.witness}",
        )

    def _zero_check(self, interval: Tuple[float, float], m: float) -> Optional[HypothesisCheck]:
        """0 ∈ I, sólo exigido para m < 1"""
        if m == 1.0:
            return None
        passed = interval[0] <= 0.0 <= interval[1]
        check = HypothesisCheck(CHECK_ZERO, passed, f"I = [{interval[0]}, {interval[1]}]")
        if not passed and self.strict:
            raise HypothesisError(f"m = {m} < 1 requiere 0 ∈ I, recibido [{interval[0]}, {interval[1]}]")
        return check

    def _range_check(self, values: np.ndarray, a: float, b: float) -> HypothesisCheck:
        """Los valores muestreados de f (o los puntos) deben estar en [a, b]"""
        values = np.atleast_1d(np.asarray(values, dtype=float))
        slack = 1e-12 * max(1.0, abs(a), abs(b))
        outside = values[(values < a - slack) | (values > b + slack)]
        if outside.size == 0:
            return HypothesisCheck(CHECK_RANGE, True, f"{values.size} muestras en [{a}, {b}]")
        if self.strict:
            raise RangeError(f"f sale de [{a}, {b}]: valor {float(outside[0])!r}")
        return HypothesisCheck(CHECK_RANGE, False, f"valor {float(outside[0])!r} fuera de [{a}, {b}]")

    def _build(
        self,
        inequality_id: str,
        lhs: float,
        rhs: float,
        checks: List[Optional[HypothesisCheck]],
        quadrature_error: float = 0.0,
        extras: Optional[Dict[str, Any]] = None,
        slack: Optional[float] = None
    ) -> InequalityReport:
        report = InequalityReport.build(
            inequality_id,
            lhs,
            rhs,
            [check for check in checks if check is not None],
            self.tolerance,
            quadrature_error=quadrature_error,
            extras=extras,
            slack=slack,
        )
        logger.debug(
            f"{inequality_id}: lhs = {report.lhs!r}, rhs = {report.rhs!r}, "
            f"slack = {report.slack!r} -> {report.verdict.value}"
        )
        return report

    # ------------------------------------------------------------------
    # Utilidades de datos
    # ------------------------------------------------------------------

    @staticmethod
    def _sorted_discrete(
        points: Sequence[float],
        weights: Optional[Sequence[float]],
        presorted: bool = False
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        Ordena los puntos de forma estable permutando los pesos.

        Raises:
            UnsortedPoints: Si presorted y los puntos no son no decrecientes
            ValidationError: Si los pesos no forman una distribución
        """
        measure = ProbabilityMeasure.discrete(points, weights)
        xs, ws = measure.points, measure.weights
        if presorted:
            if np.any(np.diff(xs) < 0):
                raise UnsortedPoints(f"Los puntos no están ordenados: {list(xs)}")
            return xs, ws
        order = np.argsort(xs, kind="stable")
        return xs[order], ws[order]

    @staticmethod
    def _range_hull(f: Function, measure: ProbabilityMeasure) -> Tuple[float, float]:
        """Envolvente de f sobre el soporte muestreado de μ"""
        values = np.asarray(f(measure.support_samples()), dtype=float)
        return float(np.min(values)), float(np.max(values))

    # ------------------------------------------------------------------
    # Desigualdades
    # ------------------------------------------------------------------

    def jensen_classical(
        self,
        phi: Function,
        f: Function,
        measure: ProbabilityMeasure,
        interval: Optional[Tuple[float, float]] = None
    ) -> InequalityReport:
        """
        φ(∫f dμ) ≤ ∫φ∘f dμ.

        Args:
            phi: Función convexa en la envolvente del rango de f
            f: Función μ-integrable
            measure: Medida de probabilidad
            interval: Intervalo de la hipótesis (default envolvente de f)

        Returns:
            InequalityReport con lhs = φ(media), rhs = media de φ∘f
        """
        interval = interval or self._range_hull(f, measure)
        check = self._convexity_check(phi, interval, 1.0)

        mean = measure.expect(f)
        composed = measure.expect(lambda s: phi(f(s)))

        lhs = _value(phi, mean.value)
        error = _propagated_error(phi, mean.value, mean.error_estimate) + composed.error_estimate
        return self._build(
            "jensen_classical", lhs, composed.value, [check], error,
            extras={"mean": mean.value},
        )

    def mjensen_discrete(
        self,
        phi: Function,
        measure: ProbabilityMeasure,
        m: float,
        interval: Optional[Tuple[float, float]] = None
    ) -> InequalityReport:
        """
        φ(m Σ w_k x_k) ≤ m Σ w_k φ(x_k) para φ m-convexa con 0 ∈ I.

        Raises:
            HypothesisError: Si 0 ∉ I con m < 1 (modo estricto)
        """
        if measure.kind != MeasureKind.DISCRETE:
            raise ValidationError("mjensen_discrete requiere una medida discreta")
        interval = interval or (float(measure.points.min()), float(measure.points.max()))

        checks = [self._zero_check(interval, m), self._convexity_check(phi, interval, m)]

        argument = m * float(np.dot(measure.weights, measure.points))
        lhs = _value(phi, argument)
        rhs = m * float(np.dot(measure.weights, phi(measure.points)))

        return self._build(
            "mjensen_discrete", lhs, rhs, checks,
            extras={"argument": argument, "argument_in_interval": _contains(interval, argument)},
        )

    def mjensen_continuous(
        self,
        phi: Function,
        f: Function,
        measure: ProbabilityMeasure,
        m: float,
        interval: Optional[Tuple[float, float]] = None
    ) -> InequalityReport:
        """φ(m∫f dμ) ≤ m∫φ∘f dμ para φ continua m-convexa con 0 ∈ I"""
        interval = interval or self._range_hull(f, measure)
        checks = [self._zero_check(interval, m), self._convexity_check(phi, interval, m)]

        mean = measure.expect(f)
        composed = measure.expect(lambda s: phi(f(s)))

        argument = m * mean.value
        lhs = _value(phi, argument)
        rhs = m * composed.value
        error = _propagated_error(phi, argument, m * mean.error_estimate) + m * composed.error_estimate

        return self._build(
            "mjensen_continuous", lhs, rhs, checks, error,
            extras={"argument": argument, "argument_in_interval": _contains(interval, argument)},
        )

    def _mercer_m_core(
        self,
        inequality_id: str,
        phi: Function,
        xs: np.ndarray,
        ws: np.ndarray,
        m: float,
        interval: Tuple[float, float]
    ) -> InequalityReport:
        """φ(m x₁ + m² x_n − m² Σw x) ≤ mφ(x₁) + m²φ(x_n) − m Σw φ(m x) sobre puntos ordenados"""
        checks = [self._zero_check(interval, m), self._convexity_check(phi, interval, m)]

        first, last = float(xs[0]), float(xs[-1])
        argument = m * first + m * m * last - m * m * float(np.dot(ws, xs))
        lhs = _value(phi, argument)
        rhs = m * _value(phi, first) + m * m * _value(phi, last) - m * float(np.dot(ws, phi(m * xs)))

        lemma_argument = m * float(np.dot(ws, first + m * last - m * xs))
        extras = {
            "argument": argument,
            "argument_in_interval": _contains(interval, argument),
            "lemma_identity_gap": argument - lemma_argument,
        }
        return self._build(inequality_id, lhs, rhs, checks, extras=extras)

    def mercer_discrete(
        self,
        phi: Function,
        points: Sequence[float],
        weights: Optional[Sequence[float]] = None,
        presorted: bool = False
    ) -> InequalityReport:
        """
        φ(x₁ + x_n − Σ w_k x_k) ≤ φ(x₁) + φ(x_n) − Σ w_k φ(x_k).

        Raises:
            UnsortedPoints: Si presorted y los puntos no están ordenados
        """
        xs, ws = self._sorted_discrete(points, weights, presorted)
        return self._mercer_m_core("mercer_discrete", phi, xs, ws, 1.0, (float(xs[0]), float(xs[-1])))

    def lemma_transform(
        self,
        phi: Function,
        points: Sequence[float],
        m: float,
        presorted: bool = False
    ) -> np.ndarray:
        """
        Defectos φ(x₁ + m x_n − m x_k) − [φ(x₁) + mφ(x_n) − φ(m x_k)] para cada k.

        Returns:
            Vector de defectos en el orden de los puntos ordenados

        Raises:
            HypothesisError: Si 0 ∉ [x₁, x_n] con m < 1 (modo estricto)
        """
        xs, _ = self._sorted_discrete(points, None, presorted)
        first, last = float(xs[0]), float(xs[-1])
        self._zero_check((first, last), m)

        lhs = phi(first + m * last - m * xs)
        rhs = _value(phi, first) + m * _value(phi, last) - phi(m * xs)
        return np.asarray(lhs - rhs, dtype=float)

    def lemma_report(
        self,
        phi: Function,
        points: Sequence[float],
        m: float,
        presorted: bool = False
    ) -> InequalityReport:
        """lemma_transform como reporte: lados del peor k y slack = −max defecto"""
        xs, _ = self._sorted_discrete(points, None, presorted)
        interval = (float(xs[0]), float(xs[-1]))
        checks = [self._zero_check(interval, m), self._convexity_check(phi, interval, m)]

        defects = self.lemma_transform(phi, xs, m, presorted=True)
        worst = int(np.argmax(defects))
        first, last = interval
        lhs = _value(phi, first + m * last - m * xs[worst])
        rhs = _value(phi, first) + m * _value(phi, last) - _value(phi, m * xs[worst])

        return self._build(
            "lemma_transform", lhs, rhs, checks,
            extras={"defects": [float(v) for v in defects], "worst_index": worst},
            slack=-float(defects[worst]),
        )

    def mercer_m_discrete(
        self,
        phi: Function,
        points: Sequence[float],
        weights: Optional[Sequence[float]],
        m: float,
        interval: Optional[Tuple[float, float]] = None,
        presorted: bool = False
    ) -> InequalityReport:
        """
        Versión m-convexa de Mercer discreta; informa además si el argumento
        del lado izquierdo cae en I y la brecha con la identidad del lema.

        Raises:
            HypothesisError: Si 0 ∉ I con m < 1 (modo estricto)
        """
        xs, ws = self._sorted_discrete(points, weights, presorted)
        interval = interval or (float(xs[0]), float(xs[-1]))
        return self._mercer_m_core("mercer_m_discrete", phi, xs, ws, m, interval)

    def _endpoints_core(
        self,
        inequality_id: str,
        phi: Function,
        a: float,
        b: float,
        points: Sequence[float],
        weights: Optional[Sequence[float]],
        m: float
    ) -> InequalityReport:
        """φ(ma + m²b − m² Σw y) ≤ mφ(a) + m²φ(b) − m Σw φ(m y) con y_k ∈ [a, b]"""
        if not a <= b:
            raise ValidationError(f"Se requiere a <= b, recibido [{a}, {b}]")
        measure = ProbabilityMeasure.discrete(points, weights)
        ys, ws = measure.points, measure.weights

        checks = [
            self._zero_check((a, b), m),
            self._range_check(ys, a, b),
            self._convexity_check(phi, (a, b), m),
        ]

        argument = m * a + m * m * b - m * m * float(np.dot(ws, ys))
        lhs = _value(phi, argument)
        rhs = m * _value(phi, a) + m * m * _value(phi, b) - m * float(np.dot(ws, phi(m * ys)))

        return self._build(
            inequality_id, lhs, rhs, checks,
            extras={"argument": argument, "argument_in_interval": _contains((a, b), argument)},
        )

    def mercer_m_endpoints(
        self,
        phi: Function,
        a: float,
        b: float,
        points: Sequence[float],
        weights: Optional[Sequence[float]],
        m: float
    ) -> InequalityReport:
        """
        Mercer m-convexa con extremos a ≤ 0 ≤ b que no necesitan ser puntos.

        Raises:
            HypothesisError: Si 0 ∉ [a, b] con m < 1 (modo estricto)
            RangeError: Si algún punto sale de [a, b] (modo estricto)
        """
        return self._endpoints_core("mercer_m_endpoints", phi, a, b, points, weights, m)

    def mercer_corollary(
        self,
        phi: Function,
        a: float,
        b: float,
        points: Sequence[float],
        weights: Optional[Sequence[float]] = None
    ) -> InequalityReport:
        """φ(a + b − Σw y) ≤ φ(a) + φ(b) − Σw φ(y) para φ convexa e y_k ∈ [a, b]"""
        return self._endpoints_core("mercer_corollary", phi, a, b, points, weights, 1.0)

    def epsilon_replay(
        self,
        phi: Function,
        a: float,
        b: float,
        points: Sequence[float],
        weights: Optional[Sequence[float]],
        m: float,
        epsilon: float = Constants.DEFAULT_EPSILON
    ) -> InequalityReport:
        """
        Reproduce la construcción con pesos (ε/2, (1−ε)w, ε/2) sobre (a, y, b)
        y evalúa la versión discreta; converge a mercer_m_endpoints cuando ε → 0.
        """
        if not 0 < epsilon < 1:
            raise ValidationError(f"ε debe estar en (0, 1), recibido {epsilon}")
        base = ProbabilityMeasure.discrete(points, weights)

        xs = np.concatenate([[a], base.points, [b]])
        ws = np.concatenate([[epsilon / 2.0], (1.0 - epsilon) * base.weights, [epsilon / 2.0]])
        order = np.argsort(xs, kind="stable")

        checks_range = self._range_check(base.points, a, b)
        report = self._mercer_m_core("epsilon_replay", phi, xs[order], ws[order], m, (a, b))
        checks = [checks_range] + list(report.hypothesis_checks)
        extras = dict(report.extras, epsilon=epsilon)
        return self._build("epsilon_replay", report.lhs, report.rhs, checks, extras=extras)

    def mercer_m_continuous(
        self,
        phi: Function,
        f: Function,
        measure: ProbabilityMeasure,
        a: float,
        b: float,
        m: float,
        inequality_id: str = "mercer_m_continuous"
    ) -> InequalityReport:
        """
        φ(ma + m²b − m²∫f dμ) ≤ mφ(a) + m²φ(b) − m∫φ(mf) dμ.

        Raises:
            HypothesisError: Si 0 ∉ [a, b] con m < 1 (modo estricto)
            RangeError: Si f muestreada sale de [a, b] (modo estricto)
        """
        if not a <= b:
            raise ValidationError(f"Se requiere a <= b, recibido [{a}, {b}]")
        checks = [
            self._zero_check((a, b), m),
            self._range_check(f(measure.support_samples()), a, b),
            self._convexity_check(phi, (a, b), m),
        ]

        mean = measure.expect(f)
        scaled = measure.expect(lambda s: phi(m * np.asarray(f(s), dtype=float)))

        argument = m * a + m * m * b - m * m * mean.value
        lhs = _value(phi, argument)
        rhs = m * _value(phi, a) + m * m * _value(phi, b) - m * scaled.value
        error = (
            _propagated_error(phi, argument, m * m * mean.error_estimate)
            + m * scaled.error_estimate
        )

        return self._build(
            inequality_id, lhs, rhs, checks, error,
            extras={
                "argument": argument,
                "argument_in_interval": _contains((a, b), argument),
                "mean": mean.value,
            },
        )

    def mercer_continuous(
        self,
        phi: Function,
        f: Function,
        measure: ProbabilityMeasure,
        a: float,
        b: float,
        phi_at_a: Optional[float] = None,
        phi_at_b: Optional[float] = None
    ) -> InequalityReport:
        """
        φ(a + b − ∫f dμ) ≤ φ(a) + φ(b) − ∫φ∘f dμ para φ convexa en [a, b]
        sin continuidad en los extremos.

        phi es la expresión interior φ* (límites laterales en a y b); phi_at_a y
        phi_at_b son los valores reales de φ, que pueden superar a esos límites.
        ∫φ∘f dμ = ∫φ*∘f dμ + Δ_a μ({f = a}) + Δ_b μ({f = b}).
        """
        if not a <= b:
            raise ValidationError(f"Se requiere a <= b, recibido [{a}, {b}]")

        limit_a, limit_b = _value(phi, a), _value(phi, b)
        value_a = limit_a if phi_at_a is None else float(phi_at_a)
        value_b = limit_b if phi_at_b is None else float(phi_at_b)
        delta_a, delta_b = value_a - limit_a, value_b - limit_b

        checks = [
            self._range_check(f(measure.support_samples()), a, b),
            self._convexity_check(phi, (a, b), 1.0),
            HypothesisCheck(
                CHECK_JUMPS, delta_a >= 0 and delta_b >= 0,
                f"Δ_a = {delta_a!r}, Δ_b = {delta_b!r}",
            ),
        ]

        atom_a = measure.atom_mass(lambda x: np.asarray(f(x)) == a)
        atom_b = measure.atom_mass(lambda x: np.asarray(f(x)) == b)

        mean = measure.expect(f)
        composed = measure.expect(lambda s: phi(f(s)))
        composed_value = composed.value + delta_a * atom_a + delta_b * atom_b

        def phi_actual(x: float) -> float:
            if x == a:
                return value_a
            if x == b:
                return value_b
            return _value(phi, x)

        argument = a + b - mean.value
        lhs = phi_actual(argument)
        rhs = value_a + value_b - composed_value
        error = _propagated_error(phi, argument, mean.error_estimate) + composed.error_estimate

        return self._build(
            "mercer_continuous", lhs, rhs, checks, error,
            extras={
                "mean": mean.value,
                "delta_a": delta_a,
                "delta_b": delta_b,
                "atom_a": atom_a,
                "atom_b": atom_b,
                "jump_correction": delta_a * (1.0 - atom_a) + delta_b * (1.0 - atom_b),
            },
        )

    def jensen_sandwich(
        self,
        phi: Function,
        f: Function,
        measure: ProbabilityMeasure,
        a: float,
        b: float
    ) -> InequalityReport:
        """
        φ(∫f dμ) ≤ ∫φ∘f dμ ≤ φ(a) + φ(b) − φ(a + b − ∫f dμ).

        Returns:
            Reporte con lhs y rhs extremos, middle en extras y
            slack = min(lower_gap, upper_gap)
        """
        if not a <= b:
            raise ValidationError(f"Se requiere a <= b, recibido [{a}, {b}]")
        checks = [
            self._range_check(f(measure.support_samples()), a, b),
            self._convexity_check(phi, (a, b), 1.0),
        ]

        mean = measure.expect(f)
        middle = measure.expect(lambda s: phi(f(s)))

        lhs = _value(phi, mean.value)
        rhs = _value(phi, a) + _value(phi, b) - _value(phi, a + b - mean.value)
        lower_gap = middle.value - lhs
        upper_gap = rhs - middle.value
        error = 2.0 * _propagated_error(phi, mean.value, mean.error_estimate) + middle.error_estimate

        return self._build(
            "jensen_sandwich", lhs, rhs, checks, error,
            extras={"middle": middle.value, "lower_gap": lower_gap, "upper_gap": upper_gap},
            slack=min(lower_gap, upper_gap),
        )

    def fractional_mercer(
        self,
        kernel: KernelSpec,
        phi: Function,
        f: Function,
        c: float,
        d: float,
        alpha: float,
        a: float,
        b: float,
        m: float
    ) -> InequalityReport:
        """
        Mercer m-convexa con la medida del kernel fraccionario 1/(𝕋(α) T(d, s, α)) en [c, d].

        Raises:
            DivergentIntegral: Si 𝕋(α) no es finito
            RangeError: Si f sale de [a, b] (modo estricto)
            HypothesisError: Si 0 ∉ [a, b] con m < 1 (modo estricto)
        """
        measure = ProbabilityMeasure.fractional_kernel(kernel, c, d, alpha, self.tolerance)
        report = self.mercer_m_continuous(phi, f, measure, a, b, m, inequality_id="fractional_mercer")
        report.extras["normalizer"] = measure.normalizer_value
        return report

    # ------------------------------------------------------------------
    # Despacho por identificador
    # ------------------------------------------------------------------

    def run(self, inequality_id: str, instance: InequalityInstance) -> InequalityReport:
        """
        Evalúa la desigualdad identificada sobre la instancia.

        Raises:
            ValidationError: Si el identificador es desconocido o faltan campos
        """
        if inequality_id not in self._dispatch:
            raise ValidationError(
                f"Desigualdad desconocida: {inequality_id}. Disponibles: {', '.join(INEQUALITY_IDS)}"
            )
        instance.require(INEQUALITY_REQUIREMENTS[inequality_id])
        return self._dispatch[inequality_id](instance)

    def _discrete_measure(self, inst: InequalityInstance) -> ProbabilityMeasure:
        if inst.measure is not None and inst.measure.kind == MeasureKind.DISCRETE:
            return inst.measure
        inst.require(("points",))
        return ProbabilityMeasure.discrete(inst.points, inst.weights)

    def _run_jensen_classical(self, inst: InequalityInstance) -> InequalityReport:
        return self.jensen_classical(inst.phi, inst.f, inst.measure, inst.interval)

    def _run_mjensen_discrete(self, inst: InequalityInstance) -> InequalityReport:
        return self.mjensen_discrete(inst.phi, self._discrete_measure(inst), inst.m, inst.interval)

    def _run_mjensen_continuous(self, inst: InequalityInstance) -> InequalityReport:
        return self.mjensen_continuous(inst.phi, inst.f, inst.measure, inst.m, inst.interval)

    def _run_mercer_discrete(self, inst: InequalityInstance) -> InequalityReport:
        return self.mercer_discrete(inst.phi, inst.points, inst.weights, inst.presorted)

    def _run_lemma(self, inst: InequalityInstance) -> InequalityReport:
        return self.lemma_report(inst.phi, inst.points, inst.m, inst.presorted)

    def _run_mercer_m_discrete(self, inst: InequalityInstance) -> InequalityReport:
        return self.mercer_m_discrete(inst.phi, inst.points, inst.weights, inst.m, inst.interval, inst.presorted)

    def _run_mercer_m_endpoints(self, inst: InequalityInstance) -> InequalityReport:
        return self.mercer_m_endpoints(inst.phi, inst.a, inst.b, inst.points, inst.weights, inst.m)

    def _run_mercer_m_continuous(self, inst: InequalityInstance) -> InequalityReport:
        return self.mercer_m_continuous(inst.phi, inst.f, inst.measure, inst.a, inst.b, inst.m)

    def _run_mercer_continuous(self, inst: InequalityInstance) -> InequalityReport:
        return self.mercer_continuous(inst.phi, inst.f, inst.measure, inst.a, inst.b, inst.phi_at_a, inst.phi_at_b)

    def _run_sandwich(self, inst: InequalityInstance) -> InequalityReport:
        return self.jensen_sandwich(inst.phi, inst.f, inst.measure, inst.a, inst.b)

    def _run_fractional_mercer(self, inst: InequalityInstance) -> InequalityReport:
        return self.fractional_mercer(
            inst.kernel, inst.phi, inst.f, inst.c, inst.d, inst.alpha, inst.a, inst.b, inst.m
        )

    def _run_corollary(self, inst: InequalityInstance) -> InequalityReport:
        return self.mercer_corollary(inst.phi, inst.a, inst.b, inst.points, inst.weights)

    def _run_epsilon_replay(self, inst: InequalityInstance) -> InequalityReport:
        return self.epsilon_replay(inst.phi, inst.a, inst.b, inst.points, inst.weights, inst.m, inst.epsilon)
