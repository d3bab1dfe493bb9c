"""
Operadores fraccionarios generalizados.

J^α_{T,a+} f(t) = ∫_a^t f(s)/T(t,s,α) ds  (lado right)
J^α_{T,b−} f(t) = ∫_t^b f(s)/T(t,s,α) ds  (lado left)
D^α_{T,a±} f(t) = ±(1/g'(t)) d/dt J^{1−α} f(t), con signo menos para el lado left.

Las especializaciones Riemann-Liouville, Hadamard y ponderada por g son
conveniencias que comparten el mismo camino de código.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np
from numpy.polynomial import Chebyshev

from ..config.constants import Constants
from ..config.settings import settings
from .enums import Endpoint, Side
from .errors import DivergentIntegral, L1Violation, StepTooLarge, ValidationError
from .exprparse import ScalarFunction
from .kernels import (
    KernelSpec,
    kernel_T_array,
    make_g_weighted,
    make_hadamard,
    make_riemann_liouville,
    singular_exponent,
)
from .model import QuadratureResult
from .quadrature import integrate_endpoint_singular


logger = logging.getLogger(__name__)

Integrand = Union[ScalarFunction, Callable[[np.ndarray], np.ndarray]]

DEFAULT_INTERPOLANT_DEGREE = 64


@dataclass(frozen=True)
class OperatorRequest:
    """
    Parámetros de una aplicación del operador.

    Attributes:
        kernel: KernelSpec que define T
        f: Función a integrar (ScalarFunction o callable vectorizado)
        interval: [a, b]
        side: RIGHT (a+) o LEFT (b−)
        alpha: Orden α > 0
        t: Punto de evaluación en [a, b]
        tol: Tolerancia absoluta
    """
    kernel: KernelSpec
    f: Integrand
    interval: Tuple[float, float]
    side: Side
    alpha: float
    t: float
    tol: float = Constants.DEFAULT_TOLERANCE

    def __post_init__(self):
        """Valida a < b, t ∈ [a, b], α > 0 y tol > 0"""
        a, b = self.interval
        if not a < b:
            raise ValidationError(f"Se requiere a < b, recibido [{a}, {b}]")
        if not a <= self.t <= b:
            raise ValidationError(f"t = {self.t} fuera de [{a}, {b}]")
        if not self.alpha > 0:
            raise ValidationError(f"α debe ser positivo, recibido {self.alpha}")
        if not self.tol > 0:
            raise ValidationError(f"La tolerancia debe ser positiva, recibido {self.tol}")
        object.__setattr__(self, "side", Side(self.side))

    def with_changes(self, **changes) -> 'OperatorRequest':
        """Copia del request con campos reemplazados"""
        fields = {
            "kernel": self.kernel,
            "f": self.f,
            "interval": self.interval,
            "side": self.side,
            "alpha": self.alpha,
            "t": self.t,
            "tol": self.tol,
        }
        fields.update(changes)
        return OperatorRequest(**fields)


def _integration_range(req: OperatorRequest) -> Tuple[float, float, Endpoint]:
    """Rango de integración y extremo donde vive la singularidad s = t"""
    a, b = req.interval
    if req.side == Side.RIGHT:
        return a, req.t, Endpoint.RIGHT
    return req.t, b, Endpoint.LEFT


def _quotient(req: OperatorRequest, f: Integrand) -> Callable[[np.ndarray], np.ndarray]:
    """Integrando s ↦ f(s) / T(t, s, α)"""
    def integrand(s: np.ndarray) -> np.ndarray:
        return np.asarray(f(s), dtype=float) / kernel_T_array(req.kernel, req.t, s, req.alpha)
    return integrand


def frac_integral(req: OperatorRequest) -> QuadratureResult:
    """
    Operador integral fraccionario J^α_{T,a+} o J^α_{T,b−} en t.

    Args:
        req: OperatorRequest validado

    Returns:
        QuadratureResult; exactamente 0 cuando el rango es vacío

    Raises:
        DivergentIntegral: Si la cuadratura graduada no converge
        L1Violation: Si además |f|/T diverge (f no pertenece a L¹_T)
    """
    lo, hi, endpoint = _integration_range(req)
    if lo == hi:
        return QuadratureResult(0.0, 0.0, 0, True)

    lam = singular_exponent(req.kernel, req.alpha, hi - lo)
    try:
        return integrate_endpoint_singular(_quotient(req, req.f), lo, hi, endpoint, lam, req.tol)
    except DivergentIntegral as e:
        if not check_l1_membership(req):
            raise L1Violation(
                f"f no pertenece a L¹_T en t = {req.t} (α = {req.alpha}, kernel {req.kernel.name})",
                e.partial,
            ) from e
        raise


def check_l1_membership(req: OperatorRequest) -> bool:
    """
    Chequeo operacional de f ∈ L¹_T: la cuadratura de |f|/T debe converger.

    Returns:
        True si converge, False si diverge
    """
    lo, hi, endpoint = _integration_range(req)
    if lo == hi:
        return True

    def absolute(s: np.ndarray) -> np.ndarray:
        return np.abs(np.asarray(req.f(s), dtype=float))

    lam = singular_exponent(req.kernel, req.alpha, hi - lo)
    try:
        integrate_endpoint_singular(_quotient(req, absolute), lo, hi, endpoint, lam, req.tol)
    except DivergentIntegral:
        return False
    return True


def default_step(tol: float) -> float:
    """Paso por defecto de la derivada: max(1e-5, tol^(1/3))"""
    return max(Constants.MIN_DERIVATIVE_STEP, tol ** (1.0 / 3.0))


def frac_derivative(req: OperatorRequest, h: Optional[float] = None) -> float:
    """
    Derivada generalizada D^α_{T,a±} f(t) por diferencia central de J^{1−α}.

    Supone que t ↦ J^{1−α} f(t) es C¹ cerca de t.

    Args:
        req: OperatorRequest con α ∈ (0, 1) y t interior
        h: Paso (default max(1e-5, tol^(1/3)))

    Returns:
        Valor de la derivada

    Raises:
        ValidationError: Si α ∉ (0, 1) o h <= 0
        StepTooLarge: Si [t − h, t + h] no está contenido en (a, b)
    """
    if not 0 < req.alpha < 1:
        raise ValidationError(f"La derivada requiere α ∈ (0, 1), recibido {req.alpha}")

    h = default_step(req.tol) if h is None else h
    if not h > 0:
        raise ValidationError(f"El paso h debe ser positivo, recibido {h}")

    a, b = req.interval
    if not (a < req.t - h and req.t + h < b):
        raise StepTooLarge(f"[t − h, t + h] = [{req.t - h}, {req.t + h}] sale de ({a}, {b})")

    order = 1.0 - req.alpha
    upper = frac_integral(req.with_changes(alpha=order, t=req.t + h))
    lower = frac_integral(req.with_changes(alpha=order, t=req.t - h))

    derivative = (upper.value - lower.value) / (2.0 * h) / req.kernel.g_prime(req.t)
    if req.side == Side.LEFT:
        derivative = -derivative

    logger.debug(f"D^{req.alpha} en t = {req.t} (h = {h}): {derivative}")
    return derivative


def frac_integral_interpolant(
    kernel: KernelSpec,
    f: Integrand,
    interval: Tuple[float, float],
    side: Side,
    alpha: float,
    tol: Optional[float] = None,
    degree: int = DEFAULT_INTERPOLANT_DEGREE
) -> Chebyshev:
    """
    Interpolante de Chebyshev de t ↦ J^α f(t) sobre [a, b].
    Permite componer operadores sin anidar cuadraturas.

    Returns:
        numpy Chebyshev evaluable en escalares o arrays
    """
    tol = settings.TOLERANCE if tol is None else tol
    base = OperatorRequest(kernel, f, interval, side, alpha, interval[0], tol)

    def sampled(points: np.ndarray) -> np.ndarray:
        return np.array([frac_integral(base.with_changes(t=float(t))).value for t in points])

    return Chebyshev.interpolate(sampled, degree, domain=list(interval))


def riemann_liouville_integral(
    f: Integrand, a: float, b: float, side: Side, alpha: float, t: float,
    tol: Optional[float] = None
) -> QuadratureResult:
    """J^α de Riemann-Liouville: (1/Γ(α)) ∫ |t − s|^(α−1) f(s) ds"""
    tol = settings.TOLERANCE if tol is None else tol
    return frac_integral(OperatorRequest(make_riemann_liouville(), f, (a, b), side, alpha, t, tol))


def hadamard_integral(
    f: Integrand, a: float, b: float, side: Side, alpha: float, t: float,
    tol: Optional[float] = None
) -> QuadratureResult:
    """
    Integral de Hadamard (1/Γ(α)) ∫ |log(t/s)|^(α−1) f(s)/s ds.

    Raises:
        ValidationError: Si a <= 0
    """
    tol = settings.TOLERANCE if tol is None else tol
    if not a > 0:
        raise ValidationError(f"Hadamard requiere 0 < a, recibido a = {a}")
    return frac_integral(OperatorRequest(make_hadamard(), f, (a, b), side, alpha, t, tol))


def g_weighted_integral(
    g: ScalarFunction, g_prime: ScalarFunction, f: Integrand,
    a: float, b: float, side: Side, alpha: float, t: float,
    tol: Optional[float] = None
) -> QuadratureResult:
    """Integral de f respecto de g: (1/Γ(α)) ∫ g'(s) |g(t) − g(s)|^(α−1) f(s) ds"""
    tol = settings.TOLERANCE if tol is None else tol
    kernel = make_g_weighted(g, g_prime, (a, b))
    return frac_integral(OperatorRequest(kernel, f, (a, b), side, alpha, t, tol))


def riemann_liouville_derivative(
    f: Integrand, a: float, b: float, side: Side, alpha: float, t: float,
    h: Optional[float] = None, tol: Optional[float] = None
) -> float:
    """Derivada de Riemann-Liouville de orden α ∈ (0, 1)"""
    tol = settings.TOLERANCE if tol is None else tol
    req = OperatorRequest(make_riemann_liouville(), f, (a, b), side, alpha, t, tol)
    return frac_derivative(req, h)


def hadamard_derivative(
    f: Integrand, a: float, b: float, side: Side, alpha: float, t: float,
    h: Optional[float] = None, tol: Optional[float] = None
) -> float:
    """Derivada de Hadamard: ±t d/dt H^{1−α} f(t), ya que 1/g'(t) = t"""
    tol = settings.TOLERANCE if tol is None else tol
    if not a > 0:
        raise ValidationError(f"Hadamard requiere 0 < a, recibido a = {a}")
    req = OperatorRequest(make_hadamard(), f, (a, b), side, alpha, t, tol)
    return frac_derivative(req, h)
