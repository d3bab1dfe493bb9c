"""
Integración numérica adaptativa sobre intervalos compactos.

- integrate: bisección adaptativa con la regla Gauss-Kronrod G7/K15 por panel,
  refinando siempre el panel de mayor error.
- integrate_endpoint_singular: malla geométrica graduada hacia el extremo
  singular (razón r, hasta n niveles) para integrandos ~ distancia^(λ−1);
  el panel más interno se integra con Gauss-Jacobi para el peso u^(λ−1).
- gamma_fn / beta_fn: funciones especiales de scipy con chequeo de dominio.
"""

import heapq
import logging
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import special

from ..config.settings import settings
from .enums import Endpoint
from .errors import DivergentIntegral, DomainError, MaxSubdivisions, NonFiniteIntegrand, ValidationError
from .model import QuadratureResult


logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

EPSILON = np.finfo(float).eps

# Nodos y pesos Kronrod de 15 puntos (mitad positiva, el último es el centro)
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Pesos Gauss de 7 puntos, asociados a _XGK[1], _XGK[3], _XGK[5] y el centro
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
_KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
_gauss_half = np.array([0.0, _WG[0], 0.0, _WG[1], 0.0, _WG[2], 0.0])
_GAUSS_WEIGHTS = np.concatenate([_gauss_half, [_WG[3]], _gauss_half[::-1]])

JACOBI_ORDER = 15
CONTRACTION_FACTOR = 1.1
NON_CONTRACTING_LEVELS = 3


def _sample(f: Integrand, points: np.ndarray) -> np.ndarray:
    """Evalúa el integrando vectorizado y verifica finitud"""
    values = np.broadcast_to(np.asarray(f(points), dtype=float), points.shape)
    if not np.all(np.isfinite(values)):
        bad = points[~np.isfinite(values)]
        raise NonFiniteIntegrand(f"Integrando no finito en s = {bad[0]!r}")
    return values


def _kronrod_panel(f: Integrand, lo: float, hi: float) -> Tuple[float, float]:
    """
    Integra un panel con G7/K15 y estima el error al estilo QUADPACK.

    Returns:
        (valor Kronrod, error estimado)
    """
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    values = _sample(f, center + half * _NODES)

    kronrod = float(np.dot(_KRONROD_WEIGHTS, values))
    gauss = float(np.dot(_GAUSS_WEIGHTS, values))
    mean = 0.5 * kronrod

    result = kronrod * half
    resabs = float(np.dot(_KRONROD_WEIGHTS, np.abs(values))) * abs(half)
    resasc = float(np.dot(_KRONROD_WEIGHTS, np.abs(values - mean))) * abs(half)
    error = abs((kronrod - gauss) * half)

    if resasc != 0.0 and error != 0.0:
        error = resasc * min(1.0, (200.0 * error / resasc) ** 1.5)
    if resabs > np.finfo(float).tiny / (50.0 * EPSILON):
        error = max(50.0 * EPSILON * resabs, error)

    return result, error


def integrate(
    f: Integrand,
    a: float,
    b: float,
    tol: Optional[float] = None,
    max_subdivisions: Optional[int] = None
) -> QuadratureResult:
    """
    Integración adaptativa por bisección del panel de mayor error.

    Args:
        f: Integrando vectorizado (recibe y devuelve arrays)
        a: Extremo izquierdo
        b: Extremo derecho (a < b)
        tol: Tolerancia absoluta (default settings.TOLERANCE)
        max_subdivisions: Máximo de paneles (default settings.MAX_SUBDIVISIONS)

    Returns:
        QuadratureResult convergido

    Raises:
        ValidationError: Si a >= b o tol <= 0
        NonFiniteIntegrand: Si el integrando no es finito en algún nodo
        MaxSubdivisions: Si no se alcanza la tolerancia
    """
    tol = settings.TOLERANCE if tol is None else tol
    max_subdivisions = settings.MAX_SUBDIVISIONS if max_subdivisions is None else max_subdivisions

    if not a < b:
        raise ValidationError(f"Se requiere a < b, recibido [{a}, {b}]")
    if not tol > 0:
        raise ValidationError(f"La tolerancia debe ser positiva, recibido {tol}")

    value, error = _kronrod_panel(f, a, b)
    # heap de máximos por error: (-error, lo, hi, valor)
    panels = [(-error, a, b, value)]
    total_value, total_error = value, error
    subdivisions = 1

    while total_error > tol:
        if subdivisions >= max_subdivisions:
            partial = QuadratureResult(total_value, total_error, subdivisions, False)
            raise MaxSubdivisions(
                f"Máximo de {max_subdivisions} subdivisiones alcanzado "
                f"(error {total_error:.3e} > tol {tol:.3e})",
                partial,
            )

        neg_error, lo, hi, panel_value = heapq.heappop(panels)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            partial = QuadratureResult(total_value, total_error, subdivisions, False)
            raise MaxSubdivisions(f"Panel [{lo!r}, {hi!r}] no subdivisible", partial)

        left_value, left_error = _kronrod_panel(f, lo, mid)
        right_value, right_error = _kronrod_panel(f, mid, hi)
        heapq.heappush(panels, (-left_error, lo, mid, left_value))
        heapq.heappush(panels, (-right_error, mid, hi, right_value))
        subdivisions += 1

        total_value = float(np.sum([panel[3] for panel in panels]))
        total_error = float(np.sum([-panel[0] for panel in panels]))

    return QuadratureResult(total_value, total_error, subdivisions, True)


@lru_cache(maxsize=256)
def _jacobi_rule(lam: float) -> Tuple[np.ndarray, np.ndarray]:
    """Nodos y pesos de Gauss-Jacobi para el peso (1+z)^(λ−1) en [-1, 1]"""
    nodes, weights = special.roots_jacobi(JACOBI_ORDER, 0.0, lam - 1.0)
    return nodes, weights


def _jacobi_tail(g: Integrand, width: float, lam: float) -> float:
    """
    ∫_0^width g(u) du suponiendo g(u) = u^(λ−1) h(u) con h suave.

    Con u = width (1+z)/2 queda (width/2)^λ ∫ (1+z)^(λ−1) h(u(z)) dz.
    """
    nodes, weights = _jacobi_rule(lam)
    u = 0.5 * width * (1.0 + nodes)
    smooth = _sample(g, u) * np.power(u, 1.0 - lam)
    return float((0.5 * width) ** lam * np.dot(weights, smooth))


def integrate_endpoint_singular(
    f: Integrand,
    a: float,
    b: float,
    endpoint: Endpoint,
    lam: float,
    tol: Optional[float] = None,
    max_levels: Optional[int] = None
) -> QuadratureResult:
    """
    Integra f con singularidad débil ~ distancia^(λ−1) en un extremo.

    Los niveles k cubren distancias [L r^(k+1), L r^k] y se integran con
    `integrate`; el resto [0, L r^(k+1)] se estima con Gauss-Jacobi. El error
    reportado es el último incremento más los errores de panel.

    Args:
        f: Integrando vectorizado
        a: Extremo izquierdo
        b: Extremo derecho
        endpoint: Extremo singular
        lam: Exponente λ en (0, 1] (valores mayores también se aceptan)
        tol: Tolerancia absoluta
        max_levels: Niveles de graduación (default settings.GRADING_LEVELS)

    Returns:
        QuadratureResult convergido

    Raises:
        DivergentIntegral: Si λ <= 0, si los incrementos no contraen por 1.1
            o si se agotan los niveles sin alcanzar tol
        NonFiniteIntegrand: Si el integrando no es finito en un nodo
    """
    tol = settings.TOLERANCE if tol is None else tol
    ratio = settings.GRADING_RATIO
    max_levels = settings.GRADING_LEVELS if max_levels is None else max_levels

    endpoint = Endpoint(endpoint)
    if not a < b:
        raise ValidationError(f"Se requiere a < b, recibido [{a}, {b}]")
    if not lam > 0:
        raise DivergentIntegral(f"Exponente λ = {lam} no integrable en el extremo {endpoint.value}")

    length = b - a

    # g(u) con u = distancia al extremo singular
    if endpoint == Endpoint.LEFT:
        def g(u):
            return f(a + u)
    else:
        def g(u):
            return f(b - u)

    panel_tol = tol / (2.0 * max_levels)
    graded_sum = 0.0
    panel_error = 0.0
    subdivisions = 0
    previous = _jacobi_tail(g, length, lam)
    previous_increment = None
    non_contracting = 0
    estimate = previous
    increment = float("inf")

    for level in range(max_levels):
        outer = length * ratio ** level
        inner = outer * ratio
        if not inner > 0:
            break

        panel = integrate(g, inner, outer, tol=panel_tol)
        graded_sum += panel.value
        panel_error += panel.error_estimate
        subdivisions += panel.subdivisions

        estimate = graded_sum + _jacobi_tail(g, inner, lam)
        increment = abs(estimate - previous)
        previous = estimate

        if previous_increment is not None:
            if increment * CONTRACTION_FACTOR > previous_increment and increment > tol:
                non_contracting += 1
            else:
                non_contracting = 0

            if non_contracting >= NON_CONTRACTING_LEVELS:
                partial = QuadratureResult(estimate, increment + panel_error, subdivisions, False)
                raise DivergentIntegral(
                    f"Incrementos sin contracción en el nivel {level} "
                    f"(|Δ| = {increment:.3e}, λ = {lam})",
                    partial,
                )

            error_estimate = increment + panel_error
            if error_estimate <= tol:
                error_estimate = max(error_estimate, 64.0 * EPSILON * abs(estimate))
                if error_estimate <= tol:
                    logger.debug(f"Cuadratura graduada convergió en {level + 1} niveles")
                    return QuadratureResult(estimate, error_estimate, subdivisions, True)

        previous_increment = increment

    partial = QuadratureResult(estimate, increment + panel_error, subdivisions, False)
    raise DivergentIntegral(
        f"Cuadratura graduada sin convergencia tras {max_levels} niveles "
        f"(error {partial.error_estimate:.3e}, tol {tol:.1e})",
        partial,
    )


def gamma_fn(x: float) -> float:
    """
    Γ(x) para x > 0.

    Raises:
        DomainError: Si x <= 0
    """
    if not x > 0:
        raise DomainError(f"Γ(x) requiere x > 0, recibido {x}")
    return float(special.gamma(x))


def beta_fn(p: float, q: float) -> float:
    """
    B(p, q) = Γ(p)Γ(q)/Γ(p+q) para p, q > 0.

    Raises:
        DomainError: Si p <= 0 o q <= 0
    """
    if not (p > 0 and q > 0):
        raise DomainError(f"B(p, q) requiere p, q > 0, recibido ({p}, {q})")
    return float(special.beta(p, q))
