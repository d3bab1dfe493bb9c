"""
Certificación empírica de m-convexidad.

φ es m-convexa en I si φ(tx + m(1−t)y) ≤ tφ(x) + m(1−t)φ(y) para x, y ∈ I,
t ∈ [0, 1]. La grilla sólo puede refutar o dar evidencia: nunca es una prueba.
"""

import logging
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import optimize

from ..config.constants import Constants
from ..config.settings import settings
from .errors import DomainError, HypothesisError, ValidationError
from .model import MConvexityReport


logger = logging.getLogger(__name__)

Function = Callable[[np.ndarray], np.ndarray]


def _validate_m(m: float) -> None:
    if not 0 < m <= 1:
        raise ValidationError(f"m debe estar en (0, 1], recibido {m}")


def _ensure_inside(point: float, interval: Optional[Tuple[float, float]]) -> None:
    if interval is not None and not interval[0] <= point <= interval[1]:
        raise DomainError(f"El punto combinado {point} sale de [{interval[0]}, {interval[1]}]")


def check_point(
    phi: Function,
    x: float,
    y: float,
    t: float,
    m: float,
    interval: Optional[Tuple[float, float]] = None
) -> float:
    """
    Defecto φ(tx + m(1−t)y) − [tφ(x) + m(1−t)φ(y)]; <= 0 significa que se cumple.

    Raises:
        DomainError: Si el punto combinado sale del intervalo dado
    """
    _validate_m(m)
    point = t * x + m * (1.0 - t) * y
    _ensure_inside(point, interval)
    return float(phi(point)) - (t * float(phi(x)) + m * (1.0 - t) * float(phi(y)))


def check_equivalent_form(
    phi: Function,
    x: float,
    y: float,
    t: float,
    m: float,
    interval: Optional[Tuple[float, float]] = None
) -> float:
    """
    Defecto de la forma equivalente φ(mtx + (1−t)y) ≤ mtφ(x) + (1−t)φ(y).

    Raises:
        DomainError: Si el punto combinado sale del intervalo dado
    """
    _validate_m(m)
    point = m * t * x + (1.0 - t) * y
    _ensure_inside(point, interval)
    return float(phi(point)) - (m * t * float(phi(x)) + (1.0 - t) * float(phi(y)))


def _defects(phi: Function, x: np.ndarray, y: np.ndarray, t: np.ndarray, m: float) -> np.ndarray:
    """Defectos vectorizados de la definición"""
    point = t * x + m * (1.0 - t) * y
    return phi(point) - (t * phi(x) + m * (1.0 - t) * phi(y))


def certify_grid(
    phi: Function,
    interval: Tuple[float, float],
    m: float,
    n: Optional[int] = None,
    r: Optional[int] = None,
    seed: Optional[int] = None,
    tolerance: float = Constants.VIOLATION_TOLERANCE,
    require_zero: bool = True
) -> MConvexityReport:
    """
    Máximo defecto sobre una grilla n×n×n de (x, y, t) más r triples aleatorios.

    Args:
        phi: Función vectorizada
        interval: Intervalo I = [lo, hi]
        m: Parámetro en (0, 1]
        n: Puntos por eje (default settings.GRID_SIZE)
        r: Triples aleatorios (default settings.RANDOM_TRIPLES)
        seed: Semilla (default settings.SEED)
        tolerance: Umbral de violación
        require_zero: Exigir 0 ∈ I cuando m < 1

    Returns:
        MConvexityReport determinista dada la semilla

    Raises:
        HypothesisError: Si m < 1, 0 ∉ I y require_zero
    """
    n = settings.GRID_SIZE if n is None else n
    r = settings.RANDOM_TRIPLES if r is None else r
    seed = settings.SEED if seed is None else seed
    _validate_m(m)

    lo, hi = float(interval[0]), float(interval[1])
    if lo > hi:
        raise ValidationError(f"Intervalo inválido [{lo}, {hi}]")

    contains_zero = lo <= 0.0 <= hi
    if m < 1 and not contains_zero and require_zero:
        raise HypothesisError(f"m = {m} < 1 requiere 0 ∈ I, recibido [{lo}, {hi}]")

    axis = np.linspace(lo, hi, n)
    t_axis = np.linspace(0.0, 1.0, n)
    X, Y, T = (grid.ravel() for grid in np.meshgrid(axis, axis, t_axis, indexing="ij"))

    rng = np.random.default_rng(seed)
    X = np.concatenate([X, rng.uniform(lo, hi, r)])
    Y = np.concatenate([Y, rng.uniform(lo, hi, r)])
    T = np.concatenate([T, rng.uniform(0.0, 1.0, r)])

    combined = T * X + m * (1.0 - T) * Y
    inside = (combined >= lo) & (combined <= hi)
    skipped = int(np.count_nonzero(~inside))
    X, Y, T = X[inside], Y[inside], T[inside]

    defects = _defects(phi, X, Y, T, m) if X.size else np.zeros(0)

    worst, witness = 0.0, None
    if defects.size:
        index = int(np.argmax(defects))
        if defects[index] > tolerance:
            worst = float(defects[index])
            witness = (float(X[index]), float(Y[index]), float(T[index]))

    # Consecuencia t = 0: φ(my) ≤ mφ(y)
    scaled = m * axis
    scaled_inside = (scaled >= lo) & (scaled <= hi)
    scaling = 0.0
    if np.any(scaled_inside):
        scaling = float(np.max(phi(scaled[scaled_inside]) - m * phi(axis[scaled_inside])))

    if witness is not None:
        logger.debug(f"m-convexidad refutada (m = {m}) con testigo {witness}: defecto {worst:.3e}")

    return MConvexityReport(
        m=m,
        interval=(lo, hi),
        worst_violation=worst,
        witness=witness,
        samples=int(X.size),
        tolerance=tolerance,
        scaling_violation=scaling,
        contains_zero=contains_zero,
        skipped=skipped,
        note=Constants.EMPIRICAL_NOTE,
    )


def max_m(
    phi: Function,
    interval: Tuple[float, float],
    n: Optional[int] = None,
    tol: float = 1e-3,
    r: Optional[int] = None,
    seed: Optional[int] = None
) -> float:
    """
    Mayor m para el que certify_grid pasa.

    La raíz de m ↦ tolerancia − peor violación se busca con brentq (xtol = tol)
    y se retrocede de a tol hasta un m que la grilla acepte.

    Returns:
        1.0 si pasa en m = 1; 0.0 (marca ReturnsZero) si falla para todo m >= tol

    Raises:
        HypothesisError: Si 0 ∉ I
    """
    lo_bound, hi_bound = interval
    if not lo_bound <= 0.0 <= hi_bound:
        raise HypothesisError(f"max_m requiere 0 ∈ I, recibido [{lo_bound}, {hi_bound}]")

    def margin(m: float) -> float:
        report = certify_grid(phi, interval, m, n=n, r=r, seed=seed)
        return report.tolerance - report.worst_violation

    if margin(1.0) >= 0:
        return 1.0
    if margin(tol) < 0:
        logger.warning("φ falla la m-convexidad para todo m >= tol: max_m devuelve 0")
        return 0.0

    root = optimize.brentq(margin, tol, 1.0, xtol=tol)
    while root > tol and margin(root) < 0:
        root -= tol
    return max(root, tol)
