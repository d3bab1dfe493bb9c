"""
Aproximación de f por funciones simples diádicas:
E_{n,k} = {x : a + k 2^(−n)(b−a) <= f(x) < a + (k+1) 2^(−n)(b−a)},
f_n = Σ_k (a + k 2^(−n)(b−a)) χ_{E_{n,k}}, con f − 2^(−n)(b−a) < f_n <= f.
"""

import logging
from typing import Callable

import numpy as np
from scipy import optimize, special

from ..enums import Endpoint, MeasureKind
from ..errors import RangeError, ValidationError
from ..kernels import singular_exponent
from ..model import SimpleApproximation
from ..quadrature import integrate, integrate_endpoint_singular
from .measures import ProbabilityMeasure


logger = logging.getLogger(__name__)

Function = Callable[[np.ndarray], np.ndarray]

LEGENDRE_ORDER = 8
MIN_CELLS = 256


def _bins(values: np.ndarray, a: float, step: float, top: int) -> np.ndarray:
    """Índice k con a + k·step <= v < a + (k+1)·step, o k = top si v = b"""
    if step == 0.0:
        return np.zeros(values.shape, dtype=int)
    k = np.clip(np.floor((values - a) / step).astype(int), 0, top)
    k = k - ((a + k * step > values) & (k > 0))
    k = k + ((k < top) & (a + (k + 1) * step <= values))
    return k


def _check_range(values: np.ndarray, a: float, b: float) -> None:
    slack = 1e-12 * max(1.0, abs(a), abs(b))
    outside = values[(values < a - slack) | (values > b + slack)]
    if outside.size:
        raise RangeError(f"f sale de [{a}, {b}]: valor {float(outside[0])!r}")


def _density_pieces(f: Function, c: float, d: float, a: float, step: float, top: int, cells: int):
    """
    Puntos de quiebre de [c, d] donde f cruza un nivel a + k·step.
    Entre dos quiebres consecutivos f permanece en un mismo bin.
    """
    grid = np.linspace(c, d, cells + 1)
    values = np.asarray(f(grid), dtype=float)
    bins = _bins(values, a, step, top)

    breaks = [grid]
    for i in np.flatnonzero(bins[1:] != bins[:-1]):
        lo, hi = grid[i], grid[i + 1]
        k0, k1 = int(bins[i]), int(bins[i + 1])
        for k in range(min(k0, k1) + 1, max(k0, k1) + 1):
            level = a + k * step

            def shifted(s: float, level: float = level) -> float:
                return float(f(s)) - level

            f_lo, f_hi = shifted(lo), shifted(hi)
            if f_lo == 0.0 or f_hi == 0.0 or np.sign(f_lo) == np.sign(f_hi):
                continue
            breaks.append(np.array([optimize.brentq(shifted, lo, hi, xtol=1e-14)]))

    return np.unique(np.concatenate(breaks))


def _piece_masses(measure: ProbabilityMeasure, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """μ([left_i, right_i]); Gauss-Legendre por pieza salvo cerca de la singularidad fraccionaria"""
    c, d = measure.interval
    if measure.is_uniform:
        return (right - left) / (d - c)

    if measure.kind == MeasureKind.FRACTIONAL_KERNEL:
        masses = np.zeros(left.size)
        regular = right < d
        # Cerca de d el peso crece como (d − s)^(λ−1): cuadratura adaptativa por pieza
        for i in np.flatnonzero(regular & (right > left)):
            raw = integrate(measure.weight, left[i], right[i], measure.tol)
            masses[i] = raw.value / measure.normalization
        # La pieza que toca d contiene la singularidad
        for i in np.flatnonzero(~regular):
            if right[i] > left[i]:
                lam = singular_exponent(measure.kernel, measure.alpha, right[i] - left[i])
                raw = integrate_endpoint_singular(
                    measure.weight, left[i], right[i], Endpoint.RIGHT, lam, measure.tol
                )
                masses[i] = raw.value / measure.normalization
        return masses

    nodes, weights = special.roots_legendre(LEGENDRE_ORDER)
    center = 0.5 * (left + right)
    half = 0.5 * (right - left)
    samples = center[:, None] + half[:, None] * nodes[None, :]
    values = np.asarray(measure.weight(samples), dtype=float)
    return half * (values @ weights) / measure.normalization


def simple_approximation(
    f: Function,
    a: float,
    b: float,
    n: int,
    measure: ProbabilityMeasure
) -> SimpleApproximation:
    """
    Masas μ(E_{n,k}) para k = 0..2^n y la integral ∫f_n dμ.

    Args:
        f: Función medible con valores en [a, b]
        a: Cota inferior
        b: Cota superior
        n: Nivel diádico (>= 0)
        measure: Medida discreta o de densidad

    Returns:
        SimpleApproximation con masas que suman 1

    Raises:
        RangeError: Si f sale de [a, b] en los puntos evaluados
        ValidationError: Si n < 0 o a > b
    """
    if n < 0:
        raise ValidationError(f"n debe ser no negativo, recibido {n}")
    if not a <= b:
        raise ValidationError(f"Se requiere a <= b, recibido [{a}, {b}]")

    top = 2 ** n
    step = (b - a) / top
    levels = a + step * np.arange(top + 1)

    if measure.kind == MeasureKind.DISCRETE:
        values = np.asarray(f(measure.points), dtype=float)
        _check_range(values, a, b)
        masses = np.bincount(_bins(values, a, step, top), weights=measure.weights, minlength=top + 1)
    else:
        c, d = measure.interval
        _check_range(np.asarray(f(measure.support_samples()), dtype=float), a, b)
        breaks = _density_pieces(f, c, d, a, step, top, max(MIN_CELLS, 8 * top))
        left, right = breaks[:-1], breaks[1:]
        midpoint_values = np.asarray(f(0.5 * (left + right)), dtype=float)
        _check_range(midpoint_values, a, b)
        pieces = _piece_masses(measure, left, right)
        masses = np.bincount(_bins(midpoint_values, a, step, top), weights=pieces, minlength=top + 1)

    total = float(np.sum(masses))
    if total <= 0:
        raise ValidationError("La medida no asigna masa a ningún bin")
    masses = masses / total

    integral = float(np.dot(levels, masses))
    logger.debug(f"Aproximación simple n = {n}: ∫f_n dμ = {integral!r}")

    return SimpleApproximation(
        n=n,
        masses=tuple(float(mass) for mass in masses),
        levels=tuple(float(level) for level in levels),
        integral=integral,
    )
