"""
Medidas de probabilidad soportadas por el motor de desigualdades:
discretas finitas, densidades sobre un intervalo compacto y la densidad del
kernel fraccionario s ↦ 1/(𝕋(α) T(d, s, α)).
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ...config.constants import Constants
from ...config.settings import settings
from ..enums import Endpoint, MeasureKind
from ..errors import ValidationError
from ..kernels import KernelSpec, kernel_T_array, normalizer, singular_exponent
from ..model import QuadratureResult
from ..quadrature import integrate, integrate_endpoint_singular


logger = logging.getLogger(__name__)

Function = Callable[[np.ndarray], np.ndarray]

SUPPORT_SAMPLES = 257


@dataclass(frozen=True)
class ProbabilityMeasure:
    """
    Medida de probabilidad μ.

    Attributes:
        kind: DISCRETE, DENSITY o FRACTIONAL_KERNEL
        points: Átomos x_k (sólo discreta)
        weights: Pesos w_k >= 0 con suma 1 (sólo discreta)
        interval: Soporte [c, d] (densidades)
        weight: Densidad sin normalizar w(s) (DENSITY)
        normalization: ∫ w sobre [c, d]
        kernel: KernelSpec (FRACTIONAL_KERNEL)
        alpha: Orden α (FRACTIONAL_KERNEL)
        is_uniform: True si la densidad es constante
        tol: Tolerancia de la cuadratura
    """
    kind: MeasureKind
    points: Optional[np.ndarray] = field(default=None, compare=False)
    weights: Optional[np.ndarray] = field(default=None, compare=False)
    interval: Optional[Tuple[float, float]] = None
    weight: Optional[Function] = field(default=None, compare=False)
    normalization: float = 1.0
    kernel: Optional[KernelSpec] = None
    alpha: Optional[float] = None
    is_uniform: bool = False
    tol: float = Constants.DEFAULT_TOLERANCE
    total_mass_check: Optional[QuadratureResult] = field(default=None, compare=False)

    @classmethod
    def discrete(
        cls,
        points: Sequence[float],
        weights: Optional[Sequence[float]] = None
    ) -> 'ProbabilityMeasure':
        """
        Medida discreta finita.

        Args:
            points: Átomos
            weights: Pesos no negativos que suman 1 (default uniformes)

        Raises:
            ValidationError: Si hay pesos negativos, no finitos o la suma difiere de 1
        """
        xs = np.asarray(points, dtype=float).ravel()
        if xs.size == 0:
            raise ValidationError("La medida discreta requiere al menos un punto")
        if weights is None:
            ws = np.full(xs.size, 1.0 / xs.size)
        else:
            ws = np.asarray(weights, dtype=float).ravel()
        if ws.size != xs.size:
            raise ValidationError(f"{xs.size} puntos pero {ws.size} pesos")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ws))):
            raise ValidationError("Puntos y pesos deben ser finitos")
        if np.any(ws < 0):
            raise ValidationError("Los pesos deben ser no negativos")
        if abs(float(np.sum(ws)) - 1.0) > Constants.WEIGHT_SUM_TOLERANCE:
            raise ValidationError(f"Los pesos deben sumar 1, suman {float(np.sum(ws))!r}")

        return cls(kind=MeasureKind.DISCRETE, points=xs, weights=ws,
                   interval=(float(xs.min()), float(xs.max())))

    @classmethod
    def uniform(cls, c: float, d: float, tol: Optional[float] = None) -> 'ProbabilityMeasure':
        """Densidad uniforme en [c, d]"""
        if not c < d:
            raise ValidationError(f"Se requiere c < d, recibido [{c}, {d}]")

        def constant(s: np.ndarray) -> np.ndarray:
            return np.ones_like(np.asarray(s, dtype=float))

        return cls(
            kind=MeasureKind.DENSITY,
            interval=(float(c), float(d)),
            weight=constant,
            normalization=float(d - c),
            is_uniform=True,
            tol=settings.TOLERANCE if tol is None else tol,
        )

    @classmethod
    def density(
        cls,
        c: float,
        d: float,
        weight: Function,
        normalization: Optional[float] = None,
        tol: Optional[float] = None
    ) -> 'ProbabilityMeasure':
        """
        Densidad w(s)/Z sobre [c, d].

        Args:
            c: Extremo izquierdo
            d: Extremo derecho
            weight: w(s) >= 0 vectorizada
            normalization: Z (default ∫_c^d w calculado por cuadratura)
            tol: Tolerancia

        Raises:
            ValidationError: Si w es negativa en la grilla o no integra a 1 tras normalizar
        """
        tol = settings.TOLERANCE if tol is None else tol
        if not c < d:
            raise ValidationError(f"Se requiere c < d, recibido [{c}, {d}]")

        grid = np.linspace(c, d, SUPPORT_SAMPLES)
        if np.any(np.asarray(weight(grid), dtype=float) < 0):
            raise ValidationError("La densidad debe ser no negativa")

        mass = integrate(weight, c, d, tol)
        if normalization is None:
            normalization = mass.value
        if not normalization > 0:
            raise ValidationError(f"La densidad debe tener masa positiva, masa = {normalization}")
        if abs(mass.value / normalization - 1.0) > max(1e3 * tol, mass.error_estimate / normalization):
            raise ValidationError(
                f"La densidad no integra a 1: ∫w/Z = {mass.value / normalization!r}"
            )

        return cls(
            kind=MeasureKind.DENSITY,
            interval=(float(c), float(d)),
            weight=weight,
            normalization=float(normalization),
            tol=tol,
            total_mass_check=mass,
        )

    @classmethod
    def fractional_kernel(
        cls,
        kernel: KernelSpec,
        c: float,
        d: float,
        alpha: float,
        tol: Optional[float] = None
    ) -> 'ProbabilityMeasure':
        """
        Densidad s ↦ 1/(𝕋(α) T(d, s, α)) sobre [c, d].

        𝕋(α) se calcula en la variable x = g(d) − g(s); la masa directa en s se
        usa como verificación y como normalización de las esperanzas.

        Raises:
            ValidationError: Si ambas formas de 𝕋(α) no coinciden
            DivergentIntegral: Si 𝕋(α) no es finito
        """
        tol = settings.TOLERANCE if tol is None else tol
        total = normalizer(kernel, c, d, alpha, tol)
        direct = normalizer(kernel, c, d, alpha, tol, substituted=False)

        agreement = abs(direct.value - total.value)
        if agreement > max(1e-7 * abs(total.value), 10.0 * (total.error_estimate + direct.error_estimate)):
            raise ValidationError(
                f"La densidad fraccionaria no integra a 1: 𝕋 = {total.value!r}, "
                f"masa directa = {direct.value!r}"
            )

        def fractional_weight(s: np.ndarray) -> np.ndarray:
            return 1.0 / kernel_T_array(kernel, d, s, alpha)

        return cls(
            kind=MeasureKind.FRACTIONAL_KERNEL,
            interval=(float(c), float(d)),
            weight=fractional_weight,
            normalization=direct.value,
            kernel=kernel,
            alpha=float(alpha),
            tol=tol,
            total_mass_check=total,
        )

    @property
    def normalizer_value(self) -> float:
        """𝕋(α) en la forma sustituida (sólo FRACTIONAL_KERNEL)"""
        if self.total_mass_check is None:
            return self.normalization
        return self.total_mass_check.value

    def expect(self, h: Function, tol: Optional[float] = None) -> QuadratureResult:
        """
        ∫ h dμ.

        Args:
            h: Función vectorizada
            tol: Tolerancia (default la de la medida)

        Returns:
            QuadratureResult con el valor esperado
        """
        tol = self.tol if tol is None else tol

        if self.kind == MeasureKind.DISCRETE:
            values = np.asarray(h(self.points), dtype=float)
            return QuadratureResult(float(np.dot(self.weights, values)), 0.0, 0, True)

        c, d = self.interval
        scale = self.normalization

        def weighted(s: np.ndarray) -> np.ndarray:
            return np.asarray(h(s), dtype=float) * self.weight(s)

        if self.kind == MeasureKind.FRACTIONAL_KERNEL:
            lam = singular_exponent(self.kernel, self.alpha, d - c)
            raw = integrate_endpoint_singular(weighted, c, d, Endpoint.RIGHT, lam, tol * scale)
        else:
            raw = integrate(weighted, c, d, tol * scale)

        return QuadratureResult(
            raw.value / scale,
            raw.error_estimate / scale,
            raw.subdivisions,
            raw.converged,
        )

    def interval_mass(self, lo: float, hi: float) -> float:
        """μ([lo, hi)) para discretas, μ([lo, hi]) para densidades"""
        if hi <= lo:
            return 0.0
        if self.kind == MeasureKind.DISCRETE:
            mask = (self.points >= lo) & (self.points < hi)
            return float(np.sum(self.weights[mask]))

        c, d = self.interval
        lo, hi = max(lo, c), min(hi, d)
        if hi <= lo:
            return 0.0
        if self.is_uniform:
            return (hi - lo) / (d - c)
        if self.kind == MeasureKind.FRACTIONAL_KERNEL and hi == d:
            lam = singular_exponent(self.kernel, self.alpha, hi - lo)
            raw = integrate_endpoint_singular(self.weight, lo, hi, Endpoint.RIGHT, lam, self.tol)
        else:
            raw = integrate(self.weight, lo, hi, self.tol)
        return raw.value / self.normalization

    def atom_mass(self, predicate: Callable[[np.ndarray], np.ndarray]) -> float:
        """μ({x : predicate(x)}); las densidades no tienen átomos"""
        if self.kind != MeasureKind.DISCRETE:
            return 0.0
        mask = np.asarray(predicate(self.points), dtype=bool)
        return float(np.sum(self.weights[mask]))

    def support_samples(self) -> np.ndarray:
        """Puntos representativos del soporte (átomos o grilla de 257 puntos)"""
        if self.kind == MeasureKind.DISCRETE:
            return self.points
        c, d = self.interval
        return np.linspace(c, d, SUPPORT_SAMPLES)

    def describe(self) -> dict:
        """Resumen serializable de la medida"""
        if self.kind == MeasureKind.DISCRETE:
            return {
                "kind": self.kind.value,
                "points": [float(x) for x in self.points],
                "weights": [float(w) for w in self.weights],
            }
        summary = {"kind": self.kind.value, "interval": list(self.interval)}
        if self.kind == MeasureKind.FRACTIONAL_KERNEL:
            summary.update({"kernel": self.kernel.name, "alpha": self.alpha})
        return summary
