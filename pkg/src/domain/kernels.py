"""
Kernels (g, g', G) de los operadores fraccionarios generalizados.

T(t, s, α) = G(|g(t) − g(s)|, α) / g'(s). Los constructores integrados cubren
Riemann-Liouville (g = x), Hadamard (g = log x) y el caso ponderado por g; un
kernel custom recibe G como expresión en x con `alpha` ligado como constante.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from ..config.constants import Constants
from ..config.settings import settings
from .enums import Endpoint
from .errors import DomainError, SingularKernel, ValidationError
from .exprparse import ScalarFunction, parse
from .model import QuadratureResult
from .quadrature import gamma_fn, integrate_endpoint_singular


logger = logging.getLogger(__name__)

GFunction = Callable[[np.ndarray, float], np.ndarray]

_EXPONENT_SAMPLES = (1e-4, 1e-6, 1e-8)


@dataclass(frozen=True)
class KernelSpec:
    """
    Datos (g, g', G) de un kernel T.

    Attributes:
        name: Etiqueta del kernel
        g: Función creciente en el intervalo de trabajo
        g_prime: Derivada de g, positiva en el intervalo abierto
        G: G(x, α) vectorizada en x, positiva para x > 0
        power_exponent: Para kernels de tipo potencia, α ↦ λ tal que
            1/G(x, α) ~ x^(λ−1) cerca de 0; None obliga a sondear G
        interval: Intervalo de trabajo validado (opcional)
    """
    name: str
    g: ScalarFunction
    g_prime: ScalarFunction
    G: GFunction = field(compare=False)
    power_exponent: Optional[Callable[[float], float]] = field(default=None, compare=False)
    interval: Optional[Tuple[float, float]] = None


def _power_G(x: np.ndarray, alpha: float) -> np.ndarray:
    """G(x, α) = Γ(α) x^(1−α)"""
    return gamma_fn(alpha) * np.power(x, 1.0 - alpha)


def _alpha_exponent(alpha: float) -> float:
    return alpha


def make_riemann_liouville() -> KernelSpec:
    """
    Kernel de Riemann-Liouville: g(t) = t, G(x, α) = Γ(α) x^(1−α),
    por lo tanto T(t, s, α) = Γ(α) |t − s|^(1−α).
    """
    return KernelSpec(
        name="rl",
        g=parse("x"),
        g_prime=parse("1"),
        G=_power_G,
        power_exponent=_alpha_exponent,
    )


def make_hadamard() -> KernelSpec:
    """
    Kernel de Hadamard: g(t) = log t, g'(s) = 1/s, de modo que
    T(t, s, α) = Γ(α) s |log(t/s)|^(1−α). Requiere intervalo en (0, ∞).

    El factor es s = 1/g'(s), no t: así T(e, 1, 1) = 1 y ∫₁^e ds/T(e, s, 1) = 1.
    """
    return KernelSpec(
        name="hadamard",
        g=parse("log(x)", domain_hint=(0.0, float("inf"))),
        g_prime=parse("1/x", domain_hint=(0.0, float("inf"))),
        G=_power_G,
        power_exponent=_alpha_exponent,
    )


def _validate_g(g: ScalarFunction, g_prime: ScalarFunction, interval: Tuple[float, float]) -> None:
    """
    Spot check de monotonía de g y positividad de g' en una grilla de 64 puntos.
    La positividad de g sólo produce un warning.
    """
    lo, hi = interval
    if not lo < hi:
        raise ValidationError(f"Intervalo inválido para el kernel: [{lo}, {hi}]")

    size = Constants.MONOTONICITY_GRID
    grid = np.linspace(lo, hi, size)
    interior = lo + (hi - lo) * (np.arange(size) + 0.5) / size

    try:
        g_values = np.asarray(g(grid), dtype=float)
        g_prime_values = np.asarray(g_prime(interior), dtype=float)
    except DomainError as e:
        raise ValidationError(f"g o g' no definida en [{lo}, {hi}]: {e}") from e

    if np.any(np.diff(g_values) <= 0):
        raise ValidationError(f"g = '{g.source}' no es creciente en [{lo}, {hi}]")
    if np.any(g_prime_values <= 0):
        raise ValidationError(f"g' = '{g_prime.source}' no es positiva en ({lo}, {hi})")
    if np.any(g_values <= 0):
        logger.warning(f"g = '{g.source}' no es positiva en todo [{lo}, {hi}]")


def _resolve_interval(
    g: ScalarFunction,
    interval: Optional[Tuple[float, float]]
) -> Tuple[float, float]:
    if interval is not None:
        return (float(interval[0]), float(interval[1]))
    if g.domain_hint is not None and np.all(np.isfinite(g.domain_hint)):
        return (float(g.domain_hint[0]), float(g.domain_hint[1]))
    raise ValidationError(
        "Se requiere un intervalo de trabajo para validar g (interval o domain_hint)"
    )


def make_g_weighted(
    g: ScalarFunction,
    g_prime: ScalarFunction,
    interval: Optional[Tuple[float, float]] = None
) -> KernelSpec:
    """
    Kernel ponderado por g: T(t, s, α) = Γ(α) |g(t) − g(s)|^(1−α) / g'(s).

    Args:
        g: Función creciente en el intervalo
        g_prime: Derivada de g
        interval: Intervalo de trabajo (default g.domain_hint)

    Returns:
        KernelSpec validado

    Raises:
        ValidationError: Si g no crece o g' no es positiva en la grilla
    """
    working = _resolve_interval(g, interval)
    _validate_g(g, g_prime, working)
    return KernelSpec(
        name="gweighted",
        g=g,
        g_prime=g_prime,
        G=_power_G,
        power_exponent=_alpha_exponent,
        interval=working,
    )


@lru_cache(maxsize=256)
def _custom_G_for_alpha(G_text: str, alpha: float) -> ScalarFunction:
    return parse(G_text, constants={"alpha": alpha})


def make_custom(
    g: ScalarFunction,
    g_prime: ScalarFunction,
    G_text: str,
    interval: Optional[Tuple[float, float]] = None
) -> KernelSpec:
    """
    Kernel con G definido por una expresión en x donde `alpha` es una constante
    ligada por cada valor de α.

    Args:
        g: Función creciente
        g_prime: Derivada de g
        G_text: Expresión de G(x, α), por ejemplo "x^(1-alpha)"
        interval: Intervalo de trabajo (default g.domain_hint)

    Returns:
        KernelSpec custom
    """
    working = _resolve_interval(g, interval)
    _validate_g(g, g_prime, working)
    # Falla temprano si la expresión no parsea
    _custom_G_for_alpha(G_text, 0.5)

    def custom_G(x: np.ndarray, alpha: float) -> np.ndarray:
        return _custom_G_for_alpha(G_text, float(alpha))(x)

    return KernelSpec(
        name="custom",
        g=g,
        g_prime=g_prime,
        G=custom_G,
        power_exponent=None,
        interval=working,
    )


def kernel_T(k: KernelSpec, t: float, s: float, alpha: float) -> float:
    """
    Evalúa T(t, s, α) = G(|g(t) − g(s)|, α) / g'(s).

    Raises:
        SingularKernel: Si s = t y G(0, α) = 0
        ValidationError: Si α <= 0 o g'(s) <= 0
    """
    if not alpha > 0:
        raise ValidationError(f"α debe ser positivo, recibido {alpha}")

    distance = abs(k.g(t) - k.g(s))
    G_value = float(np.asarray(k.G(np.asarray(distance), alpha)))
    slope = k.g_prime(s)

    if slope <= 0:
        raise ValidationError(f"g'({s}) = {slope} no es positiva")
    if G_value == 0.0:
        raise SingularKernel(f"T({t}, {s}, {alpha}) singular: G(0, α) = 0")

    return G_value / slope


def kernel_T_array(k: KernelSpec, t: float, s: np.ndarray, alpha: float) -> np.ndarray:
    """
    Versión vectorizada de kernel_T sobre los nodos s de la cuadratura.

    Raises:
        ValidationError: Si g' no es positiva en algún nodo muestreado
    """
    s = np.asarray(s, dtype=float)
    distance = np.abs(k.g(t) - k.g(s))
    slope = k.g_prime(s)
    if np.any(slope <= 0):
        raise ValidationError(f"g' no es positiva en los nodos muestreados de [{s.min()}, {s.max()}]")
    return k.G(distance, alpha) / slope


def singular_exponent(k: KernelSpec, alpha: float, scale: float = 1.0) -> float:
    """
    Exponente λ tal que 1/G(x, α) ~ x^(λ−1) cerca de x = 0.

    Para kernels de potencia se toma del constructor; para G custom se sondea
    G(x, α)/x^p en x → 0 con p ∈ {0, 1−α} y se elige el cociente más estable.
    """
    if k.power_exponent is not None:
        return k.power_exponent(alpha)

    best_p, best_spread = 0.0, float("inf")
    samples = np.array(_EXPONENT_SAMPLES) * max(scale, 1e-12)
    for p in (0.0, 1.0 - alpha):
        with np.errstate(all="ignore"):
            ratios = np.asarray(k.G(samples, alpha), dtype=float) / np.power(samples, p)
        if not np.all(np.isfinite(ratios)) or np.any(ratios <= 0):
            continue
        spread = float(np.max(np.abs(np.log(ratios / ratios[0]))))
        if spread < best_spread:
            best_p, best_spread = p, spread

    logger.debug(f"Kernel {k.name}: exponente sondeado p = {best_p} (dispersión {best_spread:.2e})")
    return 1.0 - best_p


def normalizer(
    k: KernelSpec,
    c: float,
    d: float,
    alpha: float,
    tol: Optional[float] = None,
    substituted: bool = True
) -> QuadratureResult:
    """
    Normalizador 𝕋(α) = ∫_c^d ds / T(d, s, α).

    Por defecto se calcula en la variable x = g(d) − g(s), es decir
    ∫_0^{g(d)−g(c)} dx / G(x, α), con la singularidad en x = 0.
    Con substituted=False se integra la forma original en s.

    Raises:
        ValidationError: Si c >= d
        DivergentIntegral: Si el refinamiento graduado no converge
    """
    tol = settings.TOLERANCE if tol is None else tol
    if not c < d:
        raise ValidationError(f"Se requiere c < d, recibido [{c}, {d}]")
    if not alpha > 0:
        raise ValidationError(f"α debe ser positivo, recibido {alpha}")

    if substituted:
        span = k.g(d) - k.g(c)
        lam = singular_exponent(k, alpha, span)

        def reciprocal_G(x: np.ndarray) -> np.ndarray:
            return 1.0 / k.G(x, alpha)

        result = integrate_endpoint_singular(reciprocal_G, 0.0, span, Endpoint.LEFT, lam, tol)
    else:
        lam = singular_exponent(k, alpha, d - c)

        def reciprocal_T(s: np.ndarray) -> np.ndarray:
            return 1.0 / kernel_T_array(k, d, s, alpha)

        result = integrate_endpoint_singular(reciprocal_T, c, d, Endpoint.RIGHT, lam, tol)

    logger.debug(f"𝕋({alpha}) sobre [{c}, {d}] con kernel {k.name}: {result.value}")
    return result
