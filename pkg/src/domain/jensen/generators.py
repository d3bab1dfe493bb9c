"""
Generación determinista de instancias aleatorias para el falsificador y las
suites de holgura.

φ convexa = combinación positiva de (x−s)², (x−s)⁴, exp(k(x−s)), |x−s| y
max(x−s, 0) más una parte afín. Para m < 1 se desplaza la constante hasta que
φ(0) <= 0, lo que vuelve m-convexa a una φ convexa en todo I que contenga 0.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..enums import Relaxation
from ..exprparse import ScalarFunction, parse, resolve
from ..kernels import make_riemann_liouville
from .inequalities import INEQUALITY_REQUIREMENTS, InequalityInstance
from .measures import ProbabilityMeasure


logger = logging.getLogger(__name__)

M_PARAMETRIZED = {
    "mjensen_discrete",
    "mjensen_continuous",
    "lemma_transform",
    "mercer_m_discrete",
    "mercer_m_endpoints",
    "mercer_m_continuous",
    "fractional_mercer",
    "epsilon_replay",
}

# Funciones base de [0, 1] en [0, 1] para componer f = a + (b − a) u(s)
UNIT_MAPS = ("x", "x^2", "1 - x", "sqrt(x)", "(sin(3*x) + 1)/2", "x^3")


@dataclass(frozen=True)
class GeneratorConfig:
    """
    Parámetros de la familia de instancias.

    Attributes:
        inequality_id: Desigualdad a instanciar
        m: m fijo (default aleatorio en [0.25, 1] para desigualdades con m)
        interval: [a, b] fijo (default aleatorio)
        phi: Expresión fija de φ (default familia aleatoria)
        alpha: α fijo para fractional_mercer (default aleatorio en [0.2, 1])
        max_points: Máximo de puntos de las instancias discretas
    """
    inequality_id: str
    m: Optional[float] = None
    interval: Optional[Tuple[float, float]] = None
    phi: Optional[str] = None
    alpha: Optional[float] = None
    max_points: int = 6


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _convex_terms(rng: np.random.Generator, lo: float, hi: float) -> List[str]:
    """Entre uno y tres términos convexos con coeficientes positivos"""
    terms = []
    for _ in range(int(rng.integers(1, 4))):
        shift = _fmt(rng.uniform(lo, hi))
        coefficient = _fmt(rng.uniform(0.1, 2.0))
        family = int(rng.integers(0, 5))
        if family == 0:
            body = f"(x - {shift})^2"
        elif family == 1:
            body = f"(x - {shift})^4"
        elif family == 2:
            body = f"exp({_fmt(rng.uniform(0.5, 2.0))}*(x - {shift}))"
        elif family == 3:
            body = f"abs(x - {shift})"
        else:
            body = f"(x - {shift} + abs(x - {shift}))/2"
        terms.append(f"{coefficient}*{body}")
    return terms


def _nonconvex_body(rng: np.random.Generator, lo: float, hi: float) -> str:
    shift = _fmt(rng.uniform(lo, hi))
    family = int(rng.integers(0, 4))
    if family == 0:
        return f"-(x - {shift})^2"
    if family == 1:
        return f"-abs(x - {shift})"
    if family == 2:
        return f"sin({_fmt(rng.uniform(2.0, 6.0))}*x)"
    return f"(x - {shift})^3"


def random_phi(
    rng: np.random.Generator,
    interval: Tuple[float, float],
    convex: bool = True,
    zero_shift: bool = False
) -> ScalarFunction:
    """
    φ aleatoria en texto parseable.

    Args:
        rng: Generador
        interval: Intervalo donde se centran los desplazamientos
        convex: Familia convexa (True) o no convexa (False)
        zero_shift: Restar φ(0) más un margen para que φ(0) < 0
    """
    lo, hi = interval
    if convex:
        slope = _fmt(rng.uniform(-1.0, 1.0))
        body = " + ".join(_convex_terms(rng, lo, hi)) + f" + {slope}*x"
    else:
        body = _nonconvex_body(rng, lo, hi)

    phi = parse(body)
    if zero_shift:
        offset = float(phi(0.0)) + float(rng.uniform(0.01, 0.5))
        phi = parse(f"{body} - ({offset!r})")
    return phi


def _random_interval(rng: np.random.Generator, needs_zero: bool, exclude_zero: bool) -> Tuple[float, float]:
    if exclude_zero:
        lo = float(rng.uniform(0.5, 1.5))
        return lo, lo + float(rng.uniform(0.5, 1.5))
    if needs_zero:
        return -float(rng.uniform(0.0, 2.0)), float(rng.uniform(0.5, 2.0))
    lo = float(rng.uniform(-2.0, 1.0))
    return lo, lo + float(rng.uniform(0.5, 2.0))


def _random_discrete(rng: np.random.Generator, lo: float, hi: float, max_points: int) -> Tuple[np.ndarray, np.ndarray]:
    size = int(rng.integers(1, max_points + 1))
    points = rng.uniform(lo, hi, size)
    weights = rng.dirichlet(np.ones(size))
    weights = weights / np.sum(weights)
    return points, weights


def _random_measure(rng: np.random.Generator, max_points: int) -> ProbabilityMeasure:
    """Medida en [0, 1]: discreta (con posibles átomos en 0 y 1), uniforme o potencia"""
    family = int(rng.integers(0, 3))
    if family == 0:
        points, weights = _random_discrete(rng, 0.0, 1.0, max_points)
        if rng.uniform() < 0.3:
            points[0] = float(rng.integers(0, 2))
        return ProbabilityMeasure.discrete(points, weights)
    if family == 1:
        return ProbabilityMeasure.uniform(0.0, 1.0)
    power = float(rng.uniform(0.0, 2.0))
    return ProbabilityMeasure.density(0.0, 1.0, parse(f"({_fmt(power + 1.0)})*x^{_fmt(power)}"))


def _random_f(rng: np.random.Generator, a: float, b: float, out_of_range: bool) -> ScalarFunction:
    unit = UNIT_MAPS[int(rng.integers(0, len(UNIT_MAPS)))]
    if out_of_range:
        return parse(f"{_fmt(a)} + {_fmt(b - a)}*(1.5*({unit}) - 0.25)")
    return parse(f"{_fmt(a)} + ({_fmt(b - a)})*({unit})")


def generate_instance(
    config: GeneratorConfig,
    relaxation: Relaxation,
    index: int,
    seed: int
) -> InequalityInstance:
    """
    Instancia número `index` de la familia; determinista dado (seed, index).

    Args:
        config: Configuración de la familia
        relaxation: Hipótesis a relajar
        index: Índice de la instancia
        seed: Semilla maestra

    Returns:
        InequalityInstance lista para InequalityEngine.run
    """
    relaxation = Relaxation(relaxation)
    rng = np.random.default_rng([seed, index])
    inequality_id = config.inequality_id
    needed = INEQUALITY_REQUIREMENTS[inequality_id]

    if inequality_id in M_PARAMETRIZED:
        m = config.m if config.m is not None else float(rng.choice([1.0, rng.uniform(0.25, 1.0)]))
    else:
        m = 1.0

    exclude_zero = relaxation == Relaxation.DROP_ZERO_IN_I
    if config.interval is not None:
        a, b = config.interval
    else:
        a, b = _random_interval(rng, needs_zero=m < 1, exclude_zero=exclude_zero)

    if config.phi is not None:
        phi = resolve(config.phi)
    else:
        phi = random_phi(
            rng, (a, b),
            convex=relaxation != Relaxation.DROP_CONVEXITY,
            zero_shift=m < 1 and not exclude_zero,
        )

    out_of_range = relaxation == Relaxation.DROP_RANGE
    fields = {"phi": phi, "m": m, "interval": (a, b)}

    if "points" in needed:
        width = b - a
        lo, hi = (a - 0.5 * width, b + 0.5 * width) if out_of_range else (a, b)
        points, weights = _random_discrete(rng, lo, hi, config.max_points)
        if inequality_id == "lemma_transform":
            points = np.concatenate([[a], points, [b]])
            weights = None
        fields.update(points=tuple(float(x) for x in points),
                      weights=None if weights is None else tuple(float(w) for w in weights))

    if "f" in needed:
        fields["f"] = _random_f(rng, a, b, out_of_range)

    if "measure" in needed:
        fields["measure"] = _random_measure(rng, config.max_points)

    if "a" in needed:
        fields.update(a=a, b=b)

    if inequality_id == "mercer_continuous" and relaxation != Relaxation.DROP_CONVEXITY:
        limit_a, limit_b = float(phi(a)), float(phi(b))
        if rng.uniform() < 0.3:
            fields["phi_at_a"] = limit_a + float(rng.uniform(0.0, 1.0))
        if rng.uniform() < 0.3:
            fields["phi_at_b"] = limit_b + float(rng.uniform(0.0, 1.0))

    if inequality_id == "fractional_mercer":
        alpha = config.alpha if config.alpha is not None else float(rng.uniform(0.2, 1.0))
        fields.update(kernel=make_riemann_liouville(), c=0.0, d=1.0, alpha=alpha)

    return InequalityInstance(**fields)
