"""
Búsqueda de contraejemplos bajo hipótesis relajadas.

El presupuesto se reparte en bloques evaluados por un pool de hilos; cada
instancia usa su propia semilla derivada de (seed, índice) y el resultado es
el contraejemplo de menor índice, independiente del número de workers.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

from ...config.constants import Constants
from ...config.settings import settings
from ..enums import Relaxation
from ..errors import DomainError, QuadratureError, ValidationError
from ..model import Counterexample, InequalityReport
from .generators import GeneratorConfig, generate_instance
from .inequalities import (
    CHECK_CONVEXITY,
    CHECK_JUMPS,
    CHECK_M_CONVEXITY,
    CHECK_RANGE,
    CHECK_ZERO,
    INEQUALITY_IDS,
    InequalityEngine,
    InequalityInstance,
)


logger = logging.getLogger(__name__)

# Chequeos que cada relajación permite que fallen
RELAXATION_ALLOWANCES = {
    Relaxation.NONE: frozenset(),
    Relaxation.DROP_CONVEXITY: frozenset({CHECK_CONVEXITY, CHECK_M_CONVEXITY, CHECK_JUMPS}),
    Relaxation.DROP_ZERO_IN_I: frozenset({CHECK_ZERO, CHECK_M_CONVEXITY}),
    Relaxation.DROP_RANGE: frozenset({CHECK_RANGE}),
}

KIND_SLACK = "slack_violation"
KIND_DOMAIN = "domain_witness"

Hit = Tuple[InequalityReport, str]


def classify(report: InequalityReport, relaxation: Relaxation) -> Optional[str]:
    """
    Decide si un reporte es contraejemplo bajo la relajación.

    Returns:
        KIND_SLACK si slack < −1e-6, KIND_DOMAIN si el argumento del lado
        izquierdo sale de I, None si no es contraejemplo o si fallaron
        chequeos que la relajación no permite
    """
    failed = set(report.failed_checks())
    if not failed <= RELAXATION_ALLOWANCES[Relaxation(relaxation)]:
        return None
    if report.slack < Constants.FALSIFY_SLACK_THRESHOLD:
        return KIND_SLACK
    if report.extras.get("argument_in_interval") is False:
        return KIND_DOMAIN
    return None


class Falsifier:
    """Muestrea instancias aleatorias y devuelve el primer contraejemplo"""

    def __init__(self, engine: Optional[InequalityEngine] = None, workers: Optional[int] = None):
        """
        Inicializa el falsificador.

        Args:
            engine: Motor no estricto (default InequalityEngine(strict=False))
            workers: Hilos del pool (default settings.worker_count())
        """
        self.engine = engine or InequalityEngine(strict=False)
        self.workers = workers or settings.worker_count()

    def _evaluate(self, inequality_id: str, instance: InequalityInstance, relaxation: Relaxation) -> Optional[Hit]:
        try:
            report = self.engine.run(inequality_id, instance)
        except (DomainError, QuadratureError, ValidationError) as e:
            logger.debug(f"Instancia descartada: {e}")
            return None
        kind = classify(report, relaxation)
        return None if kind is None else (report, kind)

    def _shrink(
        self,
        inequality_id: str,
        instance: InequalityInstance,
        hit: Hit,
        relaxation: Relaxation
    ) -> Tuple[InequalityInstance, Hit, int]:
        """
        Hasta SHRINK_STEPS pasos que quitan puntos o achican [a, b] hacia el
        centro, conservando el tipo de violación.
        """
        steps = 0
        for _ in range(Constants.SHRINK_STEPS):
            accepted = False
            for candidate in self._shrink_candidates(instance):
                result = self._evaluate(inequality_id, candidate, relaxation)
                if result is not None and result[1] == hit[1]:
                    instance, hit, accepted = candidate, result, True
                    steps += 1
                    break
            if not accepted:
                break
        return instance, hit, steps

    @staticmethod
    def _shrink_candidates(instance: InequalityInstance):
        points = instance.points
        if points is not None and len(points) > 1:
            weights = instance.weights
            for drop in range(len(points) - 1, -1, -1):
                kept = points[:drop] + points[drop + 1:]
                if weights is None:
                    yield instance.with_changes(points=kept)
                    continue
                kept_weights = weights[:drop] + weights[drop + 1:]
                total = sum(kept_weights)
                if total > 0:
                    yield instance.with_changes(
                        points=kept,
                        weights=tuple(w / total for w in kept_weights),
                    )

        if instance.a is not None and instance.b is not None:
            a, b = instance.a, instance.b
            cut = 0.1 * (b - a)
            new_a, new_b = a + cut, b - cut
            if points:
                new_a, new_b = min(new_a, min(points)), max(new_b, max(points))
            if (new_a, new_b) != (a, b) and new_a <= new_b:
                yield instance.with_changes(a=new_a, b=new_b, interval=(new_a, new_b))

    def falsify(
        self,
        inequality_id: str,
        config: Optional[GeneratorConfig] = None,
        relaxation: Relaxation = Relaxation.NONE,
        budget: Optional[int] = None,
        seed: Optional[int] = None
    ) -> Optional[Counterexample]:
        """
        Busca un contraejemplo en `budget` instancias.

        Args:
            inequality_id: Desigualdad a atacar
            config: Familia de instancias (default GeneratorConfig(inequality_id))
            relaxation: Hipótesis que se permite violar
            budget: Número de instancias (>= 1)
            seed: Semilla maestra

        Returns:
            Counterexample de menor índice o None si no hay dentro del presupuesto
        """
        budget = settings.BUDGET if budget is None else budget
        seed = settings.SEED if seed is None else seed
        relaxation = Relaxation(relaxation)
        config = config or GeneratorConfig(inequality_id)

        if inequality_id not in INEQUALITY_IDS:
            raise ValidationError(f"{Constants.ERROR_UNKNOWN_INEQUALITY}: {inequality_id}")
        if budget < 1:
            raise ValidationError(f"El presupuesto debe ser >= 1, recibido {budget}")

        logger.info(
            f"{Constants.LOG_FALSIFY_START}: {inequality_id} "
            f"(relajación {relaxation.value}, presupuesto {budget}, semilla {seed})"
        )

        def attempt(index: int) -> Optional[Tuple[int, InequalityInstance, Hit]]:
            try:
                instance = generate_instance(config, relaxation, index, seed)
            except (DomainError, QuadratureError, ValidationError) as e:
                logger.debug(f"Generación descartada en la instancia {index}: {e}")
                return None
            hit = self._evaluate(inequality_id, instance, relaxation)
            return None if hit is None else (index, instance, hit)

        chunk = max(1, self.workers * 16)
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            for start in range(0, budget, chunk):
                indices = range(start, min(start + chunk, budget))
                found = next((r for r in executor.map(attempt, indices) if r is not None), None)
                if found is not None:
                    break
            else:
                found = None

        if found is None:
            logger.info(f"{Constants.LOG_FALSIFY_NONE} ({budget} instancias)")
            return None

        index, instance, hit = found
        instance, (report, kind), steps = self._shrink(inequality_id, instance, hit, relaxation)

        logger.warning(
            f"{Constants.LOG_FALSIFY_HIT}: {inequality_id} instancia {index} "
            f"({kind}, slack = {report.slack!r}, {steps} pasos de reducción)"
        )
        return Counterexample(
            inequality_id=inequality_id,
            relaxation=relaxation.value,
            instance_index=index,
            kind=kind,
            report=report,
            instance=instance.to_dict(),
            shrink_steps=steps,
        )


def falsify(
    inequality_id: str,
    config: Optional[GeneratorConfig] = None,
    relaxation: Relaxation = Relaxation.NONE,
    budget: Optional[int] = None,
    seed: Optional[int] = None
) -> Optional[Counterexample]:
    """Atajo funcional de Falsifier().falsify"""
    return Falsifier().falsify(inequality_id, config, relaxation, budget, seed)
