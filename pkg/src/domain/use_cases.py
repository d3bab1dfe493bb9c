"""
Casos de uso del dominio fracjensen.
Contiene la orquestación de los comandos integrate, derive, check, sweep y falsify.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple
from uuid import uuid4

from ..config.constants import Constants
from ..config.logging_config import log_with_run_id
from ..config.settings import settings
from ..ports.job_reader_port import JobReaderPort
from ..ports.report_exporter_port import ReportExporterPort
from .dtos import JobSpec
from .enums import Command, KernelKind, OutputFormat, Verdict
from .exprparse import resolve
from .jensen import Falsifier, GeneratorConfig, InequalityEngine, InequalityInstance, ProbabilityMeasure
from .kernels import KernelSpec, make_custom, make_g_weighted, make_hadamard, make_riemann_liouville
from .model import InequalityReport, JobResult, SweepRow
from .operators import OperatorRequest, frac_derivative, frac_integral


logger = logging.getLogger(__name__)

_VERDICT_EXIT_CODES = {
    Verdict.HOLDS: Constants.EXIT_OK,
    Verdict.VIOLATED: Constants.EXIT_VIOLATED,
    Verdict.HYPOTHESIS_FAILED: Constants.EXIT_HYPOTHESIS_FAILED,
}


def exit_code_for_rows(rows: List[SweepRow]) -> int:
    """3 si alguna fila es violated, si no 4 si alguna es hypothesis_failed, si no 0"""
    verdicts = {row.verdict for row in rows}
    if Verdict.VIOLATED in verdicts:
        return Constants.EXIT_VIOLATED
    if Verdict.HYPOTHESIS_FAILED in verdicts:
        return Constants.EXIT_HYPOTHESIS_FAILED
    return Constants.EXIT_OK


class ExecuteJobUseCase:
    """
    Caso de uso principal: ejecutar un JobSpec validado.

    Flujo:
    1. Resolver kernel, funciones y medida del job
    2. Despachar según el comando
    3. Devolver JobResult con filas, reportes y código de salida
    """

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers or settings.worker_count()

    def execute(self, job: JobSpec, run_id: Optional[str] = None) -> JobResult:
        """
        Ejecuta el job.

        Args:
            job: JobSpec validado
            run_id: Identificador de ejecución (se genera si no se provee)

        Returns:
            JobResult con exit_code según el veredicto

        Raises:
            FracJensenError: Errores numéricos o de hipótesis del dominio
        """
        if run_id is None:
            run_id = uuid4().hex[:12]

        log_with_run_id(logger, logging.INFO, run_id, f"{Constants.LOG_EXECUTING_JOB}: {job.command.value}")

        handlers = {
            Command.INTEGRATE: self._integrate,
            Command.DERIVE: self._derive,
            Command.CHECK: self._check,
            Command.SWEEP: self._sweep,
            Command.FALSIFY: self._falsify,
        }
        result = handlers[job.command](job, run_id)

        log_with_run_id(
            logger, logging.INFO, run_id,
            f"{Constants.LOG_JOB_COMPLETE}: exit {result.exit_code}",
        )
        return result

    # ------------------------------------------------------------------
    # Construcción de objetos del dominio
    # ------------------------------------------------------------------

    @staticmethod
    def _kernel(job: JobSpec, interval: Optional[Tuple[float, float]]) -> KernelSpec:
        """KernelSpec del job; los kernels con g se validan en el intervalo dado"""
        if job.kernel == KernelKind.RL:
            return make_riemann_liouville()
        if job.kernel == KernelKind.HADAMARD:
            return make_hadamard()

        g, g_prime = resolve(job.g), resolve(job.gprime)
        if job.kernel == KernelKind.GWEIGHTED:
            return make_g_weighted(g, g_prime, interval)
        return make_custom(g, g_prime, job.G, interval)

    def _operator_request(self, job: JobSpec) -> OperatorRequest:
        return OperatorRequest(
            kernel=self._kernel(job, (job.a, job.b)),
            f=resolve(job.f),
            interval=(job.a, job.b),
            side=job.side,
            alpha=job.alpha.start,
            t=job.t,
            tol=job.tolerance,
        )

    def _measure(self, job: JobSpec, alpha: Optional[float]) -> Optional[ProbabilityMeasure]:
        if job.measure is None:
            return None
        if job.measure == "discrete":
            return ProbabilityMeasure.discrete(job.points, job.weights)
        if job.measure == "uniform":
            return ProbabilityMeasure.uniform(job.c, job.d, job.tolerance)
        if job.measure == "density":
            return ProbabilityMeasure.density(job.c, job.d, resolve(job.density), tol=job.tolerance)
        kernel = self._kernel(job, (job.c, job.d))
        return ProbabilityMeasure.fractional_kernel(kernel, job.c, job.d, alpha, job.tolerance)

    def _instance(self, job: JobSpec, alpha: Optional[float], m: Optional[float]) -> InequalityInstance:
        """Instancia de desigualdad para un punto (α, m) de la grilla"""
        kernel = None
        if job.inequality_id == "fractional_mercer" and job.kernel is not None:
            kernel = self._kernel(job, (job.c, job.d))

        return InequalityInstance(
            phi=resolve(job.phi) if job.phi else None,
            f=resolve(job.f) if job.f else None,
            measure=self._measure(job, alpha),
            points=job.points,
            weights=job.weights,
            a=job.a,
            b=job.b,
            c=job.c,
            d=job.d,
            alpha=alpha,
            m=1.0 if m is None else m,
            kernel=kernel,
            interval=job.interval,
            phi_at_a=job.phi_at_a,
            phi_at_b=job.phi_at_b,
            epsilon=job.epsilon,
            presorted=job.presorted,
        )

    @staticmethod
    def _engine(job: JobSpec) -> InequalityEngine:
        return InequalityEngine(tolerance=job.tolerance, seed=job.seed, strict=False)

    # ------------------------------------------------------------------
    # Comandos
    # ------------------------------------------------------------------

    def _integrate(self, job: JobSpec, run_id: str) -> JobResult:
        result = frac_integral(self._operator_request(job))
        log_with_run_id(logger, logging.INFO, run_id, f"J^α f(t) = {result.value!r}")
        return JobResult(
            command=job.command.value,
            exit_code=Constants.EXIT_OK,
            run_id=run_id,
            quadrature=result,
            summary={"value": result.value, "error_estimate": result.error_estimate},
        )

    def _derive(self, job: JobSpec, run_id: str) -> JobResult:
        value = frac_derivative(self._operator_request(job), job.h)
        log_with_run_id(logger, logging.INFO, run_id, f"D^α f(t) = {value!r}")
        return JobResult(
            command=job.command.value,
            exit_code=Constants.EXIT_OK,
            run_id=run_id,
            derivative=value,
            summary={"value": value},
        )

    def _evaluate_point(self, job: JobSpec, engine: InequalityEngine, alpha, m) -> InequalityReport:
        return engine.run(job.inequality_id, self._instance(job, alpha, m))

    def _check(self, job: JobSpec, run_id: str) -> JobResult:
        alpha, m = job.alpha_values()[0], job.m_values()[0]
        report = self._evaluate_point(job, self._engine(job), alpha, m)
        log_with_run_id(
            logger, logging.INFO, run_id,
            f"{job.inequality_id}: slack = {report.slack!r} -> {report.verdict.value}",
        )
        return JobResult(
            command=job.command.value,
            exit_code=_VERDICT_EXIT_CODES[report.verdict],
            run_id=run_id,
            rows=[SweepRow.from_report(report, alpha, m)],
            reports=[report],
            summary={"inequality_id": job.inequality_id, "verdict": report.verdict.value},
        )

    def _sweep(self, job: JobSpec, run_id: str) -> JobResult:
        points = list(itertools.product(job.alpha_values(), job.m_values()))
        engine = self._engine(job)
        log_with_run_id(
            logger, logging.INFO, run_id,
            f"{Constants.LOG_SWEEP_POINT}: {len(points)} puntos con {self.workers} workers",
        )

        def evaluate(point):
            alpha, m = point
            return self._evaluate_point(job, engine, alpha, m)

        # map conserva el orden de la grilla
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            reports = list(executor.map(evaluate, points))

        rows = [SweepRow.from_report(report, alpha, m) for report, (alpha, m) in zip(reports, points)]
        counts = {verdict.value: sum(row.verdict == verdict for row in rows) for verdict in Verdict}
        return JobResult(
            command=job.command.value,
            exit_code=exit_code_for_rows(rows),
            run_id=run_id,
            rows=rows,
            reports=reports,
            summary={"inequality_id": job.inequality_id, "points": len(rows), **counts},
        )

    def _falsify(self, job: JobSpec, run_id: str) -> JobResult:
        interval = job.interval
        if interval is None and job.a is not None and job.b is not None:
            interval = (job.a, job.b)

        config = GeneratorConfig(
            inequality_id=job.inequality_id,
            m=job.m.start if job.m is not None else None,
            interval=interval,
            phi=job.phi,
            alpha=job.alpha.start if job.alpha is not None else None,
        )
        falsifier = Falsifier(InequalityEngine(tolerance=job.tolerance, seed=job.seed, strict=False), self.workers)
        counterexample = falsifier.falsify(job.inequality_id, config, job.relaxation, job.budget, job.seed)

        summary = {
            "inequality_id": job.inequality_id,
            "relaxation": job.relaxation.value,
            "budget": job.budget,
            "found": counterexample is not None,
        }
        if counterexample is None:
            log_with_run_id(logger, logging.INFO, run_id, Constants.LOG_FALSIFY_NONE)
            return JobResult(job.command.value, Constants.EXIT_OK, run_id, summary=summary)

        report = counterexample.report
        m = counterexample.instance.get("m")
        return JobResult(
            command=job.command.value,
            exit_code=Constants.EXIT_VIOLATED,
            run_id=run_id,
            rows=[SweepRow.from_report(report, counterexample.instance.get("alpha"), m)],
            reports=[report],
            counterexample=counterexample,
            summary=summary,
        )


class RunJobFileUseCase:
    """
    Caso de uso del CLI: leer un job, ejecutarlo y exportar el resultado.

    Flujo:
    1. Leer y validar el job desde la fuente (JobReaderPort)
    2. Aplicar overrides del CLI
    3. Ejecutar con ExecuteJobUseCase
    4. Exportar con el exporter del formato pedido
    """

    def __init__(
        self,
        job_reader: JobReaderPort,
        exporter_factory: Callable[[OutputFormat], ReportExporterPort],
        executor: Optional[ExecuteJobUseCase] = None
    ):
        self.job_reader = job_reader
        self.exporter_factory = exporter_factory
        self.executor = executor or ExecuteJobUseCase()

    def execute(
        self,
        source: str,
        command: Optional[str] = None,
        run_id: Optional[str] = None,
        **overrides
    ) -> JobResult:
        """
        Ejecuta el flujo completo.

        Args:
            source: Path del archivo de job
            command: Comando pedido en la línea de comandos
            run_id: Identificador de ejecución
            **overrides: seed, tolerance, output, format

        Returns:
            JobResult; result.summary["output_path"] tiene el archivo escrito

        Raises:
            ConfigError: Job inválido
            FileNotFoundError: Si el archivo no existe
        """
        if run_id is None:
            run_id = uuid4().hex[:12]

        log_with_run_id(logger, logging.INFO, run_id, f"{Constants.LOG_READING_JOB}: {source}")
        job = self.job_reader.read_job(source, command)
        job = job.with_overrides(**overrides)

        result = self.executor.execute(job, run_id)

        log_with_run_id(logger, logging.INFO, run_id, Constants.LOG_WRITING_OUTPUT)
        exporter = self.exporter_factory(job.format)
        result.summary["output_path"] = exporter.export(result, job.output)
        return result
