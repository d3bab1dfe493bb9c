from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

from typing import Optional

import pytest

from src.config.constants import Constants
from src.domain.dtos import JobSpec
from src.domain.enums import OutputFormat, Verdict
from src.domain.model import JobResult, SweepRow
from src.domain.use_cases import ExecuteJobUseCase, RunJobFileUseCase, exit_code_for_rows
from src.ports.report_exporter_port import ReportExporterPort


def _job(**fields) -> JobSpec:
    return JobSpec.from_dict({key: str(value) for key, value in fields.items()})


def _row(verdict: Verdict) -> SweepRow:
    return SweepRow(alpha=None, m=None, lhs=0.0, rhs=0.0, slack=0.0, quadrature_error=0.0, verdict=verdict)


class FakeJobReader:
    def __init__(self, job: JobSpec):
        self.job = job
        self.calls = []

    def read_job(self, source: str, command: Optional[str] = None) -> JobSpec:
        self.calls.append((source, command))
        return self.job

    def parse_job(self, text: str, command: Optional[str] = None) -> JobSpec:
        return self.job


class FakeExporter(ReportExporterPort):
    def __init__(self):
        self.exported = []

    def export(self, result: JobResult, output_path: Optional[str] = None) -> Optional[str]:
        self.exported.append((result, output_path))
        return output_path


class FakeExecutor:
    def __init__(self):
        self.jobs = []

    def execute(self, job: JobSpec, run_id: Optional[str] = None) -> JobResult:
        self.jobs.append(job)
        return JobResult(command=job.command.value, exit_code=0, run_id=run_id)


@pytest.fixture
def use_case():
    return ExecuteJobUseCase(workers=2)


class TestExitCodes:
    """Tests para la agregación de veredictos en códigos de salida"""

    def test_all_holds(self):
        assert exit_code_for_rows([_row(Verdict.HOLDS)] * 3) == Constants.EXIT_OK

    def test_violated_wins_over_hypothesis(self):
        rows = [_row(Verdict.HYPOTHESIS_FAILED), _row(Verdict.VIOLATED), _row(Verdict.HOLDS)]
        assert exit_code_for_rows(rows) == Constants.EXIT_VIOLATED

    def test_hypothesis_failed(self):
        rows = [_row(Verdict.HOLDS), _row(Verdict.HYPOTHESIS_FAILED)]
        assert exit_code_for_rows(rows) == Constants.EXIT_HYPOTHESIS_FAILED


class TestExecuteJobUseCase:
    """Tests de ExecuteJobUseCase por comando"""

    def test_integrate(self, use_case):
        job = _job(command="integrate", kernel="rl", f="1", a=0, b=2, t=1, alpha=0.5, tolerance=1e-11)
        result = use_case.execute(job, run_id="test")
        assert result.exit_code == Constants.EXIT_OK
        assert result.quadrature.value == pytest.approx(1.1283792, abs=1e-7)
        assert result.summary["value"] == result.quadrature.value
        assert result.run_id == "test"

    def test_derive(self, use_case):
        job = _job(command="derive", kernel="rl", f="x", a=0, b=2, t=1, alpha=0.5, h=1e-4, tolerance=1e-11)
        result = use_case.execute(job)
        assert result.derivative == pytest.approx(1.1283792, abs=1e-4)
        assert len(result.run_id) == 12

    def test_check_holds(self, use_case):
        job = _job(command="check", inequality_id="mercer_discrete", phi="square", points="0, 0.5, 1")
        result = use_case.execute(job)
        assert result.exit_code == Constants.EXIT_OK
        assert len(result.rows) == 1
        assert result.rows[0].slack == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert result.rows[0].alpha is None and result.rows[0].m is None

    def test_check_hypothesis_failed(self, use_case):
        job = _job(
            command="check", inequality_id="jensen_classical", phi="neg_square", f="x",
            measure="uniform", c=0, d=1,
        )
        result = use_case.execute(job)
        assert result.exit_code == Constants.EXIT_HYPOTHESIS_FAILED
        assert result.rows[0].verdict == Verdict.HYPOTHESIS_FAILED

    def test_check_fractional_mercer(self, use_case):
        job = _job(
            command="check", inequality_id="fractional_mercer", kernel="rl", phi="square", f="x",
            c=0, d=1, a=0, b=1, alpha=0.5, m=1,
        )
        result = use_case.execute(job)
        assert result.rows[0].slack == pytest.approx(16.0 / 45.0, abs=1e-7)
        assert result.rows[0].alpha == 0.5

    def test_sweep_preserves_grid_order(self, use_case):
        job = _job(command="sweep", inequality_id="mercer_m_discrete", phi="square", points="0, 1, 2", m="{0.25, 1, 4}")
        result = use_case.execute(job)
        assert [row.m for row in result.rows] == [0.25, 0.5, 0.75, 1.0]
        assert result.exit_code == Constants.EXIT_OK
        assert result.summary["points"] == 4
        assert result.summary["holds"] == 4

    def test_sweep_over_alpha_and_m(self, use_case):
        job = _job(
            command="sweep", inequality_id="fractional_mercer", kernel="rl", phi="square", f="x",
            c=0, d=1, a=0, b=1, alpha="{0.5, 1, 2}", m="{0.5, 1, 2}",
        )
        result = use_case.execute(job)
        assert [(row.alpha, row.m) for row in result.rows] == [(0.5, 0.5), (0.5, 1.0), (1.0, 0.5), (1.0, 1.0)]

    def test_falsify_finds_counterexample(self, use_case):
        job = _job(
            command="falsify", inequality_id="jensen_classical", phi="neg_square",
            relaxation="drop_convexity", budget=50,
        )
        result = use_case.execute(job)
        assert result.exit_code == Constants.EXIT_VIOLATED
        assert result.counterexample is not None
        assert result.summary["found"] is True
        assert len(result.rows) == 1

    def test_falsify_without_counterexample(self, use_case):
        job = _job(command="falsify", inequality_id="mercer_discrete", budget=20)
        result = use_case.execute(job)
        assert result.exit_code == Constants.EXIT_OK
        assert result.counterexample is None
        assert result.rows == []


class TestRunJobFileUseCase:
    """Tests del flujo leer → ejecutar → exportar"""

    def test_overrides_reach_executor(self):
        job = _job(command="check", inequality_id="mercer_discrete", phi="square", points="0, 1")
        reader, exporter, executor = FakeJobReader(job), FakeExporter(), FakeExecutor()
        formats = []

        def factory(output_format: OutputFormat) -> ReportExporterPort:
            formats.append(output_format)
            return exporter

        use_case = RunJobFileUseCase(reader, factory, executor)
        result = use_case.execute("job.ini", command="check", run_id="r1", seed=7, tolerance=None,
                                  output="out.csv", format="csv")

        assert reader.calls == [("job.ini", "check")]
        assert executor.jobs[0].seed == 7
        assert executor.jobs[0].tolerance == Constants.DEFAULT_TOLERANCE
        assert formats == [OutputFormat.CSV]
        assert exporter.exported[0][1] == "out.csv"
        assert result.summary["output_path"] == "out.csv"

    def test_runs_real_executor(self):
        job = _job(command="check", inequality_id="mercer_discrete", phi="square", points="0, 0.5, 1")
        exporter = FakeExporter()
        use_case = RunJobFileUseCase(FakeJobReader(job), lambda _: exporter, ExecuteJobUseCase(workers=1))
        result = use_case.execute("job.ini")
        assert result.exit_code == Constants.EXIT_OK
        assert exporter.exported[0][0] is result
        assert result.summary["output_path"] is None
