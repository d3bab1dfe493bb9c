"""
Exporter de resultados en formato texto plano (.txt).
"""

import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from ..domain.model import Counterexample, InequalityReport, JobResult
from ..ports.report_exporter_port import ReportExporterPort


logger = logging.getLogger(__name__)

BANNER = "=" * 60


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return repr(value)
    return str(value)


class TxtExporter(ReportExporterPort):
    """Exporta resultados en formato texto legible"""

    def export(self, result: JobResult, output_path: Optional[str] = None) -> Optional[str]:
        """
        Exporta el resultado en texto plano.

        Args:
            result: Resultado del job
            output_path: Archivo de salida (None = stdout)

        Returns:
            Path absoluto del archivo generado o None

        Raises:
            IOError: Si hay error de escritura
        """
        text = self.render(result)

        if output_path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return None

        file_path = Path(output_path)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        logger.debug(f"Exportando reporte TXT a {file_path}")

        try:
            with open(file_path, 'w', newline='', encoding='utf-8') as f:
                f.write(text)
        except OSError as e:
            logger.error(f"Error al exportar reporte TXT: {e}")
            raise IOError(f"Error al escribir archivo TXT: {e}") from e

        logger.info(f"Reporte TXT exportado: {file_path}")
        return str(file_path.absolute())

    def render(self, result: JobResult) -> str:
        """
        Arma el texto del reporte.

        Args:
            result: Resultado del job

        Returns:
            Texto terminado en salto de línea
        """
        lines = [BANNER, f"FRACJENSEN: {result.command.upper()}", BANNER, ""]

        if result.quadrature is not None:
            lines.append(f"value = {_fmt(result.quadrature.value)}")
            lines.append(f"error_estimate = {_fmt(result.quadrature.error_estimate)}")
            lines.append(f"subdivisions = {result.quadrature.subdivisions}")
            lines.append(f"converged = {result.quadrature.converged}")
        elif result.derivative is not None:
            lines.append(f"value = {_fmt(result.derivative)}")

        if result.rows:
            lines.extend(self._format_rows(result))

        if result.command == "check" and result.reports:
            lines.extend(self._format_checks(result.reports[0]))

        if result.counterexample is not None:
            lines.extend(self._format_counterexample(result.counterexample))

        lines.extend(self._format_summary(result.summary, result.exit_code))
        return "\n".join(lines) + "\n"

    @staticmethod
    def _format_rows(result: JobResult) -> List[str]:
        header = f"{'alpha':>10} {'m':>10} {'lhs':>22} {'rhs':>22} {'slack':>22}  verdict"
        lines = [header, "-" * len(header)]
        for row in result.rows:
            lines.append(
                f"{_fmt(row.alpha):>10} {_fmt(row.m):>10} {row.lhs:>22.15g} "
                f"{row.rhs:>22.15g} {row.slack:>22.15g}  {row.verdict.value}"
            )
        lines.append("")
        return lines

    @staticmethod
    def _format_checks(report: InequalityReport) -> List[str]:
        lines = ["Chequeos de hipótesis:"]
        for check in report.hypothesis_checks:
            mark = "OK" if check.passed else "FALLA"
            detail = f" ({check.detail})" if check.detail else ""
            lines.append(f"  [{mark}] {check.name}{detail}")
        if report.extras:
            lines.append("Términos:")
            for key, value in report.extras.items():
                lines.append(f"  {key}: {_fmt(value)}")
        lines.append("")
        return lines

    @staticmethod
    def _format_counterexample(counterexample: Counterexample) -> List[str]:
        lines = [
            BANNER,
            "CONTRAEJEMPLO",
            BANNER,
            f"Desigualdad: {counterexample.inequality_id}",
            f"Relajación: {counterexample.relaxation}",
            f"Tipo: {counterexample.kind}",
            f"Instancia: {counterexample.instance_index}",
            f"Pasos de reducción: {counterexample.shrink_steps}",
            f"slack = {_fmt(counterexample.report.slack)}",
        ]
        failed = counterexample.report.failed_checks()
        if failed:
            lines.append(f"Hipótesis relajadas: {', '.join(failed)}")
        for key, value in counterexample.instance.items():
            lines.append(f"  {key} = {_fmt(value)}")
        lines.append("")
        return lines

    @staticmethod
    def _format_summary(summary: Dict, exit_code: int) -> List[str]:
        lines = [BANNER, "RESUMEN", BANNER]
        for key, value in summary.items():
            if key == "output_path":
                continue
            label = key.replace('_', ' ').title()
            lines.append(f"{label}: {_fmt(value)}")
        lines.append(f"Exit: {exit_code}")
        lines.append(BANNER)
        return lines
