"""
Exporter de resultados en formato Excel (.xlsx).
Genera un libro con la tabla del sweep y una hoja de resumen.
"""

import logging
from pathlib import Path
from typing import Optional

from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side

from ..config.constants import Constants
from ..config.settings import settings
from ..domain.enums import OutputFormat
from ..domain.model import JobResult
from ..ports.report_exporter_port import ReportExporterPort


logger = logging.getLogger(__name__)


class ExcelExporter(ReportExporterPort):
    """Exporta resultados en formato Excel con formato profesional"""

    def __init__(self):
        self.header_font = Font(bold=True, color="FFFFFF", size=11)
        self.header_fill = PatternFill(start_color="4472C4", end_color="4472C4", fill_type="solid")
        self.border = Border(
            left=Side(style="thin"),
            right=Side(style="thin"),
            top=Side(style="thin"),
            bottom=Side(style="thin")
        )
        self.center = Alignment(horizontal="center", vertical="center")

    def export(self, result: JobResult, output_path: Optional[str] = None) -> Optional[str]:
        """
        Exporta el resultado en formato Excel (.xlsx).
        Crea hojas: Sweep y Resumen.

        Args:
            result: Resultado del job
            output_path: Archivo de salida (default OUT_DIR/<command>_<run_id>.xlsx)

        Returns:
            Path absoluto del archivo generado

        Raises:
            IOError: Si hay error de escritura
        """
        if output_path is None:
            extension = Constants.FORMAT_EXTENSIONS[OutputFormat.EXCEL.value]
            file_path = settings.OUT_DIR / f"{result.command}_{result.run_id}{extension}"
        else:
            file_path = Path(output_path)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        logger.debug(f"Exportando libro Excel a {file_path}")

        try:
            workbook = Workbook()
            workbook.remove(workbook.active)

            self._create_sweep_sheet(workbook, result)
            self._create_summary_sheet(workbook, result)

            workbook.save(file_path)
        except OSError as e:
            logger.error(f"Error al exportar libro Excel: {e}")
            raise IOError(f"Error al escribir archivo Excel: {e}") from e

        logger.info(f"Libro Excel exportado: {file_path}")
        return str(file_path.absolute())

    def _style_header(self, sheet, headers) -> None:
        for col, header in enumerate(headers, start=1):
            cell = sheet.cell(row=1, column=col, value=header)
            cell.font = self.header_font
            cell.fill = self.header_fill
            cell.border = self.border
            cell.alignment = self.center

    def _create_sweep_sheet(self, workbook: Workbook, result: JobResult) -> None:
        """Una fila por punto de grilla; los números se guardan como float"""
        sheet = workbook.create_sheet("Sweep")
        self._style_header(sheet, Constants.CSV_HEADER)

        for row_index, row in enumerate(result.rows, start=2):
            values = [
                row.alpha, row.m, row.lhs, row.rhs, row.slack,
                row.quadrature_error, row.verdict.value,
            ]
            for col, value in enumerate(values, start=1):
                cell = sheet.cell(row=row_index, column=col, value=value)
                cell.border = self.border

        for letter in "ABCDEFG":
            sheet.column_dimensions[letter].width = 22

    def _create_summary_sheet(self, workbook: Workbook, result: JobResult) -> None:
        sheet = workbook.create_sheet("Resumen")
        self._style_header(sheet, ["Métrica", "Valor"])

        entries = [("command", result.command), ("exit_code", result.exit_code), ("run_id", result.run_id)]
        if result.quadrature is not None:
            entries.append(("value", result.quadrature.value))
            entries.append(("error_estimate", result.quadrature.error_estimate))
        if result.derivative is not None:
            entries.append(("value", result.derivative))
        entries.extend(
            (key, value) for key, value in result.summary.items()
            if key != "output_path" and key not in ("value", "error_estimate")
        )
        if result.counterexample is not None:
            entries.append(("counterexample_kind", result.counterexample.kind))
            entries.append(("counterexample_index", result.counterexample.instance_index))

        for row_index, (key, value) in enumerate(entries, start=2):
            label = sheet.cell(row=row_index, column=1, value=key.replace('_', ' ').title())
            cell = sheet.cell(row=row_index, column=2, value=value)
            label.border = self.border
            cell.border = self.border

        sheet.column_dimensions['A'].width = 25
        sheet.column_dimensions['B'].width = 22
