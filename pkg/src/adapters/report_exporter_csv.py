"""
Exporter de resultados en formato CSV.
Una fila por punto de grilla con encabezado alpha,m,lhs,rhs,slack,quadrature_error,verdict.
"""

import csv
import logging
import sys
from pathlib import Path
from typing import IO, List, Optional, Sequence

from ..config.constants import Constants
from ..domain.model import JobResult, SweepRow
from ..ports.report_exporter_port import ReportExporterPort


logger = logging.getLogger(__name__)

VALUE_HEADER = ["value", "error_estimate"]


def format_cell(value) -> str:
    """Número con 17 dígitos significativos; None es celda vacía"""
    if value is None:
        return ""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return format(float(value), Constants.CSV_FLOAT_FORMAT)
    return str(getattr(value, "value", value))


def _row_cells(row: SweepRow) -> List[str]:
    return [
        format_cell(row.alpha),
        format_cell(row.m),
        format_cell(row.lhs),
        format_cell(row.rhs),
        format_cell(row.slack),
        format_cell(row.quadrature_error),
        row.verdict.value,
    ]


def _write_table(stream: IO[str], header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def emit_csv(rows: Sequence[SweepRow], output: Optional[str] = None) -> Optional[str]:
    """
    Escribe las filas en CSV (separador coma, LF, 17 dígitos).

    Args:
        rows: Filas a escribir (al menos una)
        output: Path del archivo; None escribe en stdout

    Returns:
        Path absoluto del archivo o None si se escribió en stdout

    Raises:
        ValueError: Si no hay filas
        IOError: Si hay error de escritura
    """
    if not rows:
        raise ValueError(Constants.ERROR_EMPTY_ROWS)
    return _emit(Constants.CSV_HEADER, [_row_cells(row) for row in rows], output)


def _emit(header: Sequence[str], cells: Sequence[Sequence[str]], output: Optional[str]) -> Optional[str]:
    if output is None:
        _write_table(sys.stdout, header, cells)
        sys.stdout.flush()
        return None

    file_path = Path(output)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    logger.debug(f"Exportando CSV a {file_path}")

    try:
        with open(file_path, 'w', newline='', encoding='utf-8') as f:
            _write_table(f, header, cells)
    except OSError as e:
        logger.error(f"Error al exportar CSV: {e}")
        raise IOError(f"Error al escribir archivo CSV: {e}") from e

    logger.info(f"CSV exportado: {file_path} ({len(cells)} filas)")
    return str(file_path.absolute())


class CsvExporter(ReportExporterPort):
    """Exporta resultados en formato CSV tabular"""

    def export(self, result: JobResult, output_path: Optional[str] = None) -> Optional[str]:
        """
        Exporta el resultado en CSV.

        Las tablas de check/sweep/falsify usan el encabezado de filas de
        desigualdad; integrate/derive emiten value,error_estimate. Un falsify
        sin contraejemplo emite sólo el encabezado.

        Args:
            result: Resultado del job
            output_path: Archivo de salida (None = stdout)

        Returns:
            Path absoluto del archivo o None

        Raises:
            IOError: Si hay error de escritura
        """
        if result.rows:
            return emit_csv(result.rows, output_path)

        if result.quadrature is not None:
            cells = [[format_cell(result.quadrature.value), format_cell(result.quadrature.error_estimate)]]
            return _emit(VALUE_HEADER, cells, output_path)

        if result.derivative is not None:
            return _emit(VALUE_HEADER, [[format_cell(result.derivative), ""]], output_path)

        return _emit(Constants.CSV_HEADER, [], output_path)
