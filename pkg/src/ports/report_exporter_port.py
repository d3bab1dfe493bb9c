"""
Puerto para exportación de resultados de jobs a diferentes formatos.
Define la interfaz común para todos los exporters.
"""

from abc import ABC, abstractmethod
from typing import Optional

from ..domain.model import JobResult


class ReportExporterPort(ABC):
    """
    Interfaz para exporters de resultados.
    Cada implementación exporta a un formato específico.
    """

    @abstractmethod
    def export(self, result: JobResult, output_path: Optional[str] = None) -> Optional[str]:
        """
        Exporta el resultado al formato específico.

        Args:
            result: Resultado del job
            output_path: Archivo de salida; None escribe en stdout en los
                         formatos de texto y en OUT_DIR en excel

        Returns:
            Path absoluto del archivo generado o None si se escribió en stdout

        Raises:
            IOError: Si hay error de escritura
            ValueError: Si faltan datos requeridos
        """
        pass
