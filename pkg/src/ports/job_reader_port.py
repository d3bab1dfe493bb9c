"""
Port para lectura de jobs.
Define la interfaz de entrada de los jobs del CLI.
"""

from abc import ABC, abstractmethod
from typing import Optional

from ..domain.dtos import JobSpec


class JobReaderPort(ABC):
    """Interfaz para leer jobs desde diferentes fuentes"""

    @abstractmethod
    def read_job(self, source: str, command: Optional[str] = None) -> JobSpec:
        """
        Lee y valida un job.

        Args:
            source: Identificador de la fuente (path, etc.)
            command: Comando pedido en la línea de comandos; debe coincidir
                     con el `command` del job si éste lo declara

        Returns:
            JobSpec validado con defaults aplicados

        Raises:
            FileNotFoundError: Si la fuente no existe
            ConfigError: Si el job es inválido
            IOError: Si hay error de lectura
        """
        pass

    @abstractmethod
    def parse_job(self, text: str, command: Optional[str] = None) -> JobSpec:
        """
        Parsea el texto de un job.

        Args:
            text: Contenido en formato `clave = valor` con secciones opcionales
            command: Comando por defecto si el texto no declara uno

        Returns:
            JobSpec validado

        Raises:
            ConfigError: Nombrando la clave ofensiva
        """
        pass
