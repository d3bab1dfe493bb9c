"""
Adapter de lectura de jobs desde filesystem.
Implementa JobReaderPort para archivos `clave = valor` con secciones opcionales.

Ejemplo:
    [job]
    command = sweep
    inequality_id = mercer_m_discrete

    [grid]
    m = {0.25, 1, 4}
"""

import configparser
import logging
from pathlib import Path
from typing import Dict, Optional

from ..config.constants import Constants
from ..domain.dtos import JobSpec
from ..domain.errors import ConfigError
from ..ports.job_reader_port import JobReaderPort


logger = logging.getLogger(__name__)

_DEFAULT_SECTION = "job"


def _flatten(text: str) -> Dict[str, str]:
    """
    Aplana todas las secciones en un único diccionario.

    Raises:
        ConfigError: Clave repetida (en la misma o en distinta sección) o línea inválida
    """
    first_line = next(
        (line.strip() for line in text.splitlines()
         if line.strip() and not line.strip().startswith(("#", ";"))),
        "",
    )
    if not first_line.startswith("["):
        text = f"[{_DEFAULT_SECTION}]\n{text}"

    parser = configparser.ConfigParser(
        interpolation=None,
        inline_comment_prefixes=("#",),
        default_section="__defaults__",
        strict=True,
    )
    parser.optionxform = str  # respeta mayúsculas: G y g son claves distintas

    try:
        parser.read_string(text)
    except configparser.DuplicateOptionError as e:
        raise ConfigError(e.option, f"Clave repetida en el job: '{e.option}'") from e
    except configparser.DuplicateSectionError as e:
        raise ConfigError(e.section, f"Sección repetida en el job: '{e.section}'") from e
    except configparser.Error as e:
        raise ConfigError("job", f"Job mal formado: {e}") from e

    data: Dict[str, str] = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            if key in data:
                raise ConfigError(key, f"Clave repetida en el job: '{key}'")
            data[key] = value
    return data


def parse_job(text: str, command: Optional[str] = None) -> JobSpec:
    """
    Parsea el texto de un job y aplica defaults.

    Args:
        text: Contenido del job
        command: Comando del CLI; si el job declara otro distinto es un error

    Returns:
        JobSpec validado

    Raises:
        ConfigError: Nombrando la clave ofensiva
    """
    data = _flatten(text)

    declared = data.get("command", "").strip().lower()
    if command is not None:
        if declared and declared != command.lower():
            raise ConfigError(
                "command",
                f"El job declara command = {declared} pero se pidió '{command}'",
            )
        data["command"] = command

    spec = JobSpec.from_dict(data)
    logger.debug(f"Job parseado: {spec.command.value} ({len(data)} claves)")
    return spec


class FileSystemJobReader(JobReaderPort):
    """Lee jobs desde archivos del sistema de archivos local"""

    def read_job(self, source: str, command: Optional[str] = None) -> JobSpec:
        """
        Lee y valida un archivo de job.

        Args:
            source: Path al archivo de job
            command: Comando pedido en la línea de comandos

        Returns:
            JobSpec validado

        Raises:
            FileNotFoundError: Si el archivo no existe
            ValueError: Si la ruta no es un archivo
            ConfigError: Si el job es inválido
            IOError: Si hay error de lectura
        """
        path = Path(source)

        if not path.exists():
            logger.error(f"{Constants.ERROR_FILE_NOT_FOUND}: {source}")
            raise FileNotFoundError(f"{Constants.ERROR_FILE_NOT_FOUND}: {source}")

        if not path.is_file():
            logger.error(f"La ruta no es un archivo: {source}")
            raise ValueError(f"La ruta no es un archivo: {source}")

        logger.debug(f"Leyendo job: {source}")

        try:
            with open(path, 'r', encoding='utf-8') as f:
                content = f.read()
        except OSError as e:
            logger.error(f"Error al leer archivo {source}: {e}")
            raise IOError(f"Error al leer archivo: {e}") from e

        return self.parse_job(content, command)

    def parse_job(self, text: str, command: Optional[str] = None) -> JobSpec:
        """Ver parse_job"""
        return parse_job(text, command)
