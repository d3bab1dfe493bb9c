"""
Entrypoint CLI para fracjensen.
Ejecuta jobs de integración, derivación, chequeo, sweep y falsificación.

Uso:
    python app/cli.py integrate --job jobs/integrate_rl.ini
    python app/cli.py sweep --job jobs/sweep_mercer_m.ini --format csv --output out/sweep.csv
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Agregar el directorio raíz al path para importar src
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config.constants import Constants
from src.config.logging_config import setup_logging
from src.config.settings import settings
from src.domain.enums import Command, OutputFormat
from src.domain.errors import (
    ConfigError,
    ExpressionSyntaxError,
    FracJensenError,
    HypothesisError,
    ValidationError,
)
from src.domain.use_cases import ExecuteJobUseCase, RunJobFileUseCase
from src.adapters.job_reader_fs import FileSystemJobReader
from src.adapters.report_exporter_factory import ReportExporterFactory


logger = logging.getLogger("fracjensen.cli")


def _error(message: str) -> None:
    print(f"[ERROR] {message}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    """Parser de argumentos del CLI"""
    parser = argparse.ArgumentParser(
        prog="fracjensen",
        description="fracjensen - Operadores fraccionarios y certificados de desigualdades Jensen/Mercer",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos:
  python app/cli.py integrate --job jobs/integrate_rl.ini
  python app/cli.py check --job jobs/check_mercer.ini
  python app/cli.py sweep --job jobs/sweep_mercer_m.ini --format csv --output out/sweep.csv
  python app/cli.py falsify --job jobs/falsify_jensen.ini --seed 7

Códigos de salida:
  0 holds / éxito, 1 error de configuración, 2 falla numérica,
  3 violated, 4 hypothesis_failed, 130 interrumpido

Variables de entorno soportadas:
  FRACJENSEN_THREADS    Workers de sweep y falsify (0 = automático)
  FRACJENSEN_LOG_LEVEL  Nivel de logging (default: INFO)
  FRACJENSEN_JOBS_DIR   Directorio de jobs (default: ./jobs)
  FRACJENSEN_OUT_DIR    Salida de excel sin --output (default: ./out)
        """
    )

    parser.add_argument(
        "command",
        choices=Command.values(),
        help="Comando a ejecutar"
    )

    parser.add_argument(
        "--job",
        type=str,
        required=True,
        help="Path al archivo de job (también se busca en FRACJENSEN_JOBS_DIR)"
    )

    parser.add_argument(
        "--output",
        type=str,
        help="Archivo de salida (default: stdout)"
    )

    parser.add_argument(
        "--format",
        type=str,
        choices=OutputFormat.values(),
        help="Formato de salida (default: el del job o text)"
    )

    parser.add_argument(
        "--seed",
        type=int,
        help="Semilla (sobrescribe la del job)"
    )

    parser.add_argument(
        "--tolerance",
        type=float,
        help="Tolerancia absoluta (sobrescribe la del job)"
    )

    parser.add_argument(
        "--run-id",
        type=str,
        help="Identificador de la ejecución (se genera automáticamente si no se provee)"
    )

    parser.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARN", "ERROR"],
        help="Nivel de logging para esta ejecución"
    )

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Punto de entrada principal del CLI.

    Args:
        argv: Argumentos (default sys.argv[1:])

    Returns:
        Código de salida
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse sale con 2; los errores de uso son de configuración
        return Constants.EXIT_OK if e.code == 0 else Constants.EXIT_CONFIG_ERROR

    setup_logging(level=args.log_level)

    job_path = Path(args.job)
    if not job_path.exists() and (settings.JOBS_DIR / args.job).exists():
        job_path = settings.JOBS_DIR / args.job

    if not job_path.exists():
        _error(f"{Constants.ERROR_FILE_NOT_FOUND}: {args.job}")
        return Constants.EXIT_CONFIG_ERROR

    logger.info(f"Comando: {args.command}")
    logger.info(f"Job: {job_path}")

    try:
        # Componer dependencias (inyección manual)
        use_case = RunJobFileUseCase(
            job_reader=FileSystemJobReader(),
            exporter_factory=ReportExporterFactory.create,
            executor=ExecuteJobUseCase(),
        )

        result = use_case.execute(
            source=str(job_path),
            command=args.command,
            run_id=args.run_id,
            seed=args.seed,
            tolerance=args.tolerance,
            output=args.output,
            format=args.format,
        )

        output_path = result.summary.get("output_path")
        if output_path:
            logger.info(f"Salida escrita en {output_path}")
        logger.info(f"Run ID: {result.run_id} (exit {result.exit_code})")
        return result.exit_code

    except KeyboardInterrupt:
        print("[WARN] Proceso interrumpido por el usuario", file=sys.stderr)
        return Constants.EXIT_INTERRUPTED

    except ConfigError as e:
        _error(f"Configuración inválida ({e.key}): {e}")
        return Constants.EXIT_CONFIG_ERROR

    except (ValidationError, ExpressionSyntaxError) as e:
        _error(f"Configuración inválida: {e}")
        return Constants.EXIT_CONFIG_ERROR

    except HypothesisError as e:
        _error(f"Hipótesis no satisfecha: {e}")
        return Constants.EXIT_HYPOTHESIS_FAILED

    except FileNotFoundError as e:
        _error(str(e))
        return Constants.EXIT_CONFIG_ERROR

    except FracJensenError as e:
        _error(f"Falla numérica: {type(e).__name__}: {e}")
        return Constants.EXIT_NUMERICAL_ERROR

    except (ValueError, IOError) as e:
        _error(str(e))
        return Constants.EXIT_CONFIG_ERROR


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)
