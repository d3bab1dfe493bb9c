"""
Configuración centralizada del proyecto fracjensen.
Lee variables de entorno con defaults razonables.
"""

import os
from pathlib import Path


class Settings:
    """
    Clase de configuración que lee parámetros desde variables de entorno
    con valores por defecto razonables.
    """

    def __init__(self):
        # Este archivo está en src/config/settings.py, el raíz está 2 niveles arriba
        self._project_root = Path(__file__).parent.parent.parent

        # Workers para sweeps y falsificador (0 = automático)
        self.THREADS = int(os.environ.get(
            "FRACJENSEN_THREADS",
            "0"
        ))

        # Nivel de logging
        self.LOG_LEVEL = os.environ.get(
            "FRACJENSEN_LOG_LEVEL",
            "INFO"
        ).upper()

        # Tolerancia absoluta por defecto de toda la cuadratura
        self.TOLERANCE = float(os.environ.get(
            "FRACJENSEN_TOLERANCE",
            "1e-9"
        ))

        # Semilla y presupuesto por defecto de los jobs
        self.SEED = int(os.environ.get("FRACJENSEN_SEED", "42"))
        self.BUDGET = int(os.environ.get("FRACJENSEN_BUDGET", "10000"))

        # Cuadratura adaptativa
        self.MAX_SUBDIVISIONS = int(os.environ.get(
            "FRACJENSEN_MAX_SUBDIVISIONS",
            "2000"
        ))
        self.GRADING_RATIO = float(os.environ.get(
            "FRACJENSEN_GRADING_RATIO",
            "0.15"
        ))
        self.GRADING_LEVELS = int(os.environ.get(
            "FRACJENSEN_GRADING_LEVELS",
            "40"
        ))

        # Presupuesto de las suites de holgura (las de cuadratura usan uno reducido
        # salvo que se fije FRACJENSEN_PROPERTY_BUDGET)
        property_budget = os.environ.get("FRACJENSEN_PROPERTY_BUDGET")
        self.PROPERTY_BUDGET = int(property_budget or "10000")
        self.QUADRATURE_PROPERTY_BUDGET = int(os.environ.get(
            "FRACJENSEN_QUADRATURE_PROPERTY_BUDGET",
            property_budget or "200"
        ))

        # Certificación empírica de m-convexidad
        self.GRID_SIZE = int(os.environ.get("FRACJENSEN_GRID_SIZE", "33"))
        self.RANDOM_TRIPLES = int(os.environ.get(
            "FRACJENSEN_RANDOM_TRIPLES",
            "10000"
        ))

        # Chequeos de hipótesis dentro de cada reporte de desigualdad
        self.CHECK_GRID_SIZE = int(os.environ.get(
            "FRACJENSEN_CHECK_GRID_SIZE",
            "17"
        ))
        self.CHECK_RANDOM_TRIPLES = int(os.environ.get(
            "FRACJENSEN_CHECK_RANDOM_TRIPLES",
            "2000"
        ))

        # Directorio de salida de los libros Excel sin --output (convertir a ruta absoluta si es relativa)
        out_dir_str = os.environ.get("FRACJENSEN_OUT_DIR", "./out")
        self.OUT_DIR = Path(out_dir_str)
        if not self.OUT_DIR.is_absolute():
            self.OUT_DIR = self._project_root / self.OUT_DIR

        # Directorio de jobs de ejemplo
        jobs_dir_str = os.environ.get("FRACJENSEN_JOBS_DIR", "./jobs")
        self.JOBS_DIR = Path(jobs_dir_str)
        if not self.JOBS_DIR.is_absolute():
            self.JOBS_DIR = self._project_root / self.JOBS_DIR

    def worker_count(self) -> int:
        """Resuelve THREADS = 0 a la cantidad de CPUs disponibles"""
        if self.THREADS > 0:
            return self.THREADS
        return os.cpu_count() or 1

    def __repr__(self):
        return (
            f"Settings("
            f"THREADS={self.THREADS}, "
            f"LOG_LEVEL={self.LOG_LEVEL}, "
            f"TOLERANCE={self.TOLERANCE}, "
            f"SEED={self.SEED}, "
            f"BUDGET={self.BUDGET}, "
            f"PROPERTY_BUDGET={self.PROPERTY_BUDGET}, "
            f"QUADRATURE_PROPERTY_BUDGET={self.QUADRATURE_PROPERTY_BUDGET}, "
            f"MAX_SUBDIVISIONS={self.MAX_SUBDIVISIONS}, "
            f"GRADING_RATIO={self.GRADING_RATIO}, "
            f"GRADING_LEVELS={self.GRADING_LEVELS}, "
            f"GRID_SIZE={self.GRID_SIZE}, "
            f"RANDOM_TRIPLES={self.RANDOM_TRIPLES}, "
            f"OUT_DIR={self.OUT_DIR}, "
            f"JOBS_DIR={self.JOBS_DIR})"
        )


# Instancia global por defecto (singleton simple)
settings = Settings()
