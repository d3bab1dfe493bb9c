"""
Constantes del proyecto fracjensen.
Centraliza strings, códigos de salida, valores por defecto y mensajes.
"""


class Constants:
    """Constantes globales del proyecto"""

    # Encabezado exacto de las tablas CSV
    CSV_HEADER = ["alpha", "m", "lhs", "rhs", "slack", "quadrature_error", "verdict"]
    CSV_FLOAT_FORMAT = ".17g"

    # Veredictos
    VERDICT_HOLDS = "holds"
    VERDICT_VIOLATED = "violated"
    VERDICT_HYPOTHESIS_FAILED = "hypothesis_failed"

    # Códigos de salida del CLI
    EXIT_OK = 0
    EXIT_CONFIG_ERROR = 1
    EXIT_NUMERICAL_ERROR = 2
    EXIT_VIOLATED = 3
    EXIT_HYPOTHESIS_FAILED = 4
    EXIT_INTERRUPTED = 130

    # Defaults de los jobs
    DEFAULT_TOLERANCE = 1e-9
    DEFAULT_SEED = 42
    DEFAULT_BUDGET = 10_000
    DEFAULT_SIDE = "right"
    DEFAULT_RELAXATION = "none"
    DEFAULT_EPSILON = 1e-6

    # Umbrales numéricos
    VIOLATION_TOLERANCE = 1e-9
    FALSIFY_SLACK_THRESHOLD = -1e-6
    WEIGHT_SUM_TOLERANCE = 1e-12
    SHRINK_STEPS = 20
    MONOTONICITY_GRID = 64
    MIN_DERIVATIVE_STEP = 1e-5

    # Etiqueta de los certificados empíricos
    EMPIRICAL_NOTE = "evidencia empírica, no es una prueba"

    # Extensiones por formato
    FORMAT_EXTENSIONS = {
        "text": ".txt",
        "csv": ".csv",
        "excel": ".xlsx",
    }

    # Mensajes de logging
    LOG_READING_JOB = "Leyendo job desde archivo"
    LOG_EXECUTING_JOB = "Ejecutando job"
    LOG_JOB_COMPLETE = "Job completado"
    LOG_SWEEP_POINT = "Evaluando punto de la grilla"
    LOG_FALSIFY_START = "Iniciando búsqueda de contraejemplos"
    LOG_FALSIFY_HIT = "Contraejemplo encontrado"
    LOG_FALSIFY_NONE = "Sin contraejemplos dentro del presupuesto"
    LOG_WRITING_OUTPUT = "Escribiendo archivos de salida"

    # Mensajes de error
    ERROR_FILE_NOT_FOUND = "Archivo no encontrado"
    ERROR_MISSING_FIELD = "Campo requerido faltante"
    ERROR_INVALID_VALUE = "Valor inválido"
    ERROR_UNKNOWN_INEQUALITY = "Desigualdad desconocida"
    ERROR_EMPTY_ROWS = "Se requiere al menos una fila para emitir CSV"
