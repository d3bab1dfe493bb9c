"""
Catálogo de funciones con nombre estable para jobs y suites de aceptación.
"""

from typing import Dict, Optional, Tuple

from .function import ScalarFunction, parse


CATALOG_SOURCES: Dict[str, str] = {
    "square": "x^2",
    "abs": "abs(x)",
    "exp": "exp(x)",
    "neg_square": "-x^2",
    "cube": "x^3",
}


def catalog_entry(name: str) -> ScalarFunction:
    """
    Devuelve la entrada del catálogo con su nombre como source.

    Raises:
        KeyError: Si el nombre no está en el catálogo
    """
    expression = parse(CATALOG_SOURCES[name])
    return ScalarFunction(source=name, ast=expression.ast)


def resolve(text: str, domain_hint: Optional[Tuple[float, float]] = None) -> ScalarFunction:
    """
    Resuelve un nombre del catálogo o parsea la expresión.

    Args:
        text: Nombre del catálogo ("square", "cube", ...) o expresión en x
        domain_hint: Intervalo sugerido (opcional)

    Returns:
        ScalarFunction
    """
    key = text.strip()
    if key in CATALOG_SOURCES:
        entry = catalog_entry(key)
        return ScalarFunction(source=entry.source, ast=entry.ast, domain_hint=domain_hint)
    return parse(key, domain_hint=domain_hint)
