"""
DTOs de los jobs del CLI.
Define JobSpec y Grid con validación a partir de un diccionario plano clave/valor.
"""

import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..config.constants import Constants
from .enums import Command, KernelKind, OutputFormat, Relaxation, Side
from .errors import ConfigError
from .jensen.inequalities import INEQUALITY_IDS, INEQUALITY_REQUIREMENTS


_GRID_PATTERN = re.compile(r"^\{\s*([^,{}]+)\s*,\s*([^,{}]+)\s*,\s*([^,{}]+)\s*\}$")

MEASURE_KINDS = ("discrete", "uniform", "density", "fractional")

JOB_KEYS = (
    "command", "kernel", "g", "gprime", "G", "phi", "f", "density",
    "a", "b", "c", "d", "t", "side", "alpha", "m", "points", "weights",
    "measure", "inequality_id", "tolerance", "seed", "budget", "relaxation",
    "output", "format", "h", "phi_at_a", "phi_at_b", "epsilon", "presorted",
    "interval",
)

_COMMAND_FIELDS = {
    Command.INTEGRATE: ("kernel", "f", "a", "b", "t", "alpha"),
    Command.DERIVE: ("kernel", "f", "a", "b", "t", "alpha"),
    Command.CHECK: ("inequality_id",),
    Command.SWEEP: ("inequality_id",),
    Command.FALSIFY: ("inequality_id",),
}


@dataclass(frozen=True)
class Grid:
    """
    Grilla lineal inclusiva {start, stop, steps}.
    Un valor escalar es una grilla de un solo paso.
    """
    start: float
    stop: float
    steps: int = 1

    def __post_init__(self):
        """Valida steps >= 1"""
        if self.steps < 1:
            raise ValueError(f"La grilla requiere steps >= 1, recibido {self.steps}")

    @classmethod
    def parse(cls, key: str, value: Any) -> 'Grid':
        """
        Crea la grilla desde "0.5" o "{0.1, 0.9, 9}".

        Raises:
            ConfigError: Si el texto no es un número ni una grilla válida
        """
        if isinstance(value, Grid):
            return value
        if isinstance(value, (int, float)):
            return cls(float(value), float(value), 1)

        text = str(value).strip()
        match = _GRID_PATTERN.match(text)
        try:
            if match:
                start, stop, steps = match.groups()
                steps_value = float(steps)
                if steps_value != int(steps_value):
                    raise ValueError(steps)
                return cls(float(start), float(stop), int(steps_value))
            number = float(text)
            return cls(number, number, 1)
        except ValueError as e:
            raise ConfigError(key, f"{Constants.ERROR_INVALID_VALUE} para '{key}': '{text}'") from e

    def values(self) -> List[float]:
        """Valores de la grilla, extremos incluidos"""
        if self.steps == 1:
            return [self.start]
        return [float(v) for v in np.linspace(self.start, self.stop, self.steps)]

    @property
    def single(self) -> bool:
        return self.steps == 1


def _float(data: Dict[str, Any], key: str) -> Optional[float]:
    value = data.get(key)
    if value is None or value == "":
        return None
    try:
        return float(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(key, f"{Constants.ERROR_INVALID_VALUE} para '{key}': '{value}'") from e


def _default(value: Optional[float], default: float) -> float:
    return default if value is None else value


def _int(data: Dict[str, Any], key: str, default: int) -> int:
    value = _float(data, key)
    if value is None:
        return default
    if value != int(value):
        raise ConfigError(key, f"{Constants.ERROR_INVALID_VALUE} para '{key}': '{data[key]}'")
    return int(value)


def _floats(data: Dict[str, Any], key: str) -> Optional[Tuple[float, ...]]:
    value = data.get(key)
    if value is None or value == "":
        return None
    if isinstance(value, (list, tuple)):
        items = value
    else:
        items = [item for item in str(value).replace(";", ",").split(",") if item.strip()]
    try:
        return tuple(float(item) for item in items)
    except (TypeError, ValueError) as e:
        raise ConfigError(key, f"{Constants.ERROR_INVALID_VALUE} para '{key}': '{value}'") from e


def _choice(data: Dict[str, Any], key: str, enum_cls, default):
    value = data.get(key)
    if value is None or value == "":
        return enum_cls(default)
    if isinstance(value, enum_cls):
        return value
    text = str(value).strip().lower()
    if not enum_cls.is_valid(text):
        raise ConfigError(
            key,
            f"{Constants.ERROR_INVALID_VALUE} para '{key}': '{value}'. "
            f"Valores permitidos: {', '.join(enum_cls.values())}",
        )
    return enum_cls(text)


def _text(data: Dict[str, Any], key: str) -> Optional[str]:
    value = data.get(key)
    if value is None:
        return None
    text = str(value).strip()
    return text or None


def _bool(data: Dict[str, Any], key: str) -> bool:
    value = _text(data, key)
    if value is None:
        return False
    lowered = value.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(key, f"{Constants.ERROR_INVALID_VALUE} para '{key}': '{value}'")


@dataclass(frozen=True)
class JobSpec:
    """
    Job validado con defaults aplicados.
    Los campos que no usa el comando quedan en None.
    """
    command: Command
    kernel: Optional[KernelKind] = None
    g: Optional[str] = None
    gprime: Optional[str] = None
    G: Optional[str] = None
    phi: Optional[str] = None
    f: Optional[str] = None
    density: Optional[str] = None
    a: Optional[float] = None
    b: Optional[float] = None
    c: Optional[float] = None
    d: Optional[float] = None
    t: Optional[float] = None
    side: Side = Side.RIGHT
    alpha: Optional[Grid] = None
    m: Optional[Grid] = None
    points: Optional[Tuple[float, ...]] = None
    weights: Optional[Tuple[float, ...]] = None
    measure: Optional[str] = None
    inequality_id: Optional[str] = None
    tolerance: float = Constants.DEFAULT_TOLERANCE
    seed: int = Constants.DEFAULT_SEED
    budget: int = Constants.DEFAULT_BUDGET
    relaxation: Relaxation = Relaxation.NONE
    output: Optional[str] = None
    format: OutputFormat = OutputFormat.TEXT
    h: Optional[float] = None
    phi_at_a: Optional[float] = None
    phi_at_b: Optional[float] = None
    epsilon: float = Constants.DEFAULT_EPSILON
    presorted: bool = False
    interval: Optional[Tuple[float, float]] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'JobSpec':
        """
        Crea un JobSpec validado desde un diccionario plano.

        Args:
            data: Claves del job (valores str o numéricos)

        Returns:
            JobSpec con defaults (tolerance 1e-9, seed 42, budget 10⁴)

        Raises:
            ConfigError: Nombrando la clave faltante, desconocida o inválida
        """
        unknown = [key for key in data if key not in JOB_KEYS]
        if unknown:
            raise ConfigError(unknown[0], f"Clave desconocida en el job: '{unknown[0]}'")

        if _text(data, "command") is None:
            raise ConfigError("command", f"{Constants.ERROR_MISSING_FIELD}: command")
        command = _choice(data, "command", Command, None)

        for key in _COMMAND_FIELDS[command]:
            if _text(data, key) is None:
                raise ConfigError(key, f"{Constants.ERROR_MISSING_FIELD}: {key}")

        interval = _floats(data, "interval")
        if interval is not None and (len(interval) != 2 or interval[0] > interval[1]):
            raise ConfigError("interval", f"{Constants.ERROR_INVALID_VALUE} para 'interval': {interval}")

        spec = cls(
            command=command,
            kernel=_choice(data, "kernel", KernelKind, None) if _text(data, "kernel") else None,
            g=_text(data, "g"),
            gprime=_text(data, "gprime"),
            G=_text(data, "G"),
            phi=_text(data, "phi"),
            f=_text(data, "f"),
            density=_text(data, "density"),
            a=_float(data, "a"),
            b=_float(data, "b"),
            c=_float(data, "c"),
            d=_float(data, "d"),
            t=_float(data, "t"),
            side=_choice(data, "side", Side, Constants.DEFAULT_SIDE),
            alpha=Grid.parse("alpha", data["alpha"]) if _text(data, "alpha") else None,
            m=Grid.parse("m", data["m"]) if _text(data, "m") else None,
            points=_floats(data, "points"),
            weights=_floats(data, "weights"),
            measure=_text(data, "measure"),
            inequality_id=_text(data, "inequality_id"),
            tolerance=_default(_float(data, "tolerance"), Constants.DEFAULT_TOLERANCE),
            seed=_int(data, "seed", Constants.DEFAULT_SEED),
            budget=_int(data, "budget", Constants.DEFAULT_BUDGET),
            relaxation=_choice(data, "relaxation", Relaxation, Constants.DEFAULT_RELAXATION),
            output=_text(data, "output"),
            format=_choice(data, "format", OutputFormat, OutputFormat.TEXT),
            h=_float(data, "h"),
            phi_at_a=_float(data, "phi_at_a"),
            phi_at_b=_float(data, "phi_at_b"),
            epsilon=_default(_float(data, "epsilon"), Constants.DEFAULT_EPSILON),
            presorted=_bool(data, "presorted"),
            interval=interval,
        )
        spec.validate()
        return spec

    def with_overrides(self, **overrides) -> 'JobSpec':
        """
        Copia con valores del CLI (--seed, --tolerance, --output, --format).

        Raises:
            ConfigError: Si algún valor sobrescrito es inválido
        """
        fields = {name: getattr(self, name) for name in self.__dataclass_fields__}
        fields.update({key: value for key, value in overrides.items() if value is not None})
        if not isinstance(fields["format"], OutputFormat):
            fields["format"] = _choice(fields, "format", OutputFormat, OutputFormat.TEXT)
        spec = JobSpec(**fields)
        spec.validate()
        return spec

    def validate(self) -> None:
        """
        Invariantes del job: campos por comando, grillas y tolerancia.

        Raises:
            ConfigError: Nombrando la clave ofensiva
        """
        if not self.tolerance > 0:
            raise ConfigError("tolerance", f"La tolerancia debe ser positiva, recibido {self.tolerance}")
        if self.budget < 1:
            raise ConfigError("budget", f"El presupuesto debe ser >= 1, recibido {self.budget}")

        if self.command in (Command.INTEGRATE, Command.DERIVE):
            self._validate_kernel()
            if not self.alpha.single:
                raise ConfigError("alpha", f"'{self.command.value}' requiere un único valor de alpha")
            return

        if self.inequality_id not in INEQUALITY_IDS:
            raise ConfigError(
                "inequality_id",
                f"{Constants.ERROR_UNKNOWN_INEQUALITY}: '{self.inequality_id}'. "
                f"Disponibles: {', '.join(INEQUALITY_IDS)}",
            )

        if self.command == Command.CHECK:
            for key in ("alpha", "m"):
                grid = getattr(self, key)
                if grid is not None and not grid.single:
                    raise ConfigError(key, f"'check' requiere un único valor de {key}; use 'sweep'")

        if self.command in (Command.CHECK, Command.SWEEP):
            self._validate_inequality_fields()

    def _validate_kernel(self) -> None:
        if self.kernel in (KernelKind.GWEIGHTED, KernelKind.CUSTOM):
            for key in ("g", "gprime"):
                if getattr(self, key) is None:
                    raise ConfigError(key, f"{Constants.ERROR_MISSING_FIELD}: {key}")
        if self.kernel == KernelKind.CUSTOM and self.G is None:
            raise ConfigError("G", f"{Constants.ERROR_MISSING_FIELD}: G")

    def _validate_inequality_fields(self) -> None:
        for key in INEQUALITY_REQUIREMENTS[self.inequality_id]:
            if key == "measure":
                self._validate_measure()
            elif key == "kernel":
                if self.kernel is None:
                    raise ConfigError("kernel", f"{Constants.ERROR_MISSING_FIELD}: kernel")
                self._validate_kernel()
            elif getattr(self, key) is None:
                raise ConfigError(key, f"{Constants.ERROR_MISSING_FIELD}: {key}")

    def _validate_measure(self) -> None:
        if self.measure is None:
            raise ConfigError("measure", f"{Constants.ERROR_MISSING_FIELD}: measure")
        if self.measure not in MEASURE_KINDS:
            raise ConfigError(
                "measure",
                f"{Constants.ERROR_INVALID_VALUE} para 'measure': '{self.measure}'. "
                f"Valores permitidos: {', '.join(MEASURE_KINDS)}",
            )
        if self.measure == "discrete":
            if self.points is None:
                raise ConfigError("points", f"{Constants.ERROR_MISSING_FIELD}: points")
            return

        required = ["c", "d"]
        if self.measure == "density":
            required.append("density")
        if self.measure == "fractional":
            required.extend(["kernel", "alpha"])
        for key in required:
            if getattr(self, key) is None:
                raise ConfigError(key, f"{Constants.ERROR_MISSING_FIELD}: {key}")
        if self.measure == "fractional":
            self._validate_kernel()

    def alpha_values(self) -> List[Optional[float]]:
        """Valores de α de la grilla o [None]"""
        return self.alpha.values() if self.alpha is not None else [None]

    def m_values(self) -> List[Optional[float]]:
        """Valores de m de la grilla o [None]"""
        return self.m.values() if self.m is not None else [None]

    def to_dict(self) -> Dict[str, Any]:
        """Resumen serializable del job"""
        data = {}
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if value is None:
                continue
            if isinstance(value, Grid):
                value = value.values()
            elif hasattr(value, "value"):
                value = value.value
            elif isinstance(value, tuple):
                value = list(value)
            data[name] = value
        return data
