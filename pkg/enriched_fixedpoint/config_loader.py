"""
Parser de archivos de problema (.cfg).

Formato orientado a líneas:
  - '[seccion]' abre una sección: space, mapping, comparison, contraction, solver, diagnostics
  - 'clave = valor' dentro de una sección
  - '#' inicia un comentario hasta el fin de línea
  - 'branch' y 'domain' pueden repetirse; el resto de las claves no

Números: decimales, notación científica, fracciones p/q, inf y -inf.
La gramática completa está en README_CONFIG.md.
"""

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .comparison import Variant, make_function
from .contraction import (CLASSICS, ContractionSpec, Interval, PiecewiseBranch, affine, piecewise,
                          pointwise_multiply)
from .diagnostics import DEFAULT_SEQUENCE_LENGTH, DEFAULT_TAIL_TOL, RecipeKind, SequenceRecipe
from .errors import ConfigError, EnrichedError
from .solver import StopRule
from .space import (DEFAULT_GRID, SpaceDescriptor, Vector, constant, euclidean, grid_profile,
                    sample_function_space, vector)


SECTIONS = {
    "space": {"kind", "dim", "norm", "left", "right", "grid"},
    "mapping": {"kind", "scale", "shift", "weights", "branch"},
    "comparison": {"family", "classic", "params"},
    "contraction": {"b", "variant", "domain", "name"},
    "solver": {"u0", "residual_tol", "step_tol", "max_iters", "seed", "samples"},
    "diagnostics": {"recipe", "gamma", "ratio", "length", "tol", "amplitude"},
}
REPEATABLE = {"branch", "domain"}
PROFILES = {"sin", "cos", "abscissa"}
RECIPE_ALIASES = {
    "power": RecipeKind.POWER_DECAY,
    "geometric": RecipeKind.GEOMETRIC_DECAY,
    "random": RecipeKind.RANDOM_PERTURBATION,
}


@dataclass
class ProblemConfig:
    """Problema completo leído de un archivo."""
    spec: ContractionSpec
    u0: Vector
    stop: StopRule = field(default_factory=StopRule)
    seed: int = 42
    samples: int = 10_000
    recipe: SequenceRecipe = field(default_factory=SequenceRecipe)
    diag_tol: float = DEFAULT_TAIL_TOL
    path: str = "<config>"


def parse_number(text: str) -> float:
    """
    Convierte '0.5', '1e-12', '5/4', 'inf', '-inf' a float.

    Raises:
        ValueError: si el texto no es un número reconocido
    """
    token = text.strip().replace(" ", "").lower()
    if token in ("inf", "+inf"):
        return math.inf
    if token == "-inf":
        return -math.inf
    return float(Fraction(token))


def resolve_path(path: str) -> str:
    """Rutas relativas: primero respecto al directorio actual, luego respecto al paquete."""
    if os.path.isabs(path) or os.path.exists(path):
        return path
    candidate = os.path.join(os.path.dirname(__file__), path)
    return candidate if os.path.exists(candidate) else path


class _Sections:
    """Valores crudos por sección con su número de línea, para reportar errores."""

    def __init__(self, path: str):
        self.path = path
        self.values: Dict[str, Dict[str, List[Tuple[int, str]]]] = {name: {} for name in SECTIONS}

    def error(self, message: str, line: Optional[int] = None, key: Optional[str] = None,
              section: Optional[str] = None) -> ConfigError:
        label = f"{section}.{key}" if section and key else key
        return ConfigError(message, self.path, line, label)

    def has(self, section: str, key: str) -> bool:
        return key in self.values[section]

    def raw(self, section: str, key: str) -> Tuple[int, str]:
        return self.values[section][key][0]

    def all(self, section: str, key: str) -> List[Tuple[int, str]]:
        return self.values[section].get(key, [])

    def text(self, section: str, key: str, default: Optional[str] = None) -> Optional[str]:
        if not self.has(section, key):
            if default is None:
                raise self.error("clave obligatoria ausente", None, key, section)
            return default
        return self.raw(section, key)[1]

    def number(self, section: str, key: str, default: Optional[float] = None) -> float:
        if not self.has(section, key):
            if default is None:
                raise self.error("clave obligatoria ausente", None, key, section)
            return default
        line, value = self.raw(section, key)
        try:
            return parse_number(value)
        except (ValueError, ZeroDivisionError):
            raise self.error(f"'{value}' no es un número", line, key, section)

    def integer(self, section: str, key: str, default: int) -> int:
        value = self.number(section, key, float(default))
        if not math.isfinite(value) or value != int(value):
            line = self.raw(section, key)[0]
            raise self.error(f"se esperaba un entero, recibido {value}", line, key, section)
        return int(value)

    def numbers(self, section: str, key: str) -> Tuple[List[float], int]:
        if not self.has(section, key):
            raise self.error("clave obligatoria ausente", None, key, section)
        line, value = self.raw(section, key)
        try:
            return [parse_number(item) for item in value.split(",")], line
        except (ValueError, ZeroDivisionError):
            raise self.error(f"lista numérica inválida: '{value}'", line, key, section)


def _read_sections(lines: List[str], path: str) -> _Sections:
    sections = _Sections(path)
    current = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]") and "=" not in line:
            name = line[1:-1].strip().lower()
            if name not in SECTIONS:
                raise sections.error(f"sección desconocida '[{name}]'", lineno)
            current = name
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip().lower(), value.strip()
        if not sep or not key:
            raise sections.error(f"se esperaba 'clave = valor': '{line}'", lineno)
        if current is None:
            raise sections.error("clave fuera de cualquier sección", lineno, key)
        if key not in SECTIONS[current]:
            raise sections.error(f"clave desconocida en [{current}]", lineno, key, current)
        if not value:
            raise sections.error("valor vacío", lineno, key, current)
        bucket = sections.values[current].setdefault(key, [])
        if bucket and key not in REPEATABLE:
            raise sections.error(f"clave repetida (primera en la línea {bucket[0][0]})", lineno, key, current)
        bucket.append((lineno, value))
    return sections


def _build_space(sec: _Sections, grid_override: Optional[int]) -> SpaceDescriptor:
    kind = sec.text("space", "kind", "euclidean").lower()
    if kind == "euclidean":
        norm = sec.text("space", "norm", "sup").lower()
        if norm not in ("sup", "l1", "l2"):
            raise sec.error(f"norma desconocida '{norm}'", sec.raw("space", "norm")[0], "norm", "space")
        return euclidean(sec.integer("space", "dim", 1), norm)
    if kind == "sampled-function":
        grid = grid_override or sec.integer("space", "grid", DEFAULT_GRID)
        return sample_function_space(sec.number("space", "left"), sec.number("space", "right"), grid)
    raise sec.error(f"tipo de espacio desconocido '{kind}'", sec.raw("space", "kind")[0], "kind", "space")


def _broadcast(sec: _Sections, section: str, key: str, space: SpaceDescriptor) -> List[float]:
    values, line = sec.numbers(section, key)
    if len(values) == 1:
        return values * space.dim
    if len(values) != space.dim:
        raise sec.error(f"{len(values)} valores para dim = {space.dim}", line, key, section)
    return values


def _build_mapping(sec: _Sections, space: SpaceDescriptor):
    kind = sec.text("mapping", "kind").lower()
    if kind == "affine":
        shift = _broadcast(sec, "mapping", "shift", space) if sec.has("mapping", "shift") else 0.0
        if isinstance(shift, list) and len(set(shift)) == 1:
            shift = shift[0]
        return affine(sec.number("mapping", "scale"), shift)
    if kind == "pointwise-multiply":
        text = sec.text("mapping", "weights")
        line = sec.raw("mapping", "weights")[0]
        if text.strip().lower() == "abscissa":
            if space.grid is None:
                raise sec.error("'abscissa' requiere un espacio sampled-function", line, "weights", "mapping")
            return pointwise_multiply(space.grid_array())
        return pointwise_multiply(_broadcast(sec, "mapping", "weights", space))
    if kind == "piecewise-scalar":
        branches = []
        for line, text in sec.all("mapping", "branch"):
            parts = text.split(":")
            if len(parts) != 3:
                raise sec.error("se esperaba 'intervalo : escala : desplazamiento'", line, "branch", "mapping")
            try:
                interval = Interval.parse(parts[0], parse_number)
                branches.append(PiecewiseBranch(interval, parse_number(parts[1]), parse_number(parts[2])))
            except (ValueError, ZeroDivisionError) as exc:
                raise sec.error(str(exc), line, "branch", "mapping")
        if not branches:
            raise sec.error("piecewise-scalar necesita al menos una línea 'branch'", None, "branch", "mapping")
        try:
            return piecewise(branches)
        except EnrichedError as exc:
            raise sec.error(str(exc), sec.all("mapping", "branch")[0][0], "branch", "mapping")
    raise sec.error(f"tipo de aplicación desconocido '{kind}'", sec.raw("mapping", "kind")[0], "kind", "mapping")


def _build_u0(sec: _Sections, space: SpaceDescriptor) -> Vector:
    line, text = sec.raw("solver", "u0") if sec.has("solver", "u0") else (None, "0")
    name = text.strip().lower()
    if name in PROFILES:
        if space.grid is None:
            raise sec.error(f"el perfil '{name}' requiere un espacio sampled-function", line, "u0", "solver")
        return grid_profile(space, name)
    if line is None:
        return constant(space, 0.0)
    values = _broadcast(sec, "solver", "u0", space)
    try:
        return vector(space, values)
    except EnrichedError as exc:
        raise sec.error(str(exc), line, "u0", "solver")


def _build_recipe(sec: _Sections) -> SequenceRecipe:
    name = sec.text("diagnostics", "recipe", "power-decay").lower()
    kind = RECIPE_ALIASES.get(name)
    if kind is None:
        try:
            kind = RecipeKind(name)
        except ValueError:
            line = sec.raw("diagnostics", "recipe")[0]
            raise sec.error(f"receta desconocida '{name}'", line, "recipe", "diagnostics")
    return SequenceRecipe(
        kind=kind,
        exponent=sec.number("diagnostics", "gamma", 2.0),
        ratio=sec.number("diagnostics", "ratio", 0.5),
        length=sec.integer("diagnostics", "length", DEFAULT_SEQUENCE_LENGTH),
        amplitude=sec.number("diagnostics", "amplitude", 1.0),
        seed=sec.integer("solver", "seed", 42),
    )


def parse_config(text: str, path: str = "<config>", grid: Optional[int] = None) -> ProblemConfig:
    """
    Construye un ProblemConfig desde el texto de un archivo.

    Args:
        text: Contenido del archivo
        path: Nombre usado en los mensajes de error
        grid: Si se indica, reemplaza [space] grid

    Raises:
        ConfigError: con línea y campo del error
    """
    sec = _read_sections(text.splitlines(), path)
    try:
        space = _build_space(sec, grid)
        mapping = _build_mapping(sec, space)

        if sec.has("comparison", "classic"):
            line, classic = sec.raw("comparison", "classic")
            if classic.lower() not in CLASSICS:
                raise sec.error(f"contracción clásica desconocida '{classic}'", line, "classic", "comparison")
            family, default_variant = CLASSICS[classic.lower()]
            family = family.value
        else:
            family, default_variant = sec.text("comparison", "family"), Variant.A
        variant = sec.text("contraction", "variant", default_variant.value)
        params, params_line = sec.numbers("comparison", "params")
        try:
            f = make_function(family, params, variant)
        except EnrichedError as exc:
            raise sec.error(str(exc), params_line, "params", "comparison")

        domain = None
        if sec.has("contraction", "domain"):
            domain = []
            for line, value in sec.all("contraction", "domain"):
                try:
                    domain.append(Interval.parse(value, parse_number))
                except EnrichedError as exc:
                    raise sec.error(str(exc), line, "domain", "contraction")

        spec = ContractionSpec(space=space, mapping=mapping, b=sec.number("contraction", "b"), f=f,
                               variant=f.intended_class, domain=tuple(domain) if domain else None,
                               name=sec.text("contraction", "name", os.path.basename(path)))
        return ProblemConfig(
            spec=spec,
            u0=_build_u0(sec, space),
            stop=StopRule(
                residual_tol=sec.number("solver", "residual_tol", 1e-12),
                step_tol=sec.number("solver", "step_tol", 0.0),
                max_iters=sec.integer("solver", "max_iters", 10_000),
            ),
            seed=sec.integer("solver", "seed", 42),
            samples=sec.integer("solver", "samples", 10_000),
            recipe=_build_recipe(sec),
            diag_tol=sec.number("diagnostics", "tol", DEFAULT_TAIL_TOL),
            path=path,
        )
    except ConfigError:
        raise
    except EnrichedError as exc:
        # errores de contrato sin línea concreta (p. ej. dimensiones incompatibles)
        raise ConfigError(str(exc), path)


def load_config(path: str, grid: Optional[int] = None) -> ProblemConfig:
    """
    Lee un archivo de problema.

    Raises:
        ConfigError: archivo inexistente o contenido inválido
    """
    resolved = resolve_path(path)
    if not os.path.exists(resolved):
        raise ConfigError("archivo no encontrado", path)
    with open(resolved, "r", encoding="utf-8") as handle:
        return parse_config(handle.read(), path, grid)
