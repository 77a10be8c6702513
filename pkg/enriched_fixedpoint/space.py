"""
Aritmética de espacios normados de dimensión finita.

Incluye:
  - SpaceDescriptor: espacio euclídeo R^n o espacio de funciones muestreado
    sobre una grilla uniforme (sustituto de C[a, b] con norma sup).
  - Vector: coordenadas inmutables interpretadas bajo un SpaceDescriptor.
  - norm, combine, distance y constructores de vectores/perfiles.

La norma sup de un espacio muestreado es el máximo sobre los nodos de la
grilla; para las aplicaciones puntuales del catálogo coincide con la norma
sup del problema discretizado.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import ContractViolationError


DEFAULT_GRID = 101


class SpaceKind(Enum):
    """Tipos de espacio soportados."""
    EUCLIDEAN = "euclidean"
    SAMPLED_FUNCTION = "sampled-function"


class NormKind(Enum):
    """Normas soportadas."""
    SUP = "sup"
    L1 = "l1"
    L2 = "l2"


@dataclass(frozen=True)
class SpaceDescriptor:
    """Descripción de un espacio normado de dimensión finita."""
    kind: SpaceKind
    dim: int
    norm_kind: NormKind = NormKind.SUP
    interval: Optional[Tuple[float, float]] = None
    grid: Optional[Tuple[float, ...]] = field(default=None, repr=False)

    def __post_init__(self):
        if not isinstance(self.kind, SpaceKind):
            object.__setattr__(self, "kind", SpaceKind(self.kind))
        if not isinstance(self.norm_kind, NormKind):
            object.__setattr__(self, "norm_kind", NormKind(self.norm_kind))
        if int(self.dim) != self.dim or self.dim < 1:
            raise ContractViolationError(f"dim debe ser un entero >= 1, recibido {self.dim}")

        if self.kind is SpaceKind.SAMPLED_FUNCTION:
            if self.norm_kind is not NormKind.SUP:
                raise ContractViolationError("Los espacios de funciones muestreadas usan norma sup")
            if self.interval is None or self.grid is None:
                raise ContractViolationError("Espacio muestreado sin intervalo o sin grilla")
            left, right = self.interval
            if not left < right:
                raise ContractViolationError(f"Intervalo no ordenado: [{left}, {right}]")
            grid = np.asarray(self.grid, dtype=float)
            if len(grid) != self.dim:
                raise ContractViolationError(f"La grilla tiene {len(grid)} nodos, dim = {self.dim}")
            if grid[0] != left or grid[-1] != right or np.any(np.diff(grid) <= 0):
                raise ContractViolationError("La grilla debe ser estrictamente creciente y "
                                             "comenzar/terminar en los extremos del intervalo")

    def grid_array(self) -> np.ndarray:
        """Abscisas de la grilla como arreglo (sólo espacios muestreados)."""
        if self.grid is None:
            raise ContractViolationError("El espacio euclídeo no tiene grilla")
        return np.asarray(self.grid, dtype=float)

    def describe(self) -> str:
        if self.kind is SpaceKind.SAMPLED_FUNCTION:
            left, right = self.interval
            return f"C[{left:g}, {right:g}] muestreado en {self.dim} nodos (sup)"
        return f"R^{self.dim} ({self.norm_kind.value})"


class Vector:
    """Punto de un espacio normado; las coordenadas no se pueden modificar."""

    __slots__ = ("coords",)

    def __init__(self, coords: Union[Iterable[float], np.ndarray]):
        arr = np.array(coords, dtype=float).reshape(-1)
        arr.setflags(write=False)
        self.coords = arr

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords.tolist())

    def __getitem__(self, index):
        return float(self.coords[index])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return np.array_equal(self.coords, other.coords)

    __hash__ = None

    def __repr__(self) -> str:
        if len(self.coords) <= 6:
            return f"Vector({self.coords.tolist()})"
        return f"Vector(dim={len(self.coords)}, first={self.coords[:3].tolist()}...)"

    def to_list(self):
        return self.coords.tolist()

    def is_zero(self) -> bool:
        return not np.any(self.coords)


def _check(space: SpaceDescriptor, u: Vector, name: str = "u") -> np.ndarray:
    if len(u) != space.dim:
        raise ContractViolationError(
            f"{name} tiene {len(u)} coordenadas pero el espacio tiene dim = {space.dim}")
    if not np.all(np.isfinite(u.coords)):
        raise ContractViolationError(f"{name} contiene coordenadas no finitas")
    return u.coords


def norm_rows(norm_kind: NormKind, arr: np.ndarray) -> np.ndarray:
    """Norma a lo largo del último eje (evaluación por lotes)."""
    if norm_kind is NormKind.SUP:
        return np.max(np.abs(arr), axis=-1)
    if norm_kind is NormKind.L1:
        return np.sum(np.abs(arr), axis=-1)
    return np.linalg.norm(arr, axis=-1)


def norm(space: SpaceDescriptor, u: Vector) -> float:
    """
    Norma de u en el espacio.

    Args:
        space: Descriptor del espacio
        u: Vector conforme al espacio

    Returns:
        Norma sup, l1 o l2 de las coordenadas (0 sólo para el vector cero)
    """
    coords = _check(space, u)
    return float(norm_rows(space.norm_kind, coords))


def combine(space: SpaceDescriptor, a: float, u: Vector, b: float, v: Vector) -> Vector:
    """Combinación lineal a*u + b*v, coordenada a coordenada."""
    cu = _check(space, u, "u")
    cv = _check(space, v, "v")
    # productos primero, luego una única suma: el resultado no depende del orden de los operandos
    return Vector(a * cu + b * cv)


def distance(space: SpaceDescriptor, u: Vector, v: Vector) -> float:
    return norm(space, combine(space, 1.0, u, -1.0, v))


def euclidean(dim: int, norm_kind: Union[str, NormKind] = NormKind.L2) -> SpaceDescriptor:
    """Espacio R^dim con la norma indicada."""
    return SpaceDescriptor(kind=SpaceKind.EUCLIDEAN, dim=dim, norm_kind=NormKind(norm_kind))


def sample_function_space(left: float, right: float, n: int = DEFAULT_GRID) -> SpaceDescriptor:
    """
    Discretiza C[left, right] con una grilla uniforme de n nodos (incluye ambos extremos).

    Raises:
        ContractViolationError: si left >= right o n < 2
    """
    if not np.isfinite(left) or not np.isfinite(right) or not left < right:
        raise ContractViolationError(f"Intervalo no ordenado: [{left}, {right}]")
    if int(n) != n or n < 2:
        raise ContractViolationError(f"La grilla necesita al menos 2 nodos, recibido {n}")
    grid = np.linspace(left, right, int(n))
    return SpaceDescriptor(
        kind=SpaceKind.SAMPLED_FUNCTION,
        dim=int(n),
        norm_kind=NormKind.SUP,
        interval=(float(left), float(right)),
        grid=tuple(grid.tolist()),
    )


def vector(space: SpaceDescriptor, coords: Sequence[float]) -> Vector:
    """Construye y valida un vector del espacio."""
    u = Vector(coords)
    _check(space, u)
    return u


def zeros(space: SpaceDescriptor) -> Vector:
    return Vector(np.zeros(space.dim))


def constant(space: SpaceDescriptor, value: float) -> Vector:
    return vector(space, np.full(space.dim, float(value)))


def grid_profile(space: SpaceDescriptor, name: str) -> Vector:
    """
    Perfiles acotados con nombre sobre la grilla: 'sin' (sin 2πt), 'cos' (cos 2πt)
    y 'abscissa' (t). Todos tienen norma sup <= 1 en [0, 1].
    """
    t = space.grid_array()
    name = name.lower()
    if name == "sin":
        return Vector(np.sin(2.0 * np.pi * t))
    if name == "cos":
        return Vector(np.cos(2.0 * np.pi * t))
    if name == "abscissa":
        return Vector(t)
    raise ContractViolationError(f"Perfil desconocido: {name}. Use 'sin', 'cos' o 'abscissa'")
