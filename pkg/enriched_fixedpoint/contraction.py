"""
Aplicaciones T, desigualdades enriquecidas (1)/(2), verificación por muestreo
y especializaciones de contracciones clásicas.

Desigualdad variante A:
    ∥b(u-v) + Tu - Tv∥ <= f((b+1)∥u-v∥, ∥u-Tu∥, ∥v-Tv∥)
Desigualdad variante A':
    ∥b(u-v) + Tu - Tv∥ <= f((b+1)∥u-v∥, ∥(b+1)(u-v) + v - Tv∥, ∥(b+1)(v-u) + u - Tu∥)

Todas las evaluaciones internas trabajan por lotes (arreglos n x dim) y las
operaciones públicas sobre un par usan el mismo camino con un lote de una fila,
de modo que un testigo reevaluado reproduce exactamente lhs y rhs.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .comparison import (ComparisonFunction, Family, KCertificate, Variant, _as_variant,
                         analytic_k, evaluate_many, make_function)
from .errors import ContractViolationError, InvalidSpecError
from .space import SpaceDescriptor, Vector, _check, norm_rows


DEFAULT_SEED = 42
DEFAULT_PAIRS = 10_000
DEFAULT_RADIUS = 100.0
VIOLATION_RTOL = 1e-12
CHUNK_SIZE = 1024
HEAVY_TAIL_DECADES = 6


class MappingKind(Enum):
    AFFINE = "affine"
    POINTWISE_MULTIPLY = "pointwise-multiply"
    PIECEWISE_SCALAR = "piecewise-scalar"


class CertificateVerdict(Enum):
    VERIFIED = "verified-on-samples"
    FALSIFIED = "falsified"


# ----------------------------------------------------------------------------
# Intervalos
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """Intervalo real; los extremos infinitos se tratan siempre como abiertos."""
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi) or self.lo > self.hi:
            raise InvalidSpecError(f"Intervalo mal formado: {self}")

    def contains(self, x):
        """Pertenencia, escalar o vectorizada."""
        x = np.asarray(x, dtype=float)
        left = (x >= self.lo) if self.lo_closed else (x > self.lo)
        right = (x <= self.hi) if self.hi_closed else (x < self.hi)
        inside = left & right
        return bool(inside) if inside.ndim == 0 else inside

    @classmethod
    def parse(cls, text: str, number: Callable[[str], float] = float) -> "Interval":
        """
        Lee '[1, 2]', '(-inf, 0)', '[0, inf)' ...

        Args:
            text: Intervalo en notación de corchetes/paréntesis
            number: Conversor de cada extremo (p. ej. uno que acepte fracciones p/q)

        Raises:
            InvalidSpecError: si el texto no tiene la forma esperada
        """
        text = text.strip()
        if len(text) < 5 or text[0] not in "[(" or text[-1] not in "])" or "," not in text:
            raise InvalidSpecError(f"Intervalo no reconocido: '{text}'")
        lo_text, hi_text = text[1:-1].split(",", 1)
        try:
            lo, hi = number(lo_text.strip()), number(hi_text.strip())
        except ValueError:
            raise InvalidSpecError(f"Extremos no numéricos en '{text}'")
        return cls(lo, hi, text[0] == "[", text[-1] == "]")

    def __str__(self) -> str:
        return (f"{'[' if self.lo_closed else '('}{self.lo:g}, "
                f"{self.hi:g}{']' if self.hi_closed else ')'}")


def covers_real_line(intervals: Sequence[Interval]) -> bool:
    """True si la unión de los intervalos es R (se prueban extremos, puntos medios y colas)."""
    if not intervals:
        return False
    points = sorted({x for iv in intervals for x in (iv.lo, iv.hi) if math.isfinite(x)})
    if not points:
        checkpoints = [0.0]
    else:
        checkpoints = [points[0] - 1.0, points[-1] + 1.0] + points
        checkpoints += [0.5 * (a + b) for a, b in zip(points, points[1:])]
    return all(any(iv.contains(x) for iv in intervals) for x in checkpoints)


# ----------------------------------------------------------------------------
# Aplicaciones
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class PiecewiseBranch:
    """Rama x -> scale * x + shift sobre un intervalo."""
    interval: Interval
    scale: float
    shift: float


@dataclass(frozen=True)
class MappingSpec:
    """Aplicación T del catálogo."""
    kind: MappingKind
    scale: float = 0.0
    shift: Union[float, Tuple[float, ...]] = 0.0
    weights: Optional[Tuple[float, ...]] = None
    branches: Tuple[PiecewiseBranch, ...] = ()

    def describe(self) -> str:
        if self.kind is MappingKind.AFFINE:
            shift = self.shift if isinstance(self.shift, float) else "vector"
            return f"affine(a={self.scale:g}, c={shift})"
        if self.kind is MappingKind.POINTWISE_MULTIPLY:
            return f"pointwise-multiply({len(self.weights)} pesos)"
        parts = "; ".join(f"{br.interval} -> {br.scale:g}u{br.shift:+g}" for br in self.branches)
        return f"piecewise({parts})"


def affine(scale: float, shift: Union[float, Sequence[float]] = 0.0) -> MappingSpec:
    """Tu = scale * u + shift (shift escalar se difunde a todas las coordenadas)."""
    if isinstance(shift, (int, float)):
        shift = float(shift)
    else:
        shift = tuple(float(c) for c in shift)
    return MappingSpec(MappingKind.AFFINE, scale=float(scale), shift=shift)


def pointwise_multiply(weights: Union[Vector, Sequence[float]]) -> MappingSpec:
    """(Tu)(t) = w(t) u(t) sobre la grilla."""
    return MappingSpec(MappingKind.POINTWISE_MULTIPLY, weights=tuple(float(w) for w in weights))


def piecewise(branches: Sequence[Tuple[Interval, float, float]]) -> MappingSpec:
    """
    Aplicación escalar por tramos; gana la primera rama que contiene a u.

    Raises:
        InvalidSpecError: si las ramas no cubren R
    """
    parsed = tuple(br if isinstance(br, PiecewiseBranch) else PiecewiseBranch(br[0], float(br[1]), float(br[2]))
                   for br in branches)
    if not covers_real_line([br.interval for br in parsed]):
        raise InvalidSpecError("Las ramas de la aplicación por tramos no cubren R")
    return MappingSpec(MappingKind.PIECEWISE_SCALAR, branches=parsed)


@dataclass(frozen=True)
class ContractionSpec:
    """Paquete (T, b, f, variante) de una afirmación de contracción enriquecida."""
    space: SpaceDescriptor
    mapping: MappingSpec
    b: float
    f: ComparisonFunction
    variant: Variant = Variant.A
    domain: Optional[Tuple[Interval, ...]] = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "variant", _as_variant(self.variant))
        if not math.isfinite(self.b) or self.b < 0:
            raise InvalidSpecError(f"b debe ser finito y >= 0, recibido {self.b}")
        if self.variant is not self.f.intended_class:
            raise InvalidSpecError(
                f"La variante {self.variant.value} no coincide con la clase de f "
                f"({self.f.intended_class.value})")
        m = self.mapping
        if m.kind is MappingKind.POINTWISE_MULTIPLY and len(m.weights) != self.space.dim:
            raise ContractViolationError(
                f"{len(m.weights)} pesos para un espacio de dim = {self.space.dim}")
        if m.kind is MappingKind.AFFINE and not isinstance(m.shift, float) and len(m.shift) != self.space.dim:
            raise ContractViolationError(f"El desplazamiento tiene {len(m.shift)} coordenadas")
        if m.kind is MappingKind.PIECEWISE_SCALAR and self.space.dim != 1:
            raise ContractViolationError("La aplicación por tramos sólo opera en espacios de dim = 1")
        if self.domain is not None:
            object.__setattr__(self, "domain", tuple(self.domain))

    @property
    def lam(self) -> float:
        return 1.0 / (self.b + 1.0)

    def describe(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return (f"{label}T = {self.mapping.describe()}, b = {self.b:g}, f = {self.f.describe()}, "
                f"X = {self.space.describe()}")


def _apply_rows(spec: ContractionSpec, arr: np.ndarray) -> np.ndarray:
    m = spec.mapping
    if m.kind is MappingKind.AFFINE:
        return m.scale * arr + np.asarray(m.shift, dtype=float)
    if m.kind is MappingKind.POINTWISE_MULTIPLY:
        return np.asarray(m.weights, dtype=float) * arr
    x = arr[..., 0]
    out = np.full(x.shape, np.nan)
    taken = np.zeros(x.shape, dtype=bool)
    for br in m.branches:
        hit = ~taken & br.interval.contains(x)
        out[hit] = br.scale * x[hit] + br.shift
        taken |= hit
    return out[..., None]


def _difference_rows(spec: ContractionSpec, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Tu - Tv; para aplicaciones lineales más traslación se usa la parte lineal."""
    m = spec.mapping
    if m.kind is MappingKind.AFFINE:
        return m.scale * (U - V)
    if m.kind is MappingKind.POINTWISE_MULTIPLY:
        return np.asarray(m.weights, dtype=float) * (U - V)
    return _apply_rows(spec, U) - _apply_rows(spec, V)


def apply_mapping(spec: ContractionSpec, u: Vector) -> Vector:
    """
    Evalúa Tu.

    Raises:
        ContractViolationError: dimensión incorrecta o coordenadas no finitas
    """
    coords = _check(spec.space, u)
    return Vector(_apply_rows(spec, coords[None, :])[0])


def in_domain(spec: ContractionSpec, u: Vector) -> bool:
    """True si todas las coordenadas están en la unión de intervalos del dominio (o no hay dominio)."""
    if spec.domain is None:
        return True
    coords = np.asarray(u.coords)
    inside = np.zeros(coords.shape, dtype=bool)
    for iv in spec.domain:
        inside |= iv.contains(coords)
    return bool(np.all(inside))


# ----------------------------------------------------------------------------
# Lados de las desigualdades (por lotes)
# ----------------------------------------------------------------------------

def _lhs_rows(spec: ContractionSpec, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    return norm_rows(spec.space.norm_kind, spec.b * (U - V) + _difference_rows(spec, U, V))


def _rhs_rows(spec: ContractionSpec, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    nk = spec.space.norm_kind
    b1 = spec.b + 1.0
    TU, TV = _apply_rows(spec, U), _apply_rows(spec, V)
    r = b1 * norm_rows(nk, U - V)
    if spec.variant is Variant.A:
        s = norm_rows(nk, U - TU)
        t = norm_rows(nk, V - TV)
    else:
        s = norm_rows(nk, b1 * (U - V) + V - TV)
        t = norm_rows(nk, b1 * (V - U) + U - TU)
    return evaluate_many(spec.f, r, s, t)


def _reduced_lhs_rows(spec: ContractionSpec, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    lam = spec.lam
    return norm_rows(spec.space.norm_kind, (1.0 - lam) * (U - V) + lam * _difference_rows(spec, U, V))


def _reduced_rhs_rows(spec: ContractionSpec, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    nk = spec.space.norm_kind
    lam = spec.lam
    AU = (1.0 - lam) * U + lam * _apply_rows(spec, U)
    AV = (1.0 - lam) * V + lam * _apply_rows(spec, V)
    r = norm_rows(nk, U - V)
    if spec.variant is Variant.A:
        s, t = norm_rows(nk, U - AU), norm_rows(nk, V - AV)
    else:
        s, t = norm_rows(nk, U - AV), norm_rows(nk, V - AU)
    return evaluate_many(spec.f, r, s, t)


def _pair(spec: ContractionSpec, u: Vector, v: Vector) -> Tuple[np.ndarray, np.ndarray]:
    cu = _check(spec.space, u, "u")
    cv = _check(spec.space, v, "v")
    if np.array_equal(cu, cv):
        raise ContractViolationError("La desigualdad enriquecida requiere u != v")
    return cu[None, :], cv[None, :]


def lhs_enriched(spec: ContractionSpec, u: Vector, v: Vector) -> float:
    """∥b(u-v) + Tu - Tv∥."""
    U, V = _pair(spec, u, v)
    return float(_lhs_rows(spec, U, V)[0])


def rhs_enriched_A(spec: ContractionSpec, u: Vector, v: Vector) -> float:
    """f((b+1)∥u-v∥, ∥u-Tu∥, ∥v-Tv∥)."""
    if spec.variant is not Variant.A:
        raise ContractViolationError("rhs_enriched_A requiere una especificación de variante A")
    U, V = _pair(spec, u, v)
    return float(_rhs_rows(spec, U, V)[0])


def rhs_enriched_Aprime(spec: ContractionSpec, u: Vector, v: Vector) -> float:
    """f((b+1)∥u-v∥, ∥(b+1)(u-v)+v-Tv∥, ∥(b+1)(v-u)+u-Tu∥)."""
    if spec.variant is not Variant.A_PRIME:
        raise ContractViolationError("rhs_enriched_Aprime requiere una especificación de variante A'")
    U, V = _pair(spec, u, v)
    return float(_rhs_rows(spec, U, V)[0])


def rhs_enriched(spec: ContractionSpec, u: Vector, v: Vector) -> float:
    if spec.variant is Variant.A:
        return rhs_enriched_A(spec, u, v)
    return rhs_enriched_Aprime(spec, u, v)


def reduced_lhs(spec: ContractionSpec, u: Vector, v: Vector) -> float:
    """∥T_λu - T_λv∥ con λ = 1/(b+1)."""
    U, V = _pair(spec, u, v)
    return float(_reduced_lhs_rows(spec, U, V)[0])


def reduced_rhs(spec: ContractionSpec, u: Vector, v: Vector) -> float:
    """Lado derecho de la forma reducida sobre el operador promediado T_λ."""
    U, V = _pair(spec, u, v)
    return float(_reduced_rhs_rows(spec, U, V)[0])


def _violated(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    return lhs > rhs + VIOLATION_RTOL * np.maximum(1.0, rhs)


# ----------------------------------------------------------------------------
# Verificación por muestreo
# ----------------------------------------------------------------------------

@dataclass
class Witness:
    u: Vector
    v: Vector
    lhs: float
    rhs: float

    def to_dict(self) -> Dict:
        return {"u": self.u.to_list(), "v": self.v.to_list(), "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class CertificateReport:
    """Resultado de verify: evidencia muestreada, nunca prueba de pertenencia."""
    verdict: CertificateVerdict
    samples: int
    seed: int
    witness: Optional[Witness] = None
    margin_min: float = math.inf
    reduced_margin_min: float = math.inf

    @property
    def falsified(self) -> bool:
        return self.verdict is CertificateVerdict.FALSIFIED

    def to_dict(self) -> Dict:
        return {
            "verdict": self.verdict.value,
            "samples": self.samples,
            "seed": self.seed,
            "margin_min": self.margin_min,
            "reduced_margin_min": self.reduced_margin_min,
            "witness": self.witness.to_dict() if self.witness else None,
        }


def _averaged_rows(spec: ContractionSpec, arr: np.ndarray) -> np.ndarray:
    """T_λ por filas; con b = 0 es exactamente T."""
    if spec.b == 0.0:
        return _apply_rows(spec, arr)
    return (1.0 - spec.lam) * arr + spec.lam * _apply_rows(spec, arr)


def _structured_pairs(spec: ContractionSpec) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pares deterministas que se evalúan primero:
      - (0, 1)
      - iguales salvo una coordenada (primera y última)
      - pares (u, T_λu) cerca del punto fijo, partiendo de 0, 1 y -1
    """
    dim = spec.space.dim
    zeros, ones = np.zeros(dim), np.ones(dim)
    pairs = [(zeros, ones)]
    for j in sorted({0, dim - 1}):
        bumped = ones.copy()
        bumped[j] += 1.0
        pairs.append((ones, bumped))
    with np.errstate(all="ignore"):
        for start in (zeros, ones, -ones):
            moved = _averaged_rows(spec, start[None, :])[0]
            if np.all(np.isfinite(moved)) and not np.array_equal(start, moved):
                pairs.append((start, moved))
    U = np.array([p[0] for p in pairs])
    V = np.array([p[1] for p in pairs])
    return U, V


def _draw_rows(rng: np.random.Generator, m: int, dim: int, radius: float) -> np.ndarray:
    """Mezcla 50/50 de uniforme[-R, R] y escalas de cola pesada uniforme[-1, 1] * 10^U(-6, 6)."""
    uniform = rng.uniform(-radius, radius, size=(m, dim))
    heavy = rng.uniform(-1.0, 1.0, size=(m, dim)) * 10.0 ** rng.uniform(
        -HEAVY_TAIL_DECADES, HEAVY_TAIL_DECADES, size=(m, 1))
    pick = rng.random(size=(m, 1)) < 0.5
    return np.where(pick, uniform, heavy)


def _random_pairs(rng: np.random.Generator, m: int, dim: int, radius: float) -> Tuple[np.ndarray, np.ndarray]:
    U = _draw_rows(rng, m, dim, radius)
    V = _draw_rows(rng, m, dim, radius)
    collide = np.all(U == V, axis=1)
    while np.any(collide):
        V[collide] = _draw_rows(rng, int(collide.sum()), dim, radius)
        collide = np.all(U == V, axis=1)
    return U, V


def _batches(spec: ContractionSpec, seed: int, n_pairs: int, radius: float):
    """Lotes (U, V) en orden fijo: estructurados, luego bloques de CHUNK_SIZE con semillas derivadas."""
    U, V = _structured_pairs(spec)
    U, V = U[:n_pairs], V[:n_pairs]
    yield U, V
    remaining = n_pairs - len(U)
    if remaining <= 0:
        return
    n_chunks = -(-remaining // CHUNK_SIZE)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    for i, child in enumerate(children):
        m = min(CHUNK_SIZE, remaining - i * CHUNK_SIZE)
        yield _random_pairs(np.random.default_rng(child), m, spec.space.dim, radius)


def verify(spec: ContractionSpec, seed: int = DEFAULT_SEED, n_pairs: int = DEFAULT_PAIRS,
           radius: float = DEFAULT_RADIUS, verbose: bool = False) -> CertificateReport:
    """
    Busca un contraejemplo de la desigualdad enriquecida sobre pares muestreados.

    Args:
        spec: Especificación a verificar (el dominio se ignora)
        seed: Semilla; el resultado es idéntico para la misma (seed, n_pairs)
        n_pairs: Número total de pares (estructurados + aleatorios)
        radius: R de la componente uniforme[-R, R]
        verbose: Imprime el progreso por lote

    Returns:
        CertificateReport con veredicto 'falsified' en la primera violación estricta
        o 'verified-on-samples' con el margen mínimo observado
    """
    if int(n_pairs) != n_pairs or n_pairs < 1:
        raise ContractViolationError(f"n_pairs debe ser >= 1, recibido {n_pairs}")
    n_pairs = int(n_pairs)
    seen = 0
    margin = math.inf
    reduced_margin = math.inf
    for U, V in _batches(spec, seed, n_pairs, radius):
        if len(U) == 0:
            continue
        with np.errstate(over="ignore", invalid="ignore"):
            lhs = _lhs_rows(spec, U, V)
            rhs = _rhs_rows(spec, U, V)
            red = _reduced_rhs_rows(spec, U, V) - _reduced_lhs_rows(spec, U, V)
        bad = _violated(lhs, rhs)
        if np.any(bad):
            i = int(np.argmax(bad))
            margin = min(margin, float(np.min(rhs[:i + 1] - lhs[:i + 1])))
            reduced_margin = min(reduced_margin, float(np.min(red[:i + 1])))
            witness = Witness(Vector(U[i]), Vector(V[i]), float(lhs[i]), float(rhs[i]))
            if verbose:
                print(f"[VERIFY] Contraejemplo en el par #{seen + i + 1}: "
                      f"lhs = {witness.lhs:.6g} > rhs = {witness.rhs:.6g}")
            return CertificateReport(CertificateVerdict.FALSIFIED, seen + i + 1, seed, witness,
                                     margin, reduced_margin)
        margin = min(margin, float(np.min(rhs - lhs)))
        reduced_margin = min(reduced_margin, float(np.min(red)))
        seen += len(U)
        if verbose:
            print(f"[VERIFY] {seen}/{n_pairs} pares sin violación (margen mínimo {margin:.3e})")
    return CertificateReport(CertificateVerdict.VERIFIED, seen, seed, None, margin, reduced_margin)


# ----------------------------------------------------------------------------
# Especializaciones clásicas
# ----------------------------------------------------------------------------

CLASSICS: Dict[str, Tuple[Family, Variant]] = {
    "banach": (Family.SCALED_R, Variant.A),
    "kannan": (Family.SCALED_SUM_ST, Variant.A),
    "reich": (Family.WEIGHTED_SUM, Variant.A),
    "bianchini": (Family.SCALED_MAX_ST, Variant.A),
    "khan": (Family.GEOMETRIC_MEAN, Variant.A),
    "chatterjea": (Family.SCALED_SUM_ST, Variant.A_PRIME),
    "ciric-max": (Family.SCALED_MAX_ST, Variant.A_PRIME),
    "reich-prime": (Family.WEIGHTED_SUM, Variant.A_PRIME),
}


@dataclass(frozen=True)
class ContractionTemplate:
    """Par (f, variante) de una contracción clásica enriquecida, sin T ni espacio."""
    classic: str
    f: ComparisonFunction
    variant: Variant
    b: float
    certificate: KCertificate = field(compare=False)

    @property
    def k(self) -> float:
        return self.certificate.k

    def bind(self, space: SpaceDescriptor, mapping: MappingSpec,
             domain: Optional[Sequence[Interval]] = None, name: Optional[str] = None) -> ContractionSpec:
        return ContractionSpec(space=space, mapping=mapping, b=self.b, f=self.f, variant=self.variant,
                               domain=tuple(domain) if domain is not None else None,
                               name=name or f"enriched-{self.classic}")


def get_available_classics() -> List[str]:
    return list(CLASSICS.keys())


def specialize(name: str, params: Union[float, Sequence[float]], b: float = 0.0) -> ContractionTemplate:
    """
    Versión enriquecida de una contracción clásica.

    Raises:
        InvalidSpecError: nombre desconocido, b inválido o parámetros con k >= 1
    """
    key = name.lower()
    if key not in CLASSICS:
        raise InvalidSpecError(
            f"Contracción clásica desconocida: '{name}'. Disponibles: {', '.join(CLASSICS)}")
    if not math.isfinite(b) or b < 0:
        raise InvalidSpecError(f"b debe ser finito y >= 0, recibido {b}")
    family, variant = CLASSICS[key]
    f = make_function(family, params, variant)
    cert = analytic_k(f, variant)
    if not cert.valid:
        raise InvalidSpecError(f"{key} con parámetros {f.params} da k = {cert.k:.6g} >= 1")
    return ContractionTemplate(classic=key, f=f, variant=variant, b=float(b), certificate=cert)


def specialize_banach_theta(theta: float, b: float) -> ContractionTemplate:
    """Forma (b, θ) de Banach enriquecida: θ ∈ [0, b+1) se traduce en α = θ/(b+1)."""
    if not 0.0 <= theta < b + 1.0:
        raise InvalidSpecError(f"θ = {theta} fuera de [0, {b + 1.0:g})")
    return specialize("banach", theta / (b + 1.0), b)
