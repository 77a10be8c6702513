"""
Diagnósticos de buena colocación (well-posedness) y de sombreado límite
(limit shadowing) sobre sucesiones generadas alrededor de un punto fijo p.

"lim = 0" se verifica sobre la cola: el último 25% de los índices debe quedar
por debajo de la tolerancia declarada.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

import numpy as np

from .comparison import Variant, analytic_k
from .contraction import ContractionSpec, _apply_rows
from .errors import ContractViolationError, InvalidSpecError, UncertifiedFixedPointError
from .solver import _averaged_rows, averaged_operator, lambda_from_b
from .space import Vector, _check, distance, norm_rows


DEFAULT_TAIL_TOL = 1e-6
DEFAULT_SEQUENCE_LENGTH = 10_000
CERTIFICATION_RTOL = 1e-10
BOUND_SLACK = 1e-10
DRIFT_ATOL = 1e-12
TAIL_FRACTION = 0.25


class RecipeKind(Enum):
    POWER_DECAY = "power-decay"
    GEOMETRIC_DECAY = "geometric-decay"
    RANDOM_PERTURBATION = "random-perturbation"


class DiagnosticProperty(Enum):
    WELLPOSEDNESS = "well-posedness"
    LIMIT_SHADOWING = "limit-shadowing"


class DiagnosticVerdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    HYPOTHESIS_NOT_MET = "hypothesis-not-met"


@dataclass(frozen=True)
class SequenceRecipe:
    """
    Receta u_n = p + amplitude * scale(n) * direction, n = 1..length.

      power-decay        : scale(n) = n^-γ
      geometric-decay    : scale(n) = ρ^n
      random-perturbation: scale(n) = n^-γ con una dirección unitaria aleatoria por índice
    """
    kind: RecipeKind = RecipeKind.POWER_DECAY
    exponent: float = 1.0
    ratio: float = 0.5
    direction: Optional[Vector] = None
    length: int = DEFAULT_SEQUENCE_LENGTH
    amplitude: float = 1.0
    seed: int = 42

    def __post_init__(self):
        if not isinstance(self.kind, RecipeKind):
            object.__setattr__(self, "kind", RecipeKind(self.kind))
        if not self.exponent > 0:
            raise ContractViolationError(f"El exponente γ debe ser > 0, recibido {self.exponent}")
        if not 0.0 < self.ratio < 1.0:
            raise ContractViolationError(f"La razón ρ debe estar en (0, 1), recibido {self.ratio}")
        if int(self.length) != self.length or self.length < 1:
            raise ContractViolationError(f"length debe ser >= 1, recibido {self.length}")
        if not math.isfinite(self.amplitude) or self.amplitude < 0:
            raise ContractViolationError(f"amplitude debe ser finita y >= 0, recibido {self.amplitude}")

    def scales(self) -> np.ndarray:
        n = np.arange(1, int(self.length) + 1, dtype=float)
        if self.kind is RecipeKind.GEOMETRIC_DECAY:
            return self.amplitude * self.ratio ** n
        return self.amplitude * n ** (-self.exponent)


@dataclass
class DiagnosticReport:
    prop: DiagnosticProperty
    verdict: DiagnosticVerdict
    residuals: np.ndarray
    distances: np.ndarray
    tol: float
    tail_ratio: float
    k_used: float
    envelope_constant: float
    bound_violations: int = 0
    max_orbit_drift: float = 0.0
    residual_identity_error: float = 0.0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is DiagnosticVerdict.PASS

    def to_dict(self) -> Dict:
        tail = _tail(len(self.distances))
        return {
            "property": self.prop.value,
            "verdict": self.verdict.value,
            "length": int(len(self.distances)),
            "tol": self.tol,
            "final_residual": float(self.residuals[-1]),
            "final_distance": float(self.distances[-1]),
            "max_tail_distance": float(np.max(self.distances[tail])),
            "tail_ratio": self.tail_ratio,
            "envelope_constant": self.envelope_constant,
            "bound_violations": self.bound_violations,
            "max_orbit_drift": self.max_orbit_drift,
            "residual_identity_error": self.residual_identity_error,
            "detail": self.detail,
        }


def _tail(length: int) -> slice:
    return slice(length - max(1, int(length * TAIL_FRACTION)), length)


def _p_residual(spec: ContractionSpec, coords: np.ndarray) -> float:
    return float(norm_rows(spec.space.norm_kind, coords - _averaged_rows(spec, coords[None, :])[0]))


def _certify(spec: ContractionSpec, p: Vector) -> np.ndarray:
    coords = _check(spec.space, p, "p")
    residual = _p_residual(spec, coords)
    limit = CERTIFICATION_RTOL * max(1.0, float(norm_rows(spec.space.norm_kind, coords)))
    if residual > limit:
        raise UncertifiedFixedPointError(
            f"p no está certificado: ∥p - T_λp∥ = {residual:.3e} > {limit:.3e}")
    return coords


def _k_used(spec: ContractionSpec) -> float:
    cert = analytic_k(spec.f, spec.variant)
    if not cert.valid:
        raise InvalidSpecError(f"k = {cert.k:.6g} >= 1: los diagnósticos requieren una especificación válida")
    return cert.k


def _sequence_rows(spec: ContractionSpec, p: np.ndarray, recipe: SequenceRecipe) -> np.ndarray:
    dim = spec.space.dim
    nk = spec.space.norm_kind
    scales = recipe.scales()[:, None]
    if recipe.kind is RecipeKind.RANDOM_PERTURBATION:
        rng = np.random.default_rng(recipe.seed)
        directions = rng.standard_normal((int(recipe.length), dim))
        directions /= norm_rows(nk, directions)[:, None]
        return p + scales * directions
    if recipe.direction is None:
        direction = np.ones(dim) / float(norm_rows(nk, np.ones(dim)))
    else:
        direction = _check(spec.space, recipe.direction, "direction")
        size = float(norm_rows(nk, direction))
        if abs(size - 1.0) > 1e-9:
            raise ContractViolationError(f"La dirección debe ser unitaria, ∥d∥ = {size:.6g}")
    return p + scales * direction


def make_sequence(spec: ContractionSpec, p: Vector, recipe: SequenceRecipe) -> List[Vector]:
    """
    Genera u_1..u_length alrededor de un p certificado.

    Raises:
        UncertifiedFixedPointError: si ∥p - T_λp∥ > 1e-10 max(1, ∥p∥)
    """
    coords = _certify(spec, p)
    return [Vector(row) for row in _sequence_rows(spec, coords, recipe)]


def _residual_identity_error(spec: ContractionSpec, U: np.ndarray, residuals: np.ndarray) -> float:
    """
    Máxima brecha entre ∥u - T_λu∥ y λ∥u - Tu∥, relativa a la magnitud de los
    operandos max(1, ∥u∥, ∥Tu∥): cerca de p ambos lados sufren cancelación.
    """
    nk = spec.space.norm_kind
    lam = lambda_from_b(spec.b)
    TU = _apply_rows(spec, U)
    scaled = lam * norm_rows(nk, U - TU)
    magnitude = np.maximum(1.0, np.maximum(norm_rows(nk, U), norm_rows(nk, TU)))
    rel = np.abs(residuals - scaled) / magnitude
    return float(np.max(rel)) if len(rel) else 0.0


def _hypothesis_met(residuals: np.ndarray, tol: float) -> bool:
    return bool(np.all(residuals[_tail(len(residuals))] < tol))


def check_wellposedness(spec: ContractionSpec, p: Vector, recipe: SequenceRecipe,
                        tol: float = DEFAULT_TAIL_TOL, verbose: bool = False) -> DiagnosticReport:
    """
    Comprueba que residuos -> 0 implica ∥u_n - p∥ -> 0 sobre la sucesión de la receta.

    Para la variante A' se verifica además, en cada índice,
    ∥u_n - p∥ <= ∥u_n - T_λu_n∥ / (1 - k) (+1e-10). Para la variante A la
    envolvente C·residuo se ajusta sobre la cabeza de la sucesión y sólo se reporta.

    Returns:
        DiagnosticReport con veredicto pass, fail o hypothesis-not-met
    """
    k = _k_used(spec)
    pc = _certify(spec, p)
    nk = spec.space.norm_kind
    U = _sequence_rows(spec, pc, recipe)
    residuals = norm_rows(nk, U - _averaged_rows(spec, U))
    distances = norm_rows(nk, U - pc)
    tail = _tail(len(U))

    violations = 0
    if spec.variant is Variant.A_PRIME:
        constant = 1.0 / (1.0 - k)
        violations = int(np.sum(distances > constant * residuals + BOUND_SLACK))
    else:
        head = slice(0, max(1, tail.start))
        r_head, d_head = residuals[head], distances[head]
        fitted = d_head[r_head > 0] / r_head[r_head > 0]
        constant = float(np.max(fitted)) if len(fitted) else 0.0

    envelope = constant * residuals[tail]
    d_tail = distances[tail]
    ratio = np.where(envelope > 0, d_tail / np.where(envelope > 0, envelope, 1.0),
                     np.where(d_tail > 0, np.inf, 0.0))
    tail_ratio = float(np.max(ratio))

    if not _hypothesis_met(residuals, tol):
        verdict, detail = DiagnosticVerdict.HYPOTHESIS_NOT_MET, "los residuos de la cola no bajan de tol"
    elif np.all(d_tail < tol) and violations == 0:
        verdict, detail = DiagnosticVerdict.PASS, "∥u_n - p∥ < tol en la cola"
    else:
        verdict = DiagnosticVerdict.FAIL
        detail = (f"{violations} violaciones de la cota cuantitativa" if violations
                  else f"distancia máxima en la cola {float(np.max(d_tail)):.3e} >= tol")

    report = DiagnosticReport(
        prop=DiagnosticProperty.WELLPOSEDNESS,
        verdict=verdict,
        residuals=residuals,
        distances=distances,
        tol=tol,
        tail_ratio=tail_ratio,
        k_used=k,
        envelope_constant=constant,
        bound_violations=violations,
        residual_identity_error=_residual_identity_error(spec, U, residuals),
        detail=detail,
    )
    if verbose:
        print(f"[DIAG] well-posedness: {verdict.value} ({detail}), tail_ratio = {tail_ratio:.4g}")
    return report


def check_limit_shadowing(spec: ContractionSpec, p: Vector, recipe: SequenceRecipe,
                          tol: float = DEFAULT_TAIL_TOL, verbose: bool = False) -> DiagnosticReport:
    """
    Comprueba ∥T_λ^n p - u_n∥ -> 0 iterando explícitamente la órbita de p.

    La órbita debe quedar fija: ∥T_λ^n p - p∥ <= 1e-12 + ∥p - T_λp∥ / (1 - k).
    El segundo término es la cota a priori de la órbita que parte de p
    y vale 0 si p es un punto fijo exacto.
    """
    k = _k_used(spec)
    pc = _certify(spec, p)
    nk = spec.space.norm_kind
    U = _sequence_rows(spec, pc, recipe)
    residuals = norm_rows(nk, U - _averaged_rows(spec, U))

    step = averaged_operator(spec)
    start = Vector(pc)
    orbit = np.empty_like(U)
    current = start
    drift = 0.0
    for n in range(len(U)):
        current = step(current)
        orbit[n] = current.coords
        drift = max(drift, distance(spec.space, current, start))
    drift_limit = DRIFT_ATOL + _p_residual(spec, pc) / (1.0 - k)
    distances = norm_rows(nk, orbit - U)
    d_tail = distances[_tail(len(U))]

    if not _hypothesis_met(residuals, tol):
        verdict, detail = DiagnosticVerdict.HYPOTHESIS_NOT_MET, "los residuos de la cola no bajan de tol"
    elif drift > drift_limit:
        verdict, detail = DiagnosticVerdict.FAIL, f"la órbita de p se aleja {drift:.3e} > {drift_limit:.3e}"
    elif np.all(d_tail < tol):
        verdict, detail = DiagnosticVerdict.PASS, "∥T_λ^n p - u_n∥ < tol en la cola"
    else:
        verdict, detail = DiagnosticVerdict.FAIL, f"distancia máxima en la cola {float(np.max(d_tail)):.3e} >= tol"

    report = DiagnosticReport(
        prop=DiagnosticProperty.LIMIT_SHADOWING,
        verdict=verdict,
        residuals=residuals,
        distances=distances,
        tol=tol,
        tail_ratio=float(np.max(d_tail)) / tol,
        k_used=k,
        envelope_constant=1.0,
        max_orbit_drift=drift,
        residual_identity_error=_residual_identity_error(spec, U, residuals),
        detail=detail,
    )
    if verbose:
        print(f"[DIAG] limit-shadowing: {verdict.value} ({detail}), deriva de la órbita {drift:.3e}")
    return report
