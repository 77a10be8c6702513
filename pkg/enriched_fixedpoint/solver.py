"""
Iteración promediada de Krasnoselskii u_{n+1} = (1 - λ) u_n + λ T u_n con λ = 1/(b+1),
reglas de parada y cotas de error a priori / de Cauchy.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np
import pandas as pd

from .comparison import analytic_k
from .contraction import ContractionSpec, _averaged_rows, in_domain
from .errors import ContractViolationError, InvalidSpecError, IterationOverflowError
from .space import Vector, _check, distance, norm_rows


DEFAULT_RESIDUAL_TOL = 1e-12
DEFAULT_STEP_TOL = 0.0
DEFAULT_MAX_ITERS = 10_000
OVERFLOW_LIMIT = 1e100


class Termination(Enum):
    RESIDUAL = "residual"
    STEP = "step"
    MAX_ITERS = "max-iters"
    DOMAIN_EXIT = "domain-exit"


@dataclass(frozen=True)
class StopRule:
    """Criterios de parada: residuo ∥u_n - T_λu_n∥, paso ∥u_{n+1} - u_n∥ (0 = desactivado) y tope."""
    residual_tol: float = DEFAULT_RESIDUAL_TOL
    step_tol: float = DEFAULT_STEP_TOL
    max_iters: int = DEFAULT_MAX_ITERS

    def __post_init__(self):
        if not self.residual_tol > 0:
            raise ContractViolationError(f"residual_tol debe ser > 0, recibido {self.residual_tol}")
        if not self.step_tol >= 0:
            raise ContractViolationError(f"step_tol debe ser >= 0, recibido {self.step_tol}")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ContractViolationError(f"max_iters debe ser un entero >= 1, recibido {self.max_iters}")


@dataclass
class IterationTrace:
    """Iterados u_0..u_N con normas de paso y residuos."""
    iterates: List[Vector] = field(default_factory=list)
    step_norms: List[float] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)
    domain_exit_at: Optional[int] = None

    @property
    def ratios(self) -> List[float]:
        """step_norms[n] / step_norms[n-1] donde el denominador no es cero."""
        return [cur / prev for prev, cur in zip(self.step_norms, self.step_norms[1:]) if prev > 0]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for n, residual in enumerate(self.residuals):
            step = self.step_norms[n] if n < len(self.step_norms) else np.nan
            prev = self.step_norms[n - 1] if 0 < n <= len(self.step_norms) else np.nan
            ratio = step / prev if n > 0 and prev > 0 else np.nan
            rows.append({"n": n, "step_norm": step, "residual": residual, "ratio": ratio})
        return pd.DataFrame(rows, columns=["n", "step_norm", "residual", "ratio"])


@dataclass
class SolveResult:
    fixed_point: Vector
    iterations: int
    termination: Termination
    k_used: float
    apriori_bound_at_exit: float
    trace: IterationTrace

    @property
    def final_residual(self) -> float:
        return self.trace.residuals[-1] if self.trace.residuals else math.nan


def lambda_from_b(b: float) -> float:
    """
    λ = 1/(b+1); vale 1 exactamente cuando b = 0 (iteración de Picard de T).

    Raises:
        InvalidSpecError: b negativo o no finito
    """
    if not math.isfinite(b) or b < 0:
        raise InvalidSpecError(f"b debe ser finito y >= 0, recibido {b}")
    return 1.0 / (b + 1.0)


def averaged_step(spec: ContractionSpec, u: Vector) -> Vector:
    """(1 - λ) u + λ Tu."""
    coords = _check(spec.space, u)
    return Vector(_averaged_rows(spec, coords[None, :])[0])


def averaged_operator(spec: ContractionSpec) -> Callable[[Vector], Vector]:
    """Devuelve T_λ como función u -> T_λu."""
    return lambda u: averaged_step(spec, u)


def apriori_bound(k: float, d0: float, n: int) -> float:
    """∥u_n - p∥ <= k^n d0 / (1 - k)."""
    if not 0.0 <= k < 1.0:
        raise InvalidSpecError(f"La cota requiere 0 <= k < 1, recibido k = {k}")
    return k ** n * d0 / (1.0 - k)


def cauchy_bound(k: float, d0: float, n: int, m: int) -> float:
    """∥u_{n+m} - u_n∥ <= k^n (1 - k^m) / (1 - k) d0."""
    if not 0.0 <= k < 1.0:
        raise InvalidSpecError(f"La cota requiere 0 <= k < 1, recibido k = {k}")
    if m < 1:
        raise ContractViolationError(f"m debe ser >= 1, recibido {m}")
    return k ** n * (1.0 - k ** m) / (1.0 - k) * d0


def iterations_needed(k: float, d0: float, tol: float) -> int:
    """Menor n con apriori_bound(k, d0, n) <= tol."""
    if tol <= 0:
        raise ContractViolationError(f"tol debe ser > 0, recibido {tol}")
    if apriori_bound(k, d0, 0) <= tol:
        return 0
    if k == 0.0:
        return 1
    n = max(0, math.ceil(math.log(tol * (1.0 - k) / d0) / math.log(k)))
    # ajuste por redondeo del logaritmo
    while n > 0 and apriori_bound(k, d0, n - 1) <= tol:
        n -= 1
    while apriori_bound(k, d0, n) > tol:
        n += 1
    return n


def observed_ratio(trace: IterationTrace) -> float:
    """Mayor cociente de pasos consecutivos (nan si la traza tiene menos de dos pasos no nulos)."""
    ratios = [r for r in trace.ratios if math.isfinite(r)]
    return max(ratios) if ratios else math.nan


def _guard(coords: np.ndarray, iteration: int) -> None:
    if not np.all(np.isfinite(coords)) or np.max(np.abs(coords)) > OVERFLOW_LIMIT:
        raise IterationOverflowError(
            f"El iterado {iteration} excede |u| <= {OVERFLOW_LIMIT:g} o no es finito", iteration)


def solve(spec: ContractionSpec, u0: Vector, stop: Optional[StopRule] = None,
          verbose: bool = False) -> SolveResult:
    """
    Itera el paso promediado hasta que se cumpla un criterio de parada.

    Args:
        spec: Especificación con KCertificate válido
        u0: Punto inicial
        stop: Reglas de parada (por defecto StopRule())
        verbose: Imprime el residuo de cada iteración

    Returns:
        SolveResult; fixed_point es el último iterado aceptado

    Raises:
        InvalidSpecError: si analytic_k da k >= 1
        IterationOverflowError: iterado no finito o con |coordenada| > 1e100
    """
    stop = stop or StopRule()
    cert = analytic_k(spec.f, spec.variant)
    if not cert.valid:
        failing = ", ".join(cert.failing_branches())
        raise InvalidSpecError(
            f"Especificación rechazada: k = {cert.k:.6g} >= 1 (ramas {failing}) para {spec.f.describe()}")
    k = cert.k
    lam = lambda_from_b(spec.b)
    nk = spec.space.norm_kind

    u = _check(spec.space, u0, "u0")
    _guard(u, 0)
    trace = IterationTrace(iterates=[Vector(u)])
    termination = Termination.MAX_ITERS
    fixed = u
    iterations = stop.max_iters

    if verbose:
        print(f"[SOLVER] λ = {lam:.6g}, k = {k:.6g}, tolerancia de residuo {stop.residual_tol:g}")

    for n in range(stop.max_iters):
        nxt = _averaged_rows(spec, u[None, :])[0]
        _guard(nxt, n + 1)
        residual = float(norm_rows(nk, u - nxt))
        trace.residuals.append(residual)
        if verbose:
            print(f"[SOLVER] iter {n:4d}: residuo = {residual:.3e}")
        if residual <= stop.residual_tol:
            termination, fixed, iterations = Termination.RESIDUAL, u, n
            break
        trace.step_norms.append(residual)
        trace.iterates.append(Vector(nxt))
        if spec.domain is not None and not in_domain(spec, trace.iterates[-1]):
            trace.domain_exit_at = n + 1
            termination, fixed, iterations = Termination.DOMAIN_EXIT, nxt, n + 1
            break
        if stop.step_tol > 0 and residual <= stop.step_tol:
            termination, fixed, iterations = Termination.STEP, nxt, n + 1
            break
        u = nxt
    else:
        fixed = u

    d0 = trace.step_norms[0] if trace.step_norms else 0.0
    result = SolveResult(
        fixed_point=Vector(fixed),
        iterations=iterations,
        termination=termination,
        k_used=k,
        apriori_bound_at_exit=apriori_bound(k, d0, iterations),
        trace=trace,
    )
    if verbose:
        print(f"[SOLVER] Terminación: {termination.value} tras {iterations} iteraciones")
    return result


def compare_solutions(spec: ContractionSpec, p: Vector, q: Vector,
                      residual_tol: float = DEFAULT_RESIDUAL_TOL) -> Tuple[float, float]:
    """Distancia entre dos soluciones y la cota de unicidad 2·residual_tol/(1 - k)."""
    k = analytic_k(spec.f, spec.variant).k
    if not k < 1.0:
        raise InvalidSpecError(f"k = {k:.6g} >= 1: la unicidad no está garantizada")
    return distance(spec.space, p, q), 2.0 * residual_tol / (1.0 - k)
