"""
Catálogo de funciones de comparación f: R+^3 -> R+ para las clases A y A'.

Implementa:
  - evaluate: fórmula de cada familia
  - analytic_k / numeric_k: constantes de contracción por rama y k global
  - check_axioms_A / check_axioms_Aprime: verificación muestreada de los axiomas

Ramas (desigualdad cuyo supremo factible r/s define la constante):
  A2-srs : r <= f(s, r, s)
  A2-rss : r <= f(r, s, s)      (A'2-rss es la misma desigualdad)
  A'2-ssr: r <= f(s, s, r)
  A'5    : r <= f(s, 0, r + s)
  A'6-ok : r <= f(r, r, r)      (debe forzar r = 0)

Una rama que sólo admite r = 0 se reporta como "vacuous"; una rama sin
cota se reporta como inf.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import ContractViolationError, InvalidSpecError


VACUOUS = "vacuous"

SAMPLE_RANGE = (1e-6, 1e3)
SCALE_RANGE = (1e-3, 1e3)
HOMOGENEITY_RTOL = 1e-12
AGREEMENT_TOL = 1e-6
BISECTION_STEPS = 200
DOUBLING_STEPS = 30          # 2^30 ~ 1e9: por encima la rama se considera no acotada


class Family(Enum):
    """Familias del catálogo."""
    SCALED_R = "scaled-r"                 # α r
    SCALED_SUM_ST = "scaled-sum-st"       # α (s + t)
    SCALED_SUM_RST = "scaled-sum-rst"     # α (r + s + t)
    SCALED_MAX_ST = "scaled-max-st"       # α max{s, t}
    SCALED_MAX_RST = "scaled-max-rst"     # α max{r, s, t}
    WEIGHTED_SUM = "weighted-sum"         # α1 r + α2 s + α3 t
    GEOMETRIC_MEAN = "geometric-mean"     # α sqrt(s t)


class Variant(Enum):
    """Variante de contracción enriquecida (clase de f)."""
    A = "A"
    A_PRIME = "A'"


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"


REQUIRED_BRANCHES = {
    Variant.A: ["A2-srs", "A2-rss"],
    Variant.A_PRIME: ["A'2-rss", "A'2-ssr", "A'5", "A'6-ok"],
}

# argumentos de f en función de (r, s) para cada rama
BRANCH_ARGS: Dict[str, Callable] = {
    "A2-srs": lambda r, s: (s, r, s),
    "A2-rss": lambda r, s: (r, s, s),
    "A'2-rss": lambda r, s: (r, s, s),
    "A'2-ssr": lambda r, s: (s, s, r),
    "A'5": lambda r, s: (s, 0.0 * r, r + s),
    "A'6-ok": lambda r, s: (r, r, r),
}

PARAM_COUNT = {family: 1 for family in Family}
PARAM_COUNT[Family.WEIGHTED_SUM] = 3


def _as_family(family: Union[str, Family]) -> Family:
    try:
        return family if isinstance(family, Family) else Family(family)
    except ValueError:
        available = ", ".join(f.value for f in Family)
        raise InvalidSpecError(f"Familia desconocida: '{family}'. Familias disponibles: {available}")


def _as_variant(variant: Union[str, Variant]) -> Variant:
    try:
        return variant if isinstance(variant, Variant) else Variant(variant)
    except ValueError:
        raise InvalidSpecError(f"Variante desconocida: '{variant}'. Use 'A' o \"A'\"")


@dataclass(frozen=True)
class ComparisonFunction:
    """f parametrizada del catálogo, etiquetada con su clase prevista."""
    family: Family
    params: Tuple[float, ...]
    intended_class: Variant = Variant.A

    def __post_init__(self):
        object.__setattr__(self, "family", _as_family(self.family))
        object.__setattr__(self, "intended_class", _as_variant(self.intended_class))
        params = tuple(float(p) for p in self.params)
        expected = PARAM_COUNT[self.family]
        if len(params) != expected:
            raise InvalidSpecError(
                f"{self.family.value} espera {expected} parámetro(s), recibidos {len(params)}")
        if any(not math.isfinite(p) or p < 0 for p in params):
            raise InvalidSpecError(f"Parámetros deben ser finitos y >= 0: {params}")
        object.__setattr__(self, "params", params)

    @property
    def alpha(self) -> float:
        return self.params[0]

    def describe(self) -> str:
        p = ", ".join(f"{x:.6g}" for x in self.params)
        return f"{self.family.value}({p}) [{self.intended_class.value}]"

    def __call__(self, r, s, t):
        return evaluate(self, r, s, t)


def make_function(family: Union[str, Family],
                  params: Union[float, Sequence[float]],
                  intended_class: Union[str, Variant] = Variant.A) -> ComparisonFunction:
    """Construye una ComparisonFunction validando número y signo de parámetros."""
    if isinstance(params, (int, float)):
        params = (float(params),)
    return ComparisonFunction(_as_family(family), tuple(params), _as_variant(intended_class))


# ----------------------------------------------------------------------------
# Evaluación
# ----------------------------------------------------------------------------

def _raw_eval(f: ComparisonFunction, r, s, t):
    """Fórmula de la familia sobre escalares o arreglos numpy (sin validación)."""
    fam = f.family
    if fam is Family.SCALED_R:
        return f.alpha * r
    if fam is Family.SCALED_SUM_ST:
        return f.alpha * (s + t)
    if fam is Family.SCALED_SUM_RST:
        return f.alpha * (r + s + t)
    if fam is Family.SCALED_MAX_ST:
        return f.alpha * np.maximum(s, t)
    if fam is Family.SCALED_MAX_RST:
        return f.alpha * np.maximum(np.maximum(r, s), t)
    if fam is Family.WEIGHTED_SUM:
        a1, a2, a3 = f.params
        return a1 * r + a2 * s + a3 * t
    if fam is Family.GEOMETRIC_MEAN:
        return f.alpha * np.sqrt(s * t)
    raise InvalidSpecError(f"Familia desconocida: {fam}")


def evaluate(f: ComparisonFunction, r: float, s: float, t: float) -> float:
    """
    Evalúa f(r, s, t).

    Raises:
        ContractViolationError: si algún argumento es negativo o no finito
    """
    for name, x in (("r", r), ("s", s), ("t", t)):
        if not math.isfinite(x) or x < 0:
            raise ContractViolationError(f"Argumento {name} = {x} debe ser finito y >= 0")
    return float(_raw_eval(f, float(r), float(s), float(t)))


def evaluate_many(f: ComparisonFunction, r: np.ndarray, s: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Evaluación vectorizada (los argumentos ya vienen de normas, no se validan)."""
    return np.asarray(_raw_eval(f, np.asarray(r, float), np.asarray(s, float), np.asarray(t, float)),
                      dtype=float)


# ----------------------------------------------------------------------------
# Constantes de rama
# ----------------------------------------------------------------------------

@dataclass
class KCertificate:
    """Constantes por rama y k global extraídos de f."""
    variant: Variant
    branch_constants: Dict[str, Union[float, str]]
    k: float
    valid: bool
    method: str = "analytic"

    def constant(self, branch: str) -> float:
        """Constante numérica de una rama ('vacuous' cuenta como 0)."""
        value = self.branch_constants[branch]
        return 0.0 if value == VACUOUS else float(value)

    def failing_branches(self) -> List[str]:
        return [b for b in self.branch_constants if self.constant(b) >= 1.0]


def _branch_form(f: ComparisonFunction, branch: str) -> Tuple[str, float, float]:
    """
    Reescribe la rama como una de tres formas en r (con s = 1):
      linear: r <= a r + c
      max   : r <= max(a r, c)
      sqrt  : r <= c sqrt(r)
    """
    fam, p = f.family, f.params
    if branch == "A'6-ok":
        # f(r, r, r) = f(1, 1, 1) r por homogeneidad
        return "linear", float(_raw_eval(f, 1.0, 1.0, 1.0)), 0.0
    if fam is Family.SCALED_R:
        a = p[0]
        return ("linear", a, 0.0) if branch in ("A2-rss", "A'2-rss") else ("linear", 0.0, a)
    if fam is Family.SCALED_SUM_ST:
        a = p[0]
        if branch in ("A2-rss", "A'2-rss"):
            return "linear", 0.0, 2.0 * a
        return "linear", a, a
    if fam is Family.SCALED_SUM_RST:
        a = p[0]
        return "linear", a, 2.0 * a
    if fam is Family.SCALED_MAX_ST:
        a = p[0]
        if branch in ("A2-rss", "A'2-rss"):
            return "linear", 0.0, a
        if branch == "A'5":
            return "linear", a, a
        return "max", a, a
    if fam is Family.SCALED_MAX_RST:
        a = p[0]
        if branch == "A'5":
            return "linear", a, a
        return "max", a, a
    if fam is Family.WEIGHTED_SUM:
        a1, a2, a3 = p
        return {
            "A2-srs": ("linear", a2, a1 + a3),
            "A2-rss": ("linear", a1, a2 + a3),
            "A'2-rss": ("linear", a1, a2 + a3),
            "A'2-ssr": ("linear", a3, a1 + a2),
            "A'5": ("linear", a3, a1 + a3),
        }[branch]
    if fam is Family.GEOMETRIC_MEAN:
        a = p[0]
        if branch in ("A2-rss", "A'2-rss"):
            return "linear", 0.0, a
        if branch == "A'5":
            return "linear", 0.0, 0.0
        return "sqrt", 0.0, a
    raise InvalidSpecError(f"Familia desconocida: {fam}")


def _solve_form(form: str, a: float, c: float) -> float:
    if form == "linear":
        return math.inf if a >= 1.0 else c / (1.0 - a)
    if form == "max":
        return math.inf if a >= 1.0 else c
    return c * c


def _certificate(variant: Variant, constants: Dict[str, Union[float, str]], method: str) -> KCertificate:
    values = [0.0 if v == VACUOUS else float(v) for v in constants.values()]
    k = max(values) if values else 0.0
    return KCertificate(variant=variant, branch_constants=constants, k=k,
                        valid=bool(0.0 <= k < 1.0), method=method)


def analytic_k(f: ComparisonFunction, variant: Union[str, Variant]) -> KCertificate:
    """
    Constantes de rama en forma cerrada y k = máximo sobre las ramas de la variante.

    Args:
        f: Función del catálogo
        variant: 'A' o "A'"

    Returns:
        KCertificate con valid = (k < 1)
    """
    variant = _as_variant(variant)
    constants: Dict[str, Union[float, str]] = {}
    for branch in REQUIRED_BRANCHES[variant]:
        value = _solve_form(*_branch_form(f, branch))
        constants[branch] = VACUOUS if value == 0.0 else value
    return _certificate(variant, constants, "analytic")


def _log_uniform(rng: np.random.Generator, lo: float, hi: float, size) -> np.ndarray:
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size=size))


def _sup_feasible_ratio(f: ComparisonFunction, branch: str, s: np.ndarray) -> np.ndarray:
    """Supremo de r/s con r <= f(args(r, s)), por bisección vectorizada sobre las muestras s."""
    args = BRANCH_ARGS[branch]

    def feasible(r):
        return r <= evaluate_many(f, *args(r, s))

    hi = s.copy()
    for _ in range(DOUBLING_STEPS):
        grow = feasible(hi)
        if not np.any(grow):
            break
        hi = np.where(grow, hi * 2.0, hi)
    unbounded = feasible(hi)

    lo = np.zeros_like(s)
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        ok = feasible(mid)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    ratio = lo / s
    ratio[unbounded] = math.inf
    return ratio


def numeric_k(f: ComparisonFunction, variant: Union[str, Variant],
              seed: int = 42, n_samples: int = 1000) -> KCertificate:
    """
    Oráculo independiente de analytic_k: para cada rama muestrea s log-uniforme en
    [1e-6, 1e3] y busca por bisección el mayor r factible; reporta sup r/s.
    Determinista dado (seed, n_samples).
    """
    if int(n_samples) != n_samples or n_samples < 1:
        raise ContractViolationError(f"n_samples debe ser >= 1, recibido {n_samples}")
    variant = _as_variant(variant)
    rng = np.random.default_rng(seed)
    s = _log_uniform(rng, *SAMPLE_RANGE, size=int(n_samples))
    constants: Dict[str, Union[float, str]] = {}
    for branch in REQUIRED_BRANCHES[variant]:
        sup = float(np.max(_sup_feasible_ratio(f, branch, s)))
        constants[branch] = VACUOUS if sup == 0.0 else sup
    return _certificate(variant, constants, "numeric")


def compare_k(f: ComparisonFunction, variant: Union[str, Variant],
              seed: int = 42, n_samples: int = 1000) -> Tuple[KCertificate, KCertificate, float]:
    """Devuelve (analítico, numérico, máxima diferencia absoluta entre ramas finitas)."""
    analytic = analytic_k(f, variant)
    numeric = numeric_k(f, variant, seed, n_samples)
    gap = 0.0
    for branch in analytic.branch_constants:
        a, n = analytic.constant(branch), numeric.constant(branch)
        if math.isinf(a) and math.isinf(n):
            continue
        gap = max(gap, abs(a - n))
    return analytic, numeric, gap


# ----------------------------------------------------------------------------
# Axiomas
# ----------------------------------------------------------------------------

@dataclass
class AxiomCheck:
    """Veredicto de un axioma; un fallo lleva un testigo reproducible."""
    axiom: str
    verdict: Verdict
    witness: Optional[Tuple[float, float, float]] = None
    scale: Optional[float] = None           # λ para A3, t1 para A'4
    branch: Optional[str] = None
    failing_branches: Tuple[str, ...] = ()
    detail: str = ""


@dataclass
class AxiomReport:
    function: ComparisonFunction
    variant: Variant
    checked_axioms: List[AxiomCheck] = field(default_factory=list)
    samples_used: int = 0
    seed: int = 42
    certificate: Optional[KCertificate] = None

    @property
    def all_pass(self) -> bool:
        return all(c.verdict is not Verdict.FAIL for c in self.checked_axioms)

    def failures(self) -> List[AxiomCheck]:
        return [c for c in self.checked_axioms if c.verdict is Verdict.FAIL]

    def get(self, axiom: str) -> AxiomCheck:
        for check in self.checked_axioms:
            if check.axiom == axiom:
                return check
        raise KeyError(axiom)


def _sample_triples(rng: np.random.Generator, n_samples: int) -> np.ndarray:
    """n tríos log-uniformes más las 8 esquinas {0, 1}^3."""
    corners = np.array([[a, b, c] for a in (0.0, 1.0) for b in (0.0, 1.0) for c in (0.0, 1.0)])
    random = _log_uniform(rng, *SAMPLE_RANGE, size=(n_samples, 3))
    return np.vstack([corners, random])


def _continuity_modulus(f: ComparisonFunction, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Cota |f(x) - f(y)| <= ω(x, y) por familia."""
    if f.family is Family.GEOMETRIC_MEAN:
        return f.alpha * np.sqrt(np.abs(x[:, 1] * x[:, 2] - y[:, 1] * y[:, 2]))
    lipschitz = max(f.params)
    return lipschitz * np.sum(np.abs(x - y), axis=1)


def _check_continuity(f: ComparisonFunction, axiom: str, triples: np.ndarray,
                      rng: np.random.Generator) -> AxiomCheck:
    step = 1e-7 * (1.0 + triples) * rng.uniform(0.0, 1.0, size=triples.shape)
    moved = triples + step
    fx = evaluate_many(f, *triples.T)
    fy = evaluate_many(f, *moved.T)
    slack = 1e-12 * np.maximum(1.0, np.abs(fx))
    bad = np.abs(fx - fy) > _continuity_modulus(f, triples, moved) + slack
    if np.any(bad):
        i = int(np.argmax(bad))
        return AxiomCheck(axiom, Verdict.FAIL, witness=tuple(triples[i].tolist()),
                          detail=f"salto {abs(fx[i] - fy[i]):.3e} hacia {moved[i].tolist()}")
    return AxiomCheck(axiom, Verdict.PASS, detail="módulo de continuidad por familia respetado")


def _check_homogeneity(f: ComparisonFunction, axiom: str, triples: np.ndarray,
                       rng: np.random.Generator) -> AxiomCheck:
    lam = _log_uniform(rng, *SCALE_RANGE, size=len(triples))
    left = lam * evaluate_many(f, *triples.T)
    right = evaluate_many(f, *(lam[:, None] * triples).T)
    bad = left > right + HOMOGENEITY_RTOL * np.maximum(1.0, np.abs(right))
    if np.any(bad):
        i = int(np.argmax(bad))
        return AxiomCheck(axiom, Verdict.FAIL, witness=tuple(triples[i].tolist()), scale=float(lam[i]),
                          detail=f"λf = {left[i]:.6g} > f(λ·) = {right[i]:.6g}")
    return AxiomCheck(axiom, Verdict.PASS, detail="λ f(r,s,t) <= f(λr,λs,λt) en todas las muestras")


def _check_branches(f: ComparisonFunction, axiom: str, branches: List[str],
                    analytic: KCertificate, numeric: KCertificate) -> AxiomCheck:
    consts = {b: analytic.branch_constants[b] for b in branches}
    summary = ", ".join(f"{b}={v if v == VACUOUS else format(v, '.6g')}" for b, v in consts.items())
    failing = tuple(b for b in branches if analytic.constant(b) >= 1.0)
    if failing:
        return AxiomCheck(axiom, Verdict.FAIL, witness=(1.0, 1.0, 0.0), branch=failing[0],
                          failing_branches=failing,
                          detail=f"ramas sin k < 1: {', '.join(failing)} ({summary})")
    for b in branches:
        a, n = analytic.constant(b), numeric.constant(b)
        if abs(a - n) > AGREEMENT_TOL:
            return AxiomCheck(axiom, Verdict.FAIL, witness=(n, 1.0, 0.0), branch=b, failing_branches=(b,),
                              detail=f"analítico {a:.9g} y numérico {n:.9g} no coinciden en {b}")
    if all(consts[b] == VACUOUS for b in branches):
        return AxiomCheck(axiom, Verdict.VACUOUS, detail=summary)
    return AxiomCheck(axiom, Verdict.PASS, detail=summary)


def _check_monotone_t(f: ComparisonFunction, triples: np.ndarray, rng: np.random.Generator) -> AxiomCheck:
    t1 = triples[:, 2] + _log_uniform(rng, *SAMPLE_RANGE, size=len(triples))
    low = evaluate_many(f, *triples.T)
    high = evaluate_many(f, triples[:, 0], triples[:, 1], t1)
    bad = low > high + 1e-12 * np.maximum(1.0, np.abs(high))
    if np.any(bad):
        i = int(np.argmax(bad))
        return AxiomCheck("A'4", Verdict.FAIL, witness=tuple(triples[i].tolist()), scale=float(t1[i]),
                          detail="f decrece al aumentar t")
    return AxiomCheck("A'4", Verdict.PASS, detail="f no decreciente en t")


def _check_a6(f: ComparisonFunction, rng: np.random.Generator, n_samples: int) -> AxiomCheck:
    r = np.concatenate([[1.0], _log_uniform(rng, *SAMPLE_RANGE, size=n_samples)])
    bad = evaluate_many(f, r, r, r) >= r
    if np.any(bad):
        i = int(np.argmax(bad))
        return AxiomCheck("A'6", Verdict.FAIL, witness=(float(r[i]),) * 3, branch="A'6-ok",
                          detail=f"f(r,r,r) >= r con r = {r[i]:.6g}")
    return AxiomCheck("A'6", Verdict.PASS, detail="f(r,r,r) < r para todo r > 0 muestreado")


def witness_holds(f: ComparisonFunction, check: AxiomCheck) -> bool:
    """Reevalúa el testigo de un fallo; True si la violación se reproduce."""
    if check.verdict is not Verdict.FAIL or check.witness is None:
        return False
    r, s, t = check.witness
    if check.axiom in ("A3", "A'3"):
        lam = check.scale
        return lam * evaluate(f, r, s, t) > evaluate(f, lam * r, lam * s, lam * t) * (1 + HOMOGENEITY_RTOL)
    if check.axiom == "A'4":
        return evaluate(f, r, s, t) > evaluate(f, r, s, check.scale)
    if check.branch is not None:
        x, y, z = BRANCH_ARGS[check.branch](r, s)
        # premisa de la rama con r >= s > 0: ningún k < 1 acota r/s
        return r <= evaluate(f, x, y, z) and r >= s > 0
    return False


def _axiom_report(f: ComparisonFunction, variant: Variant, seed: int, n_samples: int) -> AxiomReport:
    if int(n_samples) != n_samples or n_samples < 1:
        raise ContractViolationError(f"n_samples debe ser >= 1, recibido {n_samples}")
    rng = np.random.default_rng(seed)
    triples = _sample_triples(rng, int(n_samples))
    analytic = analytic_k(f, variant)
    numeric = numeric_k(f, variant, seed=seed, n_samples=int(n_samples))
    prefix = "A" if variant is Variant.A else "A'"

    checks = [_check_continuity(f, f"{prefix}1", triples, rng)]
    if variant is Variant.A:
        checks.append(_check_branches(f, "A2", ["A2-srs", "A2-rss"], analytic, numeric))
        checks.append(_check_homogeneity(f, "A3", triples, rng))
    else:
        checks.append(_check_branches(f, "A'2", ["A'2-rss", "A'2-ssr"], analytic, numeric))
        checks.append(_check_homogeneity(f, "A'3", triples, rng))
        checks.append(_check_monotone_t(f, triples, rng))
        checks.append(_check_branches(f, "A'5", ["A'5"], analytic, numeric))
        checks.append(_check_a6(f, rng, int(n_samples)))
    return AxiomReport(function=f, variant=variant, checked_axioms=checks,
                       samples_used=len(triples), seed=seed, certificate=analytic)


def check_axioms_A(f: ComparisonFunction, seed: int = 42, n_samples: int = 2000) -> AxiomReport:
    """
    Verifica (A1)-(A3) por muestreo: continuidad con módulo por familia,
    ramas de (A2) vía analytic_k/numeric_k y homogeneidad con λ en [1e-3, 1e3].
    Los fallos son veredictos, no excepciones.
    """
    return _axiom_report(f, Variant.A, seed, n_samples)


def check_axioms_Aprime(f: ComparisonFunction, seed: int = 42, n_samples: int = 2000) -> AxiomReport:
    """Igual que check_axioms_A más (A'4) monotonía en t, (A'5) y (A'6)."""
    return _axiom_report(f, Variant.A_PRIME, seed, n_samples)


def check_axioms(f: ComparisonFunction, variant: Union[str, Variant],
                 seed: int = 42, n_samples: int = 2000) -> AxiomReport:
    variant = _as_variant(variant)
    if variant is Variant.A:
        return check_axioms_A(f, seed, n_samples)
    return check_axioms_Aprime(f, seed, n_samples)


# ----------------------------------------------------------------------------
# Rangos listados por la fuente (sólo informativos)
# ----------------------------------------------------------------------------

_LISTED_RANGES = {
    (Family.SCALED_R, Variant.A): ("0 <= α < 1", lambda p: p[0] < 1),
    (Family.SCALED_SUM_ST, Variant.A): ("0 <= α < 1/2", lambda p: p[0] < 0.5),
    (Family.SCALED_MAX_ST, Variant.A): ("0 <= α < 1", lambda p: p[0] < 1),
    (Family.SCALED_MAX_RST, Variant.A): ("0 <= α < 1", lambda p: p[0] < 1),
    (Family.WEIGHTED_SUM, Variant.A): ("0 <= αi < 1, α1+α2+α3 < 1", lambda p: sum(p) < 1),
    (Family.GEOMETRIC_MEAN, Variant.A): ("0 <= α < 1", lambda p: p[0] < 1),
    (Family.SCALED_SUM_ST, Variant.A_PRIME): ("0 <= α < 1/2", lambda p: p[0] < 0.5),
    (Family.SCALED_SUM_RST, Variant.A_PRIME): ("0 <= α < 1", lambda p: p[0] < 1),
    (Family.SCALED_MAX_ST, Variant.A_PRIME): ("0 <= α < 1", lambda p: p[0] < 1),
    (Family.WEIGHTED_SUM, Variant.A_PRIME): ("0 <= αi < 1, α1+α2+α3 < 1", lambda p: sum(p) < 1),
}


def listed_range(family: Union[str, Family], variant: Union[str, Variant]) -> Optional[str]:
    """Rango que la literatura lista para la familia en esa clase, o None."""
    entry = _LISTED_RANGES.get((_as_family(family), _as_variant(variant)))
    return entry[0] if entry else None


def listed_membership(f: ComparisonFunction, variant: Union[str, Variant]) -> Optional[bool]:
    """True si los parámetros caen en el rango listado; None si la familia no está listada."""
    entry = _LISTED_RANGES.get((f.family, _as_variant(variant)))
    return entry[1](f.params) if entry else None
