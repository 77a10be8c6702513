"""
Registro de ejemplos resueltos y contraejemplos.
Incluye: ex2.3-T1, ex2.3-T2, ex2.4, ex3.6, ex3.7, ex3.8, ex3.9, rem3.3.
"""

import fnmatch
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

from .comparison import Variant, make_function
from .contraction import ContractionSpec, Interval, affine, piecewise, pointwise_multiply
from .space import DEFAULT_GRID, Vector, euclidean, grid_profile, sample_function_space, vector


class Expected(Enum):
    FIXED_POINT = "fixed-point"
    FALSIFIABLE = "falsifiable"
    DOMAIN_EXIT = "domain-exit"


@dataclass(frozen=True)
class ExampleEntry:
    """Ejemplo registrado: especificación, punto inicial y resultado esperado."""
    id: str
    spec: ContractionSpec
    u0: Vector
    expected: Expected
    expected_value: Optional[float] = None     # valor constante del punto fijo esperado
    provenance: str = ""


REAL_LINE = euclidean(1, "sup")
ALL = Interval(float("-inf"), float("inf"), False, False)


class ExampleRegistry:
    """Catálogo de ejemplos; cada constructor arma la especificación desde cero."""

    @staticmethod
    def ex2_3_t1(grid: int = DEFAULT_GRID) -> ExampleEntry:
        # T1 u = -2u en R
        spec = ContractionSpec(REAL_LINE, affine(-2.0), 5 / 4,
                               make_function("scaled-sum-st", 1 / 3, "A"), Variant.A, name="ex2.3-T1")
        return ExampleEntry("ex2.3-T1", spec, vector(REAL_LINE, [1.0]), Expected.FIXED_POINT, 0.0,
                            "T1 = -2·id, b = 5/4, f = (s+t)/3 (variante A)")

    @staticmethod
    def ex2_3_t2(grid: int = DEFAULT_GRID) -> ExampleEntry:
        # T2 u = u + 16 en [1, 2], 16 fuera
        mapping = piecewise([(Interval(1.0, 2.0), 1.0, 16.0), (ALL, 0.0, 16.0)])
        spec = ContractionSpec(REAL_LINE, mapping, 1 / 3,
                               make_function("weighted-sum", (1 / 3, 1 / 4, 1 / 4), "A'"),
                               Variant.A_PRIME, name="ex2.3-T2")
        return ExampleEntry("ex2.3-T2", spec, vector(REAL_LINE, [0.0]), Expected.FIXED_POINT, 16.0,
                            "T2 por tramos, b = 1/3, f = r/3 + s/4 + t/4 (variante A')")

    @staticmethod
    def ex2_4(grid: int = DEFAULT_GRID) -> ExampleEntry:
        # Tu = 1 + u si u >= 0, 0 si u < 0: sin punto fijo
        mapping = piecewise([(Interval(0.0, float("inf"), True, False), 1.0, 1.0),
                             (Interval(float("-inf"), 0.0, False, False), 0.0, 0.0)])
        spec = ContractionSpec(REAL_LINE, mapping, 0.0,
                               make_function("scaled-sum-st", 1 / 3, "A"), Variant.A, name="ex2.4")
        return ExampleEntry("ex2.4", spec, vector(REAL_LINE, [0.0]), Expected.FALSIFIABLE, None,
                            "no es contracción enriquecida: el par (0, 1) da lhs 1 > rhs 2/3")

    @staticmethod
    def ex3_6(grid: int = DEFAULT_GRID) -> ExampleEntry:
        space = sample_function_space(0.0, 1.0, grid)
        spec = ContractionSpec(space, affine(-2.0), 5 / 4,
                               make_function("scaled-sum-st", 1 / 3, "A"), Variant.A, name="ex3.6")
        return ExampleEntry("ex3.6", spec, grid_profile(space, "sin"), Expected.FIXED_POINT, 0.0,
                            "T = -2·id en C[0,1], b = 5/4, f = (s+t)/3; punto fijo u ≡ 0")

    @staticmethod
    def ex3_7(grid: int = DEFAULT_GRID) -> ExampleEntry:
        spec = ContractionSpec(REAL_LINE, affine(-1.0, 6.0), 1.0,
                               make_function("scaled-max-st", 1 / 6, "A"), Variant.A, name="ex3.7")
        return ExampleEntry("ex3.7", spec, vector(REAL_LINE, [100.0]), Expected.FIXED_POINT, 3.0,
                            "Tu = 6 - u, b = 1, f = max{s,t}/6; punto fijo 3")

    @staticmethod
    def ex3_8(grid: int = DEFAULT_GRID) -> ExampleEntry:
        space = sample_function_space(0.0, 0.25, grid)
        spec = ContractionSpec(space, pointwise_multiply(space.grid_array()), 1 / 4,
                               make_function("scaled-max-rst", 9 / 20, "A'"), Variant.A_PRIME,
                               name="ex3.8")
        return ExampleEntry("ex3.8", spec, Vector([1.0] * space.dim), Expected.FIXED_POINT, 0.0,
                            "(Tu)(t) = t u(t) en C[0,1/4], b = 1/4, f = 9/20 max{r,s,t}; punto fijo u ≡ 0")

    @staticmethod
    def ex3_9(grid: int = DEFAULT_GRID) -> ExampleEntry:
        spec = ContractionSpec(REAL_LINE, affine(-1.0, 2.0), 1.0,
                               make_function("scaled-sum-st", 1 / 6, "A'"), Variant.A_PRIME, name="ex3.9")
        return ExampleEntry("ex3.9", spec, vector(REAL_LINE, [-7.0]), Expected.FIXED_POINT, 1.0,
                            "Tu = 2 - u, b = 1, f = (s+t)/6; punto fijo 1")

    @staticmethod
    def rem3_3(grid: int = DEFAULT_GRID) -> ExampleEntry:
        domain = (Interval(float("-inf"), -1.0, False, True), Interval(1.0, float("inf"), True, False))
        spec = ContractionSpec(REAL_LINE, affine(-2.0), 5 / 4,
                               make_function("scaled-sum-st", 1 / 3, "A"), Variant.A,
                               domain=domain, name="rem3.3")
        return ExampleEntry("rem3.3", spec, vector(REAL_LINE, [1.0]), Expected.DOMAIN_EXIT, None,
                            "T = -2·id sobre (-inf,-1] U [1,inf): sin punto fijo, el primer iterado sale")

    @staticmethod
    def get_available_examples() -> Dict[str, str]:
        """Ids disponibles con su descripción, en orden fijo."""
        return {example_id: builder().provenance for example_id, builder in _BUILDERS.items()}

    @staticmethod
    def load_example(example_id: str, grid: int = DEFAULT_GRID) -> ExampleEntry:
        """
        Construye un ejemplo por id.

        Raises:
            ValueError: si el id no existe
        """
        if example_id not in _BUILDERS:
            available = ", ".join(_BUILDERS)
            raise ValueError(f"Ejemplo '{example_id}' no encontrado. Ejemplos disponibles: {available}")
        return _BUILDERS[example_id](grid)

    @staticmethod
    def match(pattern: Optional[str]) -> List[str]:
        """Ids que coinciden con un glob (todos si pattern es None)."""
        if pattern is None:
            return list(_BUILDERS)
        return [example_id for example_id in _BUILDERS if fnmatch.fnmatchcase(example_id, pattern)]


_BUILDERS = {
    "ex2.3-T1": ExampleRegistry.ex2_3_t1,
    "ex2.3-T2": ExampleRegistry.ex2_3_t2,
    "ex2.4": ExampleRegistry.ex2_4,
    "ex3.6": ExampleRegistry.ex3_6,
    "ex3.7": ExampleRegistry.ex3_7,
    "ex3.8": ExampleRegistry.ex3_8,
    "ex3.9": ExampleRegistry.ex3_9,
    "rem3.3": ExampleRegistry.rem3_3,
}
