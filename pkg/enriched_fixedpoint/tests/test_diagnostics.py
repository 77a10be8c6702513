"""Pruebas de well-posedness y limit shadowing."""
import numpy as np
import pytest

from enriched_fixedpoint.comparison import Variant, make_function
from enriched_fixedpoint.contraction import ContractionSpec, affine
from enriched_fixedpoint.diagnostics import (
    DiagnosticVerdict, RecipeKind, SequenceRecipe, check_limit_shadowing, check_wellposedness,
    make_sequence,
)
from enriched_fixedpoint.errors import ContractViolationError, InvalidSpecError, UncertifiedFixedPointError
from enriched_fixedpoint.examples_registry import ExampleRegistry
from enriched_fixedpoint.solver import StopRule, averaged_step, solve
from enriched_fixedpoint.space import Vector, constant, distance, euclidean, vector

DIAGNOSED_IDS = ["ex3.6", "ex3.7", "ex3.8", "ex3.9", "ex2.3-T2"]
APRIME_IDS = ["ex3.8", "ex3.9", "ex2.3-T2"]
RECIPES = [
    SequenceRecipe(RecipeKind.POWER_DECAY, exponent=2.0, length=10_000),
    SequenceRecipe(RecipeKind.GEOMETRIC_DECAY, ratio=0.5, length=10_000),
]


def _fixed_point(example_id):
    entry = ExampleRegistry.load_example(example_id)
    return entry.spec, solve(entry.spec, entry.u0, StopRule()).fixed_point


@pytest.mark.parametrize("recipe", RECIPES, ids=["power", "geometric"])
@pytest.mark.parametrize("example_id", DIAGNOSED_IDS)
def test_wellposedness_passes(example_id, recipe):
    spec, p = _fixed_point(example_id)
    report = check_wellposedness(spec, p, recipe, tol=1e-6)
    assert report.verdict is DiagnosticVerdict.PASS, report.detail
    assert report.bound_violations == 0
    assert report.residual_identity_error <= 1e-12


@pytest.mark.parametrize("recipe", RECIPES, ids=["power", "geometric"])
@pytest.mark.parametrize("example_id", DIAGNOSED_IDS)
def test_limit_shadowing_passes(example_id, recipe):
    spec, p = _fixed_point(example_id)
    report = check_limit_shadowing(spec, p, recipe, tol=1e-6)
    assert report.verdict is DiagnosticVerdict.PASS, report.detail
    p_residual = distance(spec.space, p, averaged_step(spec, p))
    assert report.max_orbit_drift <= 1e-12 + p_residual / (1.0 - report.k_used)


@pytest.mark.parametrize("example_id,value", [("ex3.7", 3.0), ("ex3.9", 1.0)])
def test_exact_fixed_point_orbit_does_not_move(example_id, value):
    spec = ExampleRegistry.load_example(example_id).spec
    p = vector(spec.space, [value])
    report = check_limit_shadowing(spec, p, RECIPES[1])
    assert report.max_orbit_drift == 0.0


def test_drifting_orbit_fails_shadowing():
    # Tu = 2u - 1 no es contractiva aunque la especificación declare k = 1/2
    spec = ContractionSpec(euclidean(1), affine(2.0, -1.0), 0.0, make_function("scaled-r", 0.5), Variant.A)
    p = vector(spec.space, [1.0 + 1e-11])
    recipe = SequenceRecipe(RecipeKind.POWER_DECAY, exponent=2.0, length=20)
    report = check_limit_shadowing(spec, p, recipe, tol=1e-2)
    assert report.verdict is DiagnosticVerdict.FAIL
    assert report.max_orbit_drift > 1e-6
    assert "órbita" in report.detail


@pytest.mark.parametrize("example_id", APRIME_IDS)
def test_aprime_quantitative_bound_every_index(example_id):
    spec, p = _fixed_point(example_id)
    assert spec.variant is Variant.A_PRIME
    report = check_wellposedness(spec, p, RECIPES[0])
    constant_k = 1.0 / (1.0 - report.k_used)
    assert report.envelope_constant == pytest.approx(constant_k)
    assert np.all(report.distances <= constant_k * report.residuals + 1e-10)


def test_variant_a_envelope_is_reported_only():
    spec, p = _fixed_point("ex3.6")
    report = check_wellposedness(spec, p, RECIPES[0])
    assert report.bound_violations == 0
    # ∥u - p∥ = (3/4) ∥u - T_λu∥ para T = -2·id con λ = 4/9
    assert report.envelope_constant == pytest.approx(0.75, abs=1e-3)


def test_random_perturbation_recipe():
    spec, p = _fixed_point("ex3.6")
    recipe = SequenceRecipe(RecipeKind.RANDOM_PERTURBATION, exponent=2.0, length=2000, seed=5)
    sequence = make_sequence(spec, p, recipe)
    assert len(sequence) == 2000
    first_gap = np.max(np.abs(sequence[0].coords - p.coords))
    assert first_gap == pytest.approx(1.0)
    assert check_wellposedness(spec, p, recipe).passed
    assert check_limit_shadowing(spec, p, recipe).passed


def test_slow_decay_does_not_meet_hypothesis():
    spec, p = _fixed_point("ex3.7")
    recipe = SequenceRecipe(RecipeKind.POWER_DECAY, exponent=1.0, length=1000)
    assert check_wellposedness(spec, p, recipe).verdict is DiagnosticVerdict.HYPOTHESIS_NOT_MET
    assert check_limit_shadowing(spec, p, recipe).verdict is DiagnosticVerdict.HYPOTHESIS_NOT_MET


def test_zero_amplitude_gives_constant_sequence():
    spec, p = _fixed_point("ex3.9")
    recipe = SequenceRecipe(amplitude=0.0, length=100)
    assert all(u == p for u in make_sequence(spec, p, recipe))
    assert check_wellposedness(spec, p, recipe).passed


def test_uncertified_point_is_rejected():
    spec = ExampleRegistry.load_example("ex3.6", grid=11).spec
    with pytest.raises(UncertifiedFixedPointError):
        make_sequence(spec, constant(spec.space, 1.0), RECIPES[0])
    with pytest.raises(UncertifiedFixedPointError):
        check_wellposedness(spec, constant(spec.space, 1.0), RECIPES[0])


def test_invalid_spec_is_rejected():
    line = euclidean(1, "sup")
    spec = ContractionSpec(line, affine(-1.0, 6.0), 1.0, make_function("scaled-sum-st", 0.6), Variant.A)
    with pytest.raises(InvalidSpecError):
        check_limit_shadowing(spec, vector(line, [3.0]), RECIPES[0])


def test_recipe_validation():
    with pytest.raises(ContractViolationError):
        SequenceRecipe(RecipeKind.GEOMETRIC_DECAY, ratio=1.5)
    with pytest.raises(ContractViolationError):
        SequenceRecipe(exponent=0.0)
    with pytest.raises(ContractViolationError):
        SequenceRecipe(length=0)
    spec, p = _fixed_point("ex3.7")
    with pytest.raises(ContractViolationError):
        make_sequence(spec, p, SequenceRecipe(direction=Vector([2.0])))


def test_report_dict_fields():
    spec, p = _fixed_point("ex3.9")
    data = check_limit_shadowing(spec, p, RECIPES[1]).to_dict()
    assert data["property"] == "limit-shadowing"
    assert data["verdict"] == "pass"
    assert data["length"] == 10_000
    assert set(data) >= {"tol", "final_residual", "max_tail_distance", "tail_ratio", "max_orbit_drift"}
