"""Pruebas de desigualdades enriquecidas, verify y especializaciones clásicas."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from enriched_fixedpoint.comparison import Variant, make_function
from enriched_fixedpoint.config_loader import parse_number
from enriched_fixedpoint.contraction import (
    CertificateVerdict, ContractionSpec, Interval, affine, apply_mapping, covers_real_line,
    get_available_classics, in_domain, lhs_enriched, piecewise, pointwise_multiply, reduced_lhs, reduced_rhs,
    rhs_enriched, rhs_enriched_A, rhs_enriched_Aprime, specialize, specialize_banach_theta, verify,
)
from enriched_fixedpoint.errors import ContractViolationError, InvalidSpecError
from enriched_fixedpoint.examples_registry import ExampleRegistry
from enriched_fixedpoint.space import euclidean, vector

LINE = euclidean(1, "sup")
CONTRACTIVE_IDS = ["ex2.3-T1", "ex2.3-T2", "ex3.6", "ex3.7", "ex3.8", "ex3.9"]

coordinate = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False)


def test_interval_parse_and_contains():
    iv = Interval.parse("(-inf, -1]")
    assert iv.contains(-1.0) and iv.contains(-1e9)
    assert not iv.contains(-0.5)
    half = Interval.parse("[1/2, 3)", number=parse_number)
    assert half.lo == 0.5 and not half.contains(3.0)
    with pytest.raises(InvalidSpecError):
        Interval.parse("1, 2")


def test_covers_real_line():
    assert covers_real_line([Interval(-math.inf, 0.0, False, False), Interval(0.0, math.inf, True, False)])
    assert not covers_real_line([Interval(-math.inf, 0.0, False, False), Interval(0.0, math.inf, False, False)])
    assert not covers_real_line([Interval(1.0, 2.0)])


def test_piecewise_requires_full_cover():
    with pytest.raises(InvalidSpecError):
        piecewise([(Interval(1.0, 2.0), 1.0, 16.0)])


def test_piecewise_first_branch_wins():
    spec = ExampleRegistry.load_example("ex2.3-T2").spec
    assert apply_mapping(spec, vector(LINE, [1.5])).to_list() == [17.5]
    assert apply_mapping(spec, vector(LINE, [2.0])).to_list() == [18.0]
    assert apply_mapping(spec, vector(LINE, [16.0])).to_list() == [16.0]


def test_spec_validation():
    f = make_function("scaled-sum-st", 1 / 3, "A")
    with pytest.raises(InvalidSpecError):
        ContractionSpec(LINE, affine(-2.0), -1.0, f, Variant.A)
    with pytest.raises(InvalidSpecError):
        ContractionSpec(LINE, affine(-2.0), 1.0, f, Variant.A_PRIME)
    with pytest.raises(ContractViolationError):
        ContractionSpec(euclidean(2), piecewise([(Interval(-math.inf, math.inf, False, False), 0.0, 1.0)]),
                        1.0, f, Variant.A)


def test_inequality_requires_distinct_points():
    spec = ExampleRegistry.load_example("ex3.7").spec
    u = vector(LINE, [1.0])
    with pytest.raises(ContractViolationError):
        lhs_enriched(spec, u, u)


def test_rhs_variant_mismatch():
    spec_a = ExampleRegistry.load_example("ex3.7").spec
    spec_ap = ExampleRegistry.load_example("ex3.9").spec
    u, v = vector(LINE, [0.0]), vector(LINE, [1.0])
    with pytest.raises(ContractViolationError):
        rhs_enriched_Aprime(spec_a, u, v)
    with pytest.raises(ContractViolationError):
        rhs_enriched_A(spec_ap, u, v)
    assert rhs_enriched(spec_a, u, v) == rhs_enriched_A(spec_a, u, v)


def test_ex24_is_falsified_by_first_structured_pair():
    spec = ExampleRegistry.load_example("ex2.4").spec
    u, v = vector(LINE, [0.0]), vector(LINE, [1.0])
    assert lhs_enriched(spec, u, v) == 1.0
    assert rhs_enriched_A(spec, u, v) == pytest.approx(2 / 3)

    report = verify(spec, seed=42, n_pairs=1000)
    assert report.verdict is CertificateVerdict.FALSIFIED
    assert report.samples == 1
    assert report.witness.u.to_list() == [0.0] and report.witness.v.to_list() == [1.0]
    assert report.witness.lhs > report.witness.rhs
    # el testigo se reproduce con las operaciones públicas
    assert lhs_enriched(spec, report.witness.u, report.witness.v) == report.witness.lhs
    assert rhs_enriched(spec, report.witness.u, report.witness.v) == report.witness.rhs


@pytest.mark.parametrize("example_id", CONTRACTIVE_IDS)
def test_contractive_examples_verify_on_samples(example_id):
    spec = ExampleRegistry.load_example(example_id).spec
    report = verify(spec, seed=42, n_pairs=10_000)
    assert report.verdict is CertificateVerdict.VERIFIED
    assert report.samples == 10_000


def test_ex37_lhs_vanishes():
    spec = ExampleRegistry.load_example("ex3.7").spec
    rng = np.random.default_rng(1)
    for u, v in rng.uniform(-1e3, 1e3, size=(10_000, 2)):
        if u != v:
            assert lhs_enriched(spec, vector(LINE, [u]), vector(LINE, [v])) == 0.0


@pytest.mark.parametrize("example_id", ["ex2.3-T2", "ex3.6", "ex3.8", "ex3.9"])
def test_reduced_margin_tracks_scaled_margin(example_id):
    spec = ExampleRegistry.load_example(example_id, grid=11).spec
    report = verify(spec, seed=5, n_pairs=2000)
    assert report.verdict is CertificateVerdict.VERIFIED
    assert report.reduced_margin_min > -1e-8
    assert report.reduced_margin_min == pytest.approx(spec.lam * report.margin_min, rel=1e-6, abs=1e-8)


def test_verify_is_deterministic():
    spec = ExampleRegistry.load_example("ex2.3-T2").spec
    first = verify(spec, seed=9, n_pairs=3000).to_dict()
    second = verify(spec, seed=9, n_pairs=3000).to_dict()
    assert first == second


def test_verify_rejects_bad_sample_count():
    spec = ExampleRegistry.load_example("ex3.7").spec
    with pytest.raises(ContractViolationError):
        verify(spec, n_pairs=0)


def test_domain_membership():
    spec = ExampleRegistry.load_example("rem3.3").spec
    assert in_domain(spec, vector(LINE, [1.0]))
    assert in_domain(spec, vector(LINE, [-4.0]))
    assert not in_domain(spec, vector(LINE, [-1 / 3]))
    assert in_domain(ExampleRegistry.load_example("ex3.7").spec, vector(LINE, [0.0]))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(CONTRACTIVE_IDS[:2] + ["ex3.7", "ex3.9"]), coordinate, coordinate)
def test_reduced_form_matches_scaled_original(example_id, x, y):
    spec = ExampleRegistry.load_example(example_id).spec
    if x == y:
        return
    u, v = vector(LINE, [x]), vector(LINE, [y])
    lam = spec.lam
    slack = 1e-9 * (1.0 + abs(x) + abs(y))
    assert reduced_lhs(spec, u, v) == pytest.approx(lam * lhs_enriched(spec, u, v), abs=slack)
    assert reduced_rhs(spec, u, v) == pytest.approx(lam * rhs_enriched(spec, u, v), abs=slack)
    if lhs_enriched(spec, u, v) <= rhs_enriched(spec, u, v):
        assert reduced_lhs(spec, u, v) <= reduced_rhs(spec, u, v) + slack


LINEAR_SPECS = {
    "ex3.6": lambda: ExampleRegistry.load_example("ex3.6", grid=11).spec,
    "ex3.8": lambda: ExampleRegistry.load_example("ex3.8", grid=11).spec,
    "affine-l2": lambda: ContractionSpec(euclidean(3, "l2"), affine(-0.5), 0.5,
                                         make_function("geometric-mean", 0.9, "A"), Variant.A),
    "pointwise-l1": lambda: ContractionSpec(euclidean(3, "l1"), pointwise_multiply([0.5, -0.2, 0.1]), 1.0,
                                            make_function("weighted-sum", (1 / 3, 1 / 4, 1 / 4), "A'"),
                                            Variant.A_PRIME),
}


@pytest.mark.parametrize("name", sorted(LINEAR_SPECS))
@settings(max_examples=100, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), c=st.floats(min_value=1e-3, max_value=1e3))
def test_linear_mappings_transport_homogeneity(name, seed, c):
    spec = LINEAR_SPECS[name]()
    rng = np.random.default_rng(seed)
    xs, ys = rng.uniform(-100.0, 100.0, size=(2, spec.space.dim))
    u, v = vector(spec.space, xs), vector(spec.space, ys)
    cu, cv = vector(spec.space, c * xs), vector(spec.space, c * ys)
    slack = 1e-12 * c * (1.0 + float(np.max(np.abs(np.concatenate([xs, ys])))))
    assert lhs_enriched(spec, cu, cv) == pytest.approx(c * lhs_enriched(spec, u, v), rel=1e-12, abs=slack)
    assert rhs_enriched(spec, cu, cv) == pytest.approx(c * rhs_enriched(spec, u, v), rel=1e-12, abs=slack)


def test_specialize_classics():
    assert set(get_available_classics()) >= {"banach", "kannan", "chatterjea", "reich", "bianchini",
                                             "ciric-max", "khan", "reich-prime"}
    kannan = specialize("kannan", 0.3, b=1.0)
    assert kannan.variant is Variant.A
    assert kannan.k == pytest.approx(0.6)
    chatterjea = specialize("Chatterjea", 0.3)
    assert chatterjea.variant is Variant.A_PRIME
    assert chatterjea.k == pytest.approx(0.6)


def test_specialize_refuses_k_at_least_one():
    with pytest.raises(InvalidSpecError):
        specialize("kannan", 0.6, b=1.0)
    with pytest.raises(InvalidSpecError, match="Disponibles"):
        specialize("hardy-rogers", 0.1)
    with pytest.raises(InvalidSpecError):
        specialize("banach", 0.5, b=-1.0)


def test_banach_theta_form():
    template = specialize_banach_theta(1.5, 1.0)
    assert template.f.alpha == pytest.approx(0.75)
    assert template.k == pytest.approx(0.75)
    with pytest.raises(InvalidSpecError):
        specialize_banach_theta(2.0, 1.0)


def test_bound_template_verifies_on_six_minus_u():
    spec = specialize("kannan", 0.3, b=1.0).bind(LINE, affine(-1.0, 6.0))
    assert spec.name == "enriched-kannan"
    assert verify(spec, seed=42, n_pairs=2000).verdict is CertificateVerdict.VERIFIED
