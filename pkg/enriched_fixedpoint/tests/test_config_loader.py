"""Pruebas del parser de archivos .cfg."""
import math

import pytest

from enriched_fixedpoint.comparison import Family, Variant
from enriched_fixedpoint.config_loader import load_config, parse_config, parse_number
from enriched_fixedpoint.contraction import MappingKind
from enriched_fixedpoint.diagnostics import RecipeKind
from enriched_fixedpoint.errors import ConfigError
from enriched_fixedpoint.space import SpaceKind

MINIMAL = """
[space]
kind = euclidean
dim = 1

[mapping]
kind = affine
scale = -1
shift = 2

[comparison]
family = scaled-sum-st
params = 1/6

[contraction]
b = 1
variant = A'
"""


def test_parse_number_forms():
    assert parse_number("0.5") == 0.5
    assert parse_number("1e-12") == 1e-12
    assert parse_number("5/4") == 1.25
    assert parse_number(" -3 ") == -3.0
    assert parse_number("inf") == math.inf
    assert parse_number("-inf") == -math.inf
    with pytest.raises(ValueError):
        parse_number("abc")


def test_minimal_config_uses_defaults():
    cfg = parse_config(MINIMAL, "min.cfg")
    assert cfg.spec.variant is Variant.A_PRIME
    assert cfg.spec.b == 1.0
    assert cfg.spec.name == "min.cfg"
    assert cfg.u0.to_list() == [0.0]
    assert cfg.seed == 42
    assert cfg.samples == 10_000
    assert cfg.stop.residual_tol == 1e-12
    assert cfg.recipe.kind is RecipeKind.POWER_DECAY


def test_shipped_ex36_config(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    cfg = load_config("configs/ex3.6.cfg")
    assert cfg.spec.space.kind is SpaceKind.SAMPLED_FUNCTION
    assert cfg.spec.space.dim == 101
    assert cfg.spec.b == pytest.approx(5 / 4)
    assert cfg.spec.f.family is Family.SCALED_SUM_ST
    assert max(abs(x) for x in cfg.u0) <= 1.0
    assert cfg.recipe.exponent == 2.0
    assert cfg.diag_tol == 1e-6


def test_grid_override():
    cfg = load_config("configs/ex3.6.cfg", grid=11)
    assert cfg.spec.space.dim == 11
    assert len(cfg.u0) == 11


def test_shipped_t2_config_branches():
    cfg = load_config("configs/ex2.3-T2.cfg")
    mapping = cfg.spec.mapping
    assert mapping.kind is MappingKind.PIECEWISE_SCALAR
    assert len(mapping.branches) == 2
    assert mapping.branches[0].shift == 16.0
    assert cfg.spec.f.params == pytest.approx((1 / 3, 1 / 4, 1 / 4))


def test_shipped_ex38_config():
    cfg = load_config("configs/ex3.8.cfg")
    assert cfg.spec.mapping.kind is MappingKind.POINTWISE_MULTIPLY
    assert cfg.spec.mapping.weights[-1] == 0.25
    assert cfg.recipe.kind is RecipeKind.GEOMETRIC_DECAY
    assert cfg.stop.residual_tol == 1e-12


def test_classic_sets_family_and_variant():
    cfg = load_config("configs/kannan06.cfg")
    assert cfg.spec.f.family is Family.SCALED_SUM_ST
    assert cfg.spec.variant is Variant.A
    assert cfg.spec.f.alpha == 0.6


def test_repeated_domain_lines():
    cfg = load_config("configs/rem3.3.cfg")
    assert [str(iv) for iv in cfg.spec.domain] == ["(-inf, -1]", "[1, inf)"]


def test_missing_file():
    with pytest.raises(ConfigError, match="no encontrado"):
        load_config("configs/does-not-exist.cfg")


@pytest.mark.parametrize("text,line,field", [
    ("[nowhere]\n", 1, None),
    ("[space]\ncolour = red\n", 2, "space.colour"),
    ("kind = euclidean\n", 1, "kind"),
    ("[space]\ndim = 1\ndim = 2\n", 3, "space.dim"),
    ("[space]\ndim\n", 2, None),
    ("[space]\ndim = \n", 2, "space.dim"),
])
def test_syntax_errors_report_line_and_field(text, line, field):
    with pytest.raises(ConfigError) as info:
        parse_config(text, "bad.cfg")
    assert info.value.line == line
    assert info.value.field == field
    assert str(info.value).startswith(f"bad.cfg:{line}:")


def test_bad_number_reports_line():
    text = MINIMAL.replace("b = 1\n", "b = one\n")
    with pytest.raises(ConfigError) as info:
        parse_config(text, "bad.cfg")
    assert info.value.field == "contraction.b"
    assert info.value.line == text.splitlines().index("b = one") + 1


def test_missing_required_key():
    text = MINIMAL.replace("params = 1/6\n", "")
    with pytest.raises(ConfigError) as info:
        parse_config(text, "bad.cfg")
    assert info.value.field == "comparison.params"


def test_malformed_branch():
    text = MINIMAL.replace("kind = affine\nscale = -1\nshift = 2\n",
                           "kind = piecewise-scalar\nbranch = [1, 2] : 1\n")
    with pytest.raises(ConfigError) as info:
        parse_config(text, "bad.cfg")
    assert info.value.field == "mapping.branch"


def test_uncovered_branches_are_config_errors():
    text = MINIMAL.replace("kind = affine\nscale = -1\nshift = 2\n",
                           "kind = piecewise-scalar\nbranch = [1, 2] : 1 : 16\n")
    with pytest.raises(ConfigError, match="no cubren"):
        parse_config(text, "bad.cfg")


def test_unknown_family_is_config_error():
    text = MINIMAL.replace("family = scaled-sum-st", "family = hyperbolic")
    with pytest.raises(ConfigError) as info:
        parse_config(text, "bad.cfg")
    assert info.value.field == "comparison.params"


def test_profile_requires_sampled_space():
    text = MINIMAL + "\n[solver]\nu0 = sin\n"
    with pytest.raises(ConfigError) as info:
        parse_config(text, "bad.cfg")
    assert info.value.field == "solver.u0"
