"""
Front end de línea de comandos.

Uso:
    python -m enriched_fixedpoint examples [FILTRO] [--seed 42] [--report out.json]
    python -m enriched_fixedpoint solve configs/ex3.6.cfg [--tol 1e-12] [--max-iters N] [--trace-csv t.csv]
    python -m enriched_fixedpoint verify configs/ex2.3-T2.cfg [--samples 10000]
    python -m enriched_fixedpoint axioms scaled-sum-st 0.3 A
    python -m enriched_fixedpoint diagnose configs/ex3.9.cfg [--recipe geometric --ratio 0.5]
    python -m enriched_fixedpoint specialize kannan 0.3 [--b 1]

Códigos de salida:
    0 ok, 1 propiedad falla, 2 error de uso/configuración, 3 no convergencia/desborde,
    4 especificación inválida (k >= 1), 5 especificación falsificada
"""

import argparse
import sys
import time
from dataclasses import replace
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from . import __version__
from .comparison import (VACUOUS, analytic_k, check_axioms, compare_k, listed_membership, make_function,
                         listed_range)
from .config_loader import ProblemConfig, load_config, parse_number
from .contraction import CLASSICS, specialize, verify
from .diagnostics import (DEFAULT_SEQUENCE_LENGTH, DEFAULT_TAIL_TOL, RecipeKind, SequenceRecipe,
                          check_limit_shadowing, check_wellposedness)
from .errors import (ConfigError, ContractViolationError, EnrichedError, InvalidSpecError,
                     IterationOverflowError)
from .examples_registry import ExampleEntry, ExampleRegistry, Expected
from .report import (RunReport, axiom_summary, certificate_summary, solve_summary, spec_summary,
                     write_trace_csv)
from .solver import Termination, iterations_needed, solve
from .space import DEFAULT_GRID


DEFAULT_SEED = 42
DEFAULT_AXIOM_SAMPLES = 2000
FIXED_POINT_ATOL = 1e-9

EXIT_OK = 0
EXIT_PROPERTY_FAIL = 1
EXIT_USAGE = 2
EXIT_NON_CONVERGENCE = 3
EXIT_INVALID_SPEC = 4
EXIT_FALSIFIED = 5

RECIPES = {
    "power": RecipeKind.POWER_DECAY,
    "geometric": RecipeKind.GEOMETRIC_DECAY,
    "random": RecipeKind.RANDOM_PERTURBATION,
}
OUTPUT_FLAGS = {"--report", "--trace-csv"}


def _banner(title: str):
    print("\n" + "=" * 70)
    print(title)
    print("=" * 70)


def _command_echo(argv: List[str]) -> List[str]:
    """argv sin las rutas de salida, para que el reporte no dependa de dónde se escribe."""
    echo, skip = [], False
    for token in argv:
        if skip:
            skip = False
            continue
        if token in OUTPUT_FLAGS:
            skip = True
            continue
        if any(token.startswith(flag + "=") for flag in OUTPUT_FLAGS):
            continue
        echo.append(token)
    return echo


def _print_certificate(cert, label: str = "[INFO]"):
    branches = ", ".join(
        f"{b}={v if v == VACUOUS else format(v, '.6g')}" for b, v in cert.branch_constants.items())
    print(f"{label} Ramas: {branches}")
    print(f"{label} k = {cert.k:.6g} ({'válido' if cert.valid else 'INVÁLIDO'})")


# ============================================================================
# EJEMPLOS
# ============================================================================

def run_example(entry: ExampleEntry, seed: int, samples: int) -> Dict:
    """Ejecuta verify -> solve/falsificación -> diagnósticos y compara con lo esperado."""
    spec = entry.spec
    cert = analytic_k(spec.f, spec.variant)
    outcome: Dict = {
        "id": entry.id,
        "expected": entry.expected.value,
        "expected_value": entry.expected_value,
        "provenance": entry.provenance,
        "spec": spec_summary(spec),
        "certificate": certificate_summary(cert),
    }
    cert_report = verify(spec, seed=seed, n_pairs=samples)
    outcome["verify"] = cert_report.to_dict()

    if cert_report.falsified:
        outcome["observed"] = "falsified"
        outcome["match"] = entry.expected is Expected.FALSIFIABLE
        return outcome
    if entry.expected is Expected.FALSIFIABLE:
        outcome["observed"] = cert_report.verdict.value
        outcome["match"] = False
        return outcome

    try:
        result = solve(spec, entry.u0)
    except (InvalidSpecError, IterationOverflowError) as exc:
        outcome["observed"] = f"error: {exc}"
        outcome["match"] = False
        return outcome
    outcome["solve"] = solve_summary(result)

    if entry.expected is Expected.DOMAIN_EXIT:
        outcome["observed"] = result.termination.value
        outcome["match"] = result.termination is Termination.DOMAIN_EXIT
        return outcome

    gap = float(np.max(np.abs(result.fixed_point.coords - entry.expected_value)))
    converged = result.termination is Termination.RESIDUAL and gap < FIXED_POINT_ATOL
    recipe = SequenceRecipe(RecipeKind.POWER_DECAY, exponent=2.0, length=DEFAULT_SEQUENCE_LENGTH, seed=seed)
    well = check_wellposedness(spec, result.fixed_point, recipe)
    shadow = check_limit_shadowing(spec, result.fixed_point, recipe)
    outcome["diagnostics"] = [well.to_dict(), shadow.to_dict()]
    outcome["observed"] = "fixed-point" if converged else result.termination.value
    outcome["match"] = converged and well.passed and shadow.passed
    return outcome


def cmd_examples(pattern: Optional[str], seed: int = DEFAULT_SEED, samples: int = 10_000,
                 grid: int = DEFAULT_GRID, report_path: Optional[str] = None,
                 argv: Optional[List[str]] = None) -> int:
    """Corre el registro de ejemplos; 0 si todos coinciden con lo esperado."""
    ids = ExampleRegistry.match(pattern)
    if not ids:
        print(f"[ERROR] Ningún ejemplo coincide con '{pattern}'. Disponibles:")
        for example_id, provenance in ExampleRegistry.get_available_examples().items():
            print(f"  - {example_id:9s} {provenance}")
        return EXIT_USAGE

    _banner(f"[EXAMPLES] {len(ids)} ejemplo(s), semilla {seed}, {samples} pares por verificación")
    outcomes, rows = [], []
    for example_id in ids:
        start = time.perf_counter()
        outcome = run_example(ExampleRegistry.load_example(example_id, grid), seed, samples)
        elapsed = time.perf_counter() - start
        outcomes.append(outcome)
        status = "OK" if outcome["match"] else "MISMATCH"
        print(f"[EXAMPLES] {example_id:9s} esperado={outcome['expected']:12s} "
              f"observado={outcome['observed']:20s} {status} ({elapsed:.2f}s)")
        solved = outcome.get("solve", {})
        fixed = solved.get("fixed_point", {})
        rows.append({
            "id": example_id,
            "esperado": outcome["expected"],
            "observado": outcome["observed"],
            "k": outcome["certificate"]["k"],
            "iteraciones": solved.get("iterations", "-"),
            "p": fixed.get("coords", fixed.get("max_abs", "-")) if fixed else "-",
            "coincide": outcome["match"],
        })

    print("\n" + pd.DataFrame(rows).to_string(index=False))
    all_match = all(o["match"] for o in outcomes)
    print(f"\n[{'OK' if all_match else 'ERROR'}] {sum(o['match'] for o in outcomes)}/{len(outcomes)} coinciden")

    if report_path:
        report = RunReport(_command_echo(argv or ["examples"]), seed)
        report.add("examples", outcomes)
        report.add("all_match", all_match)
        report.write(report_path)
    return EXIT_OK if all_match else EXIT_PROPERTY_FAIL


# ============================================================================
# CONFIGURACIÓN: solve / verify / diagnose
# ============================================================================

def _apply_overrides(cfg: ProblemConfig, args: argparse.Namespace) -> ProblemConfig:
    stop = cfg.stop
    if getattr(args, "tol", None) is not None:
        stop = replace(stop, residual_tol=args.tol)
    if getattr(args, "max_iters", None) is not None:
        stop = replace(stop, max_iters=args.max_iters)
    seed = args.seed if args.seed is not None else cfg.seed
    samples = args.samples if getattr(args, "samples", None) is not None else cfg.samples
    recipe = replace(cfg.recipe, seed=seed)
    return replace(cfg, stop=stop, seed=seed, samples=samples, recipe=recipe)


def _precheck(cfg: ProblemConfig, report: RunReport, verbose: bool = False) -> Optional[int]:
    """analytic_k + verify; devuelve un código de salida si hay que detenerse."""
    spec = cfg.spec
    print(f"[INFO] {spec.describe()}")
    print(f"[INFO] Semilla: {cfg.seed}")
    report.add("spec", spec_summary(spec))
    cert = analytic_k(spec.f, spec.variant)
    _print_certificate(cert)
    report.add("certificate", certificate_summary(cert))
    if not cert.valid:
        print(f"[ERROR] Especificación rechazada: k = {cert.k:.6g} >= 1")
        return EXIT_INVALID_SPEC

    cert_report = verify(spec, seed=cfg.seed, n_pairs=cfg.samples, verbose=verbose)
    report.add("verify", cert_report.to_dict())
    if cert_report.falsified:
        w = cert_report.witness
        print(f"[VERIFY] falsified tras {cert_report.samples} pares: u = {w.u.to_list()[:4]}, "
              f"v = {w.v.to_list()[:4]}, lhs = {w.lhs:.6g} > rhs = {w.rhs:.6g}")
        return EXIT_FALSIFIED
    print(f"[VERIFY] verified-on-samples ({cert_report.samples} pares, margen mínimo "
          f"{cert_report.margin_min:.3e}, forma reducida {cert_report.reduced_margin_min:.3e})")
    return None


def _finish(report: RunReport, report_path: Optional[str], code: int) -> int:
    report.add("exit_code", code)
    if report_path:
        report.write(report_path)
    return code


def cmd_solve(args: argparse.Namespace, argv: List[str]) -> int:
    """Carga, certifica, verifica y resuelve un problema desde archivo."""
    cfg = _apply_overrides(load_config(args.config, args.grid), args)
    report = RunReport(_command_echo(argv), cfg.seed)
    _banner(f"[SOLVER] {cfg.spec.name}")

    code = _precheck(cfg, report, args.verbose)
    if code is not None:
        return _finish(report, args.report, code)

    start = time.perf_counter()
    try:
        result = solve(cfg.spec, cfg.u0, cfg.stop, verbose=args.verbose)
    except IterationOverflowError as exc:
        print(f"[ERROR] {exc}")
        return _finish(report, args.report, EXIT_NON_CONVERGENCE)
    elapsed = time.perf_counter() - start

    d0 = result.trace.step_norms[0] if result.trace.step_norms else 0.0
    estimate = iterations_needed(result.k_used, d0, cfg.stop.residual_tol) if d0 > 0 else 0
    print(f"[SOLVER] Terminación: {result.termination.value} tras {result.iterations} iteraciones "
          f"(estimación a priori {estimate}, {elapsed:.3f}s)")
    print(f"[SOLVER] Residuo final {result.final_residual:.3e}, cota a priori {result.apriori_bound_at_exit:.3e}")
    p = result.fixed_point
    shown = p.to_list() if len(p) <= 6 else f"max |p| = {float(np.max(np.abs(p.coords))):.3e}"
    print(f"[OK] p = {shown}")
    report.add("solve", solve_summary(result))
    write_trace_csv(result.trace, args.trace_csv)

    if result.termination in (Termination.RESIDUAL, Termination.STEP):
        return _finish(report, args.report, EXIT_OK)
    print(f"[WARNING] Sin convergencia: {result.termination.value}")
    return _finish(report, args.report, EXIT_NON_CONVERGENCE)


def cmd_verify(args: argparse.Namespace, argv: List[str]) -> int:
    cfg = _apply_overrides(load_config(args.config, args.grid), args)
    report = RunReport(_command_echo(argv), cfg.seed)
    _banner(f"[VERIFY] {cfg.spec.name}")
    code = _precheck(cfg, report, args.verbose)
    return _finish(report, args.report, EXIT_OK if code is None else code)


def cmd_diagnose(args: argparse.Namespace, argv: List[str]) -> int:
    """Resuelve y luego ejecuta well-posedness y limit shadowing con la receta indicada."""
    cfg = _apply_overrides(load_config(args.config, args.grid), args)
    recipe = cfg.recipe
    if args.recipe:
        recipe = replace(recipe, kind=RECIPES[args.recipe])
    if args.gamma is not None:
        recipe = replace(recipe, exponent=args.gamma)
    if args.ratio is not None:
        recipe = replace(recipe, ratio=args.ratio)
    if args.length is not None:
        recipe = replace(recipe, length=args.length)
    tol = args.tol if args.tol is not None else cfg.diag_tol

    report = RunReport(_command_echo(argv), cfg.seed)
    _banner(f"[DIAG] {cfg.spec.name}")
    code = _precheck(cfg, report, args.verbose)
    if code is not None:
        return _finish(report, args.report, code)
    try:
        result = solve(cfg.spec, cfg.u0, cfg.stop)
    except IterationOverflowError as exc:
        print(f"[ERROR] {exc}")
        return _finish(report, args.report, EXIT_NON_CONVERGENCE)
    report.add("solve", solve_summary(result))
    if result.termination not in (Termination.RESIDUAL, Termination.STEP):
        print(f"[WARNING] Sin punto fijo certificado: {result.termination.value}")
        return _finish(report, args.report, EXIT_NON_CONVERGENCE)

    print(f"[DIAG] Receta {recipe.kind.value}, longitud {recipe.length}, tol {tol:g}")
    diagnostics = [
        check_wellposedness(cfg.spec, result.fixed_point, recipe, tol, verbose=True),
        check_limit_shadowing(cfg.spec, result.fixed_point, recipe, tol, verbose=True),
    ]
    report.add("diagnostics", [d.to_dict() for d in diagnostics])
    ok = all(d.passed for d in diagnostics)
    print(f"[{'OK' if ok else 'ERROR'}] Diagnósticos: {', '.join(d.verdict.value for d in diagnostics)}")
    return _finish(report, args.report, EXIT_OK if ok else EXIT_PROPERTY_FAIL)


# ============================================================================
# AXIOMAS / ESPECIALIZACIONES
# ============================================================================

def _parse_params(text: str) -> List[float]:
    try:
        return [parse_number(item) for item in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"parámetros inválidos: '{text}'", "<argv>", field="params")


def cmd_axioms(family: str, params: str, variant: str = "A", seed: int = DEFAULT_SEED,
               samples: int = DEFAULT_AXIOM_SAMPLES, report_path: Optional[str] = None,
               argv: Optional[List[str]] = None) -> int:
    """Imprime el AxiomReport; 0 si todo pasa, 1 si algún axioma falla."""
    try:
        f = make_function(family, _parse_params(params), variant)
    except InvalidSpecError as exc:
        print(f"[ERROR] {exc}")
        return EXIT_USAGE
    _banner(f"[AXIOMS] {f.describe()}, semilla {seed}, {samples} muestras")

    axiom_report = check_axioms(f, f.intended_class, seed=seed, n_samples=samples)
    analytic, numeric, gap = compare_k(f, f.intended_class, seed=seed, n_samples=samples)
    rows = [{"rama": b, "analítico": analytic.branch_constants[b], "numérico": numeric.branch_constants[b]}
            for b in analytic.branch_constants]
    print(pd.DataFrame(rows).to_string(index=False))
    print(f"[AXIOMS] k = {analytic.k:.6g}, diferencia analítico/numérico {gap:.2e}")

    for check in axiom_report.checked_axioms:
        extra = f" testigo={check.witness}" if check.witness is not None else ""
        print(f"[AXIOMS] {check.axiom:4s} {check.verdict.value:8s} {check.detail}{extra}")

    listed = listed_range(f.family, f.intended_class)
    if listed:
        member = listed_membership(f, f.intended_class)
        flag = " DISCREPANCY" if member and not axiom_report.all_pass else ""
        print(f"[INFO] Rango listado para {f.family.value} en {f.intended_class.value}: {listed}{flag}")

    if report_path:
        report = RunReport(_command_echo(argv or ["axioms"]), seed)
        report.add("axioms", axiom_summary(axiom_report))
        report.add("all_pass", axiom_report.all_pass)
        report.write(report_path)
    return EXIT_OK if axiom_report.all_pass else EXIT_PROPERTY_FAIL


def cmd_specialize(name: str, params: str, b: float = 0.0) -> int:
    if name.lower() not in CLASSICS:
        print(f"[ERROR] Contracción clásica desconocida '{name}'. Disponibles: {', '.join(CLASSICS)}")
        return EXIT_USAGE
    try:
        template = specialize(name, _parse_params(params), b)
    except InvalidSpecError as exc:
        print(f"[ERROR] {exc}")
        return EXIT_INVALID_SPEC
    print(f"[OK] {template.classic} enriquecida (b = {b:g}): f = {template.f.describe()}, "
          f"variante {template.variant.value}, k = {template.k:.6g}")
    return EXIT_OK


# ============================================================================
# FUNCIÓN PRINCIPAL
# ============================================================================

def _seed(text: str) -> int:
    value = int(text)
    if value < 0 or value >= 2 ** 64:
        raise argparse.ArgumentTypeError("la semilla debe estar en [0, 2^64)")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="enriched_fixedpoint",
                                     description="Contracciones enriquecidas A / A': certificación y punto fijo")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=None, help=f"Semilla (default: {DEFAULT_SEED})")
    common.add_argument("--report", default=None, help="Ruta del reporte JSON")
    common.add_argument("--verbose", action="store_true", help="Progreso detallado")

    problem = argparse.ArgumentParser(add_help=False)
    problem.add_argument("config", help="Archivo .cfg del problema")
    problem.add_argument("--samples", type=int, default=None, help="Pares para verify")
    problem.add_argument("--grid", type=int, default=None, help="Nodos de la grilla (espacios muestreados)")

    p = sub.add_parser("examples", parents=[common], help="Ejecuta el registro de ejemplos")
    p.add_argument("filter", nargs="?", default=None, help="Glob de ids (p. ej. 'ex3.*')")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)

    p = sub.add_parser("solve", parents=[common, problem], help="Resuelve un problema desde archivo")
    p.add_argument("--tol", type=float, default=None, help="Tolerancia de residuo")
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--trace-csv", default=None, help="Exporta la traza a CSV")

    sub.add_parser("verify", parents=[common, problem], help="Busca contraejemplos por muestreo")

    p = sub.add_parser("axioms", parents=[common], help="Verifica los axiomas de una f del catálogo")
    p.add_argument("family")
    p.add_argument("params", help="Parámetros separados por comas (p. ej. '1/3,1/4,1/4')")
    p.add_argument("variant", nargs="?", default="A", choices=["A", "A'"])
    p.add_argument("--samples", type=int, default=DEFAULT_AXIOM_SAMPLES)

    p = sub.add_parser("diagnose", parents=[common, problem], help="Well-posedness y limit shadowing")
    p.add_argument("--recipe", choices=sorted(RECIPES), default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--ratio", type=float, default=None)
    p.add_argument("--length", type=int, default=None)
    p.add_argument("--tol", type=float, default=None, help=f"Tolerancia de cola (default: {DEFAULT_TAIL_TOL:g})")
    p.add_argument("--max-iters", type=int, default=None)

    p = sub.add_parser("specialize", help="Versión enriquecida de una contracción clásica")
    p.add_argument("name", help=", ".join(CLASSICS))
    p.add_argument("params")
    p.add_argument("--b", type=float, default=0.0)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    seed = getattr(args, "seed", None)
    try:
        if args.command == "examples":
            return cmd_examples(args.filter, seed if seed is not None else DEFAULT_SEED,
                                args.samples, args.grid, args.report, argv)
        if args.command == "solve":
            return cmd_solve(args, argv)
        if args.command == "verify":
            return cmd_verify(args, argv)
        if args.command == "diagnose":
            return cmd_diagnose(args, argv)
        if args.command == "axioms":
            return cmd_axioms(args.family, args.params, args.variant,
                              seed if seed is not None else DEFAULT_SEED, args.samples, args.report, argv)
        return cmd_specialize(args.name, args.params, args.b)
    except ConfigError as exc:
        print(f"[ERROR] {exc}")
        return EXIT_USAGE
    except InvalidSpecError as exc:
        print(f"[ERROR] {exc}")
        return EXIT_INVALID_SPEC
    except IterationOverflowError as exc:
        print(f"[ERROR] {exc}")
        return EXIT_NON_CONVERGENCE
    except (ContractViolationError, EnrichedError) as exc:
        print(f"[ERROR] {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
