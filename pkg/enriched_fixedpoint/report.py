"""
Reportes de ejecución (RunReport) y exportación de trazas.

El reporte es un documento JSON con indentación de 2 espacios y claves en
orden fijo de inserción. No contiene marcas de tiempo: dos ejecuciones con la
misma entrada y la misma semilla producen archivos idénticos byte a byte.
"""

import json
import math
import os
from typing import Any, Dict, List, Optional

import numpy as np

from . import __version__
from .comparison import AxiomReport, KCertificate, listed_membership, listed_range
from .contraction import ContractionSpec
from .solver import IterationTrace, SolveResult, observed_ratio
from .space import Vector


def _clean(value: Any) -> Any:
    """Convierte a tipos JSON: numpy -> python, inf/nan -> texto, Vector -> lista."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, Vector):
        return _clean(value.to_list())
    if isinstance(value, np.ndarray):
        return _clean(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


def _point(u: Vector, limit: int = 8) -> Dict:
    """Resumen de un vector: completo si es corto, extremos y norma sup si no."""
    coords = u.to_list()
    if len(coords) <= limit:
        return {"dim": len(coords), "coords": coords}
    return {"dim": len(coords), "first": coords[:3], "last": coords[-3:],
            "max_abs": float(np.max(np.abs(u.coords)))}


def spec_summary(spec: ContractionSpec) -> Dict:
    return {
        "name": spec.name,
        "space": spec.space.describe(),
        "mapping": spec.mapping.describe(),
        "b": spec.b,
        "lambda": spec.lam,
        "f": spec.f.describe(),
        "variant": spec.variant.value,
        "domain": [str(iv) for iv in spec.domain] if spec.domain else None,
    }


def certificate_summary(cert: KCertificate) -> Dict:
    return {
        "method": cert.method,
        "branches": dict(cert.branch_constants),
        "k": cert.k,
        "valid": cert.valid,
    }


def solve_summary(result: SolveResult) -> Dict:
    trace = result.trace
    return {
        "termination": result.termination.value,
        "iterations": result.iterations,
        "fixed_point": _point(result.fixed_point),
        "final_residual": result.final_residual,
        "k_used": result.k_used,
        "observed_ratio": observed_ratio(trace),
        "apriori_bound_at_exit": result.apriori_bound_at_exit,
        "domain_exit_at": trace.domain_exit_at,
    }


def axiom_summary(report: AxiomReport) -> Dict:
    listed = listed_range(report.function.family, report.variant)
    member = listed_membership(report.function, report.variant)
    return {
        "function": report.function.describe(),
        "variant": report.variant.value,
        "samples_used": report.samples_used,
        "seed": report.seed,
        "checks": [
            {"axiom": c.axiom, "verdict": c.verdict.value, "witness": c.witness,
             "scale": c.scale, "branch": c.branch, "failing_branches": list(c.failing_branches),
             "detail": c.detail}
            for c in report.checked_axioms
        ],
        "certificate": certificate_summary(report.certificate) if report.certificate else None,
        "listed_range": listed,
        "discrepancy": bool(member is True and not report.all_pass),
    }


class RunReport:
    """Acumula secciones de un comando y las escribe como JSON determinista."""

    def __init__(self, command: List[str], seed: int):
        self.data: Dict[str, Any] = {
            "command": list(command),
            "version": __version__,
            "seed": seed,
        }

    def add(self, key: str, payload: Any):
        self.data[key] = payload

    def to_json(self) -> str:
        return json.dumps(_clean(self.data), indent=2, ensure_ascii=False, allow_nan=False) + "\n"

    def write(self, path: str) -> str:
        folder = os.path.dirname(path)
        if folder and not os.path.exists(folder):
            os.makedirs(folder)
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(self.to_json())
        print(f"[OK] Reporte exportado: {path}")
        return path


def write_trace_csv(trace: IterationTrace, path: Optional[str]) -> Optional[str]:
    """Exporta la traza (n, step_norm, residual, ratio) a CSV."""
    if not path:
        return None
    trace.to_frame().to_csv(path, index=False)
    print(f"[OK] Traza exportada: {path}")
    return path
