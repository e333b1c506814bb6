"""Machine-readable reports: JSON (schema v1) and per-row CSV."""

from __future__ import annotations

import csv
import json
import math
from numbers import Integral, Real
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .bounds import BoundCertificate, summarize
from .gap import GapReport
from .hypergraph import Hypergraph, degrees, diameter, is_connected, is_linear
from .incidence import AlphaNormalReport, ConsistencyReport, WeightedIncidence
from .spectral import SpectralResult

SCHEMA = "hypereig.report/1"

BOUND_CSV_COLUMNS = ["bound_id", "subject", "actual", "bound", "slack", "applicable", "pass"]
GAP_CSV_COLUMNS = ["edge", "gap", "bound", "slack", "connected_after"]


def fmt_float(x: float) -> str:
    s = format(float(x), ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def dumps(obj, indent: int = 2) -> str:
    """JSON with every float written to 17 significant digits.

    Non-finite floats become ``null``. Lists of scalars stay on one line.
    """
    return _encode(obj, indent, 0) + "\n"


def _scalar(obj) -> Optional[str]:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, Integral):
        return str(int(obj))
    if isinstance(obj, Real):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    return None


def _encode(obj, indent, level) -> str:
    s = _scalar(obj)
    if s is not None:
        return s
    pad, inner = " " * (indent * level), " " * (indent * (level + 1))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{_scalar(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [_encode(v, indent, level + 1) for v in obj]
        if all(_scalar(v) is not None for v in obj):
            return "[" + ", ".join(parts) + "]"
        return "[\n" + ",\n".join(inner + p for p in parts) + "\n" + pad + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def input_section(H: Hypergraph) -> dict:
    connected = is_connected(H)
    return {
        "n": H.n,
        "r": H.r,
        "m": H.m,
        "linear": is_linear(H),
        "connected": connected,
        "diameter": diameter(H) if connected else None,
        "degrees": degrees(H).tolist(),
    }


def spectral_section(s: SpectralResult) -> dict:
    return {
        "rho": s.rho,
        "x": s.x.tolist(),
        "x_max": s.x_max,
        "x_min": s.x_min,
        "argmax": s.argmax,
        "argmin": s.argmin,
        "residual_inf": s.residual_inf,
        "iterations": s.iterations,
        "bracket": [s.lambda_lo, s.lambda_hi],
    }


def incidence_section(B: WeightedIncidence, alpha_report: AlphaNormalReport, cycles: ConsistencyReport) -> dict:
    return {
        "alpha": B.alpha,
        # [vertex, edge, B(vertex, edge)], edge-major
        "entries": [
            [v, e, val] for (v, e), val in sorted(B.entries.items(), key=lambda kv: kv[0][::-1])
        ],
        "identities": {
            "tolerance": alpha_report.tolerance,
            "row_sum_dev": alpha_report.row_sum_dev,
            "row_sum_vertex": alpha_report.row_sum_vertex,
            "edge_product_dev": alpha_report.edge_product_dev,
            "edge_product_edge": alpha_report.edge_product_edge,
            "spread_dev": alpha_report.spread_dev,
            "spread_edge": alpha_report.spread_edge,
            "alpha_dev": alpha_report.alpha_dev,
            "pair_product_dev": alpha_report.pair_product_dev,
            "failures": alpha_report.failures,
            "pass": alpha_report.passed,
        },
        "cycles": {
            "tolerance": cycles.tolerance,
            "total": cycles.cycles_total,
            "checked": cycles.cycles_checked,
            "max_dev": cycles.max_dev,
            "worst_cycle": cycles.worst_cycle,
            "failures": cycles.failures,
            "pass": cycles.passed,
        },
    }


def certificate_dict(c: BoundCertificate) -> dict:
    return {
        "bound_id": c.bound_id.value,
        "subject": list(c.subject),
        "direction": c.direction,
        "bound": c.bound_value,
        "actual": c.actual_value,
        "slack": c.slack,
        "ell": c.ell,
        "applicable": c.applicable,
        "reason": c.reason,
        "pass": c.passed,
    }


def bounds_section(certs: list[BoundCertificate]) -> dict:
    return {
        "summary": summarize(certs),
        "certificates": [certificate_dict(c) for c in certs],
    }


def gap_section(rep: GapReport) -> dict:
    return {
        "rho": rep.rho,
        "diameter": rep.diameter,
        "connected_deletions": rep.n_connected,
        "disconnected_deletions": rep.n_disconnected,
        "pass": rep.passed,
        "records": [
            {
                "edge_index": rec.edge_index,
                "edge": list(rec.edge),
                "rho_sub": rec.rho_sub,
                "connected_after": rec.connected_after,
                "components": rec.component_count,
                "gap": rec.gap,
                "bound": rec.bound,
                "term_connected": rec.term_connected,
                "term_disconnected": rec.term_disconnected,
                "slack": rec.slack,
                "pass": rec.passed,
                "diam_check": {
                    "applicable": rec.lemmas.applicable,
                    "diameter": rec.lemmas.diameter,
                    "bound": rec.lemmas.diameter_bound,
                    "ok": rec.lemmas.diam_ok,
                },
                "dist_sum_check": {
                    "applicable": rec.lemmas.applicable,
                    "max_sum": rec.lemmas.dist_sum,
                    "bound": rec.lemmas.dist_sum_bound,
                    "ok": rec.lemmas.dist_sum_ok,
                },
            }
            for rec in rep.records
        ],
    }


def new_report(H: Hypergraph) -> dict:
    return {"schema": SCHEMA, "version": __version__, "input": input_section(H)}


def write_json(report: dict, path) -> None:
    Path(path).write_text(dumps(report))


def write_bounds_csv(certs: list[BoundCertificate], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(BOUND_CSV_COLUMNS)
        for c in certs:
            w.writerow([
                c.bound_id.value,
                "-".join(map(str, c.subject)),
                fmt_float(c.actual_value),
                "" if c.bound_value is None else fmt_float(c.bound_value),
                "" if c.slack is None else fmt_float(c.slack),
                int(c.applicable),
                int(c.passed),
            ])


def write_gap_csv(rep: GapReport, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(GAP_CSV_COLUMNS)
        for rec in rep.records:
            w.writerow([
                " ".join(map(str, rec.edge)),
                fmt_float(rec.gap),
                fmt_float(rec.bound),
                fmt_float(rec.slack),
                int(rec.connected_after),
            ])
