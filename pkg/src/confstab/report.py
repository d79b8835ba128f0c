"""Deterministic report serialization (JSON and CSV).

Reports are byte-identical across runs for identical configurations: no
timestamps, no environment echoes, sorted keys, fixed separators.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .stability import StabilityCell, StabilityReport


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def group_dict(desc: tuple[int, tuple[int, ...]] | None) -> dict | None:
    if desc is None:
        return None
    free, torsion = desc
    return {"free_rank": free, "torsion": list(torsion)}


def cell_dict(c: StabilityCell) -> dict:
    k = c.key
    out = {
        "kind": k.kind,
        "n": k.n,
        "q": k.q,
        "ring": c.ring_name,
        "predicted_stable": c.predicted_stable,
        "source": group_dict(c.source),
        "target": group_dict(c.target),
        "matrix": _jsonable(c.matrix) if c.matrix is not None else None,
        "surjective": c.surjective,
        "invariants_equal": c.invariants_equal,
        "is_iso": c.is_iso,
        "skipped": c.skipped,
        "skip_reason": c.skip_reason,
    }
    if k.kind != "classical":
        out["m"] = k.m
        out["r"] = k.r
    if k.kind == "weight-piece":
        out.update({"d": k.d, "k": k.k, "l": k.l,
                    "in_wider_range": c.in_wider_range})
    return out


def stability_report_dict(report: StabilityReport, config: dict) -> dict:
    return {
        "config": _jsonable(config),
        "cells": [cell_dict(c) for c in report.cells],
        "summary": report.summary(),
    }


def dumps(obj: dict) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


CSV_FIELDS = ["kind", "n", "q", "m", "r", "d", "k", "l", "ring",
              "predicted_stable", "in_wider_range",
              "source_free_rank", "source_torsion",
              "target_free_rank", "target_torsion",
              "matrix", "surjective", "invariants_equal", "is_iso",
              "skipped", "skip_reason"]


def stability_report_csv(report: StabilityReport) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for c in report.cells:
        d = cell_dict(c)
        row = {f: "" for f in CSV_FIELDS}
        for f in ("kind", "n", "q", "ring", "predicted_stable", "surjective",
                  "invariants_equal", "is_iso", "skipped", "skip_reason"):
            row[f] = d.get(f, "")
        for f in ("m", "r", "d", "k", "l", "in_wider_range"):
            if f in d:
                row[f] = d[f]
        for side in ("source", "target"):
            g = d.get(side)
            if g is not None:
                row[f"{side}_free_rank"] = g["free_rank"]
                row[f"{side}_torsion"] = ";".join(map(str, g["torsion"]))
        if d.get("matrix") is not None:
            row["matrix"] = json.dumps(d["matrix"], separators=(",", ":"))
        writer.writerow(row)
    return buf.getvalue()


def write_report(text: str, path: str | None) -> None:
    if path is None:
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
