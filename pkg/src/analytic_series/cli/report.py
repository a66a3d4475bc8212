"""Byte-deterministic JSON and CSV rendering of a :class:`Report`."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Optional

from ..verifiers import Report


def _num(x) -> Optional[float]:
    x = float(x)
    return x if math.isfinite(x) else None


def _pair(z) -> list:
    z = complex(z)
    return [_num(z.real), _num(z.imag)]


def report_dict(report: Report) -> dict:
    return {
        "suite": report.suite,
        "seed": int(report.seed),
        "config": report.config,
        "results": [
            {
                "name": r.name,
                "verdict": r.verdict.value,
                "residual": _num(r.residual),
                "tolerance": _num(r.tolerance),
                "witnesses": [{"point": _pair(w.point), "value": _pair(w.value)}
                              for w in r.witnesses],
            }
            for r in report.results
        ],
        "summary": report.summary(),
    }


def render_json(report: Report) -> str:
    # json uses repr for floats: shortest round-trip form
    return json.dumps(report_dict(report), indent=2, allow_nan=False) + "\n"


CSV_FIELDS = ("suite", "seed", "name", "verdict", "residual", "tolerance", "witness_count",
              "witness_point_re", "witness_point_im", "witness_value_re", "witness_value_im")


def _cell(x) -> str:
    return "" if x is None else repr(x)


def render_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in report_dict(report)["results"]:
        first = r["witnesses"][0] if r["witnesses"] else {"point": [None, None],
                                                          "value": [None, None]}
        writer.writerow([report.suite, report.seed, r["name"], r["verdict"],
                         _cell(r["residual"]), _cell(r["tolerance"]), len(r["witnesses"]),
                         *(_cell(v) for v in first["point"] + first["value"])])
    return buf.getvalue()


def emit_report(report: Report, fmt: str = "json", path=None) -> str:
    """Render and, when ``path`` is given, write the report (UTF-8, ``\\n`` endings)."""
    if fmt == "json":
        text = render_json(report)
    elif fmt == "csv":
        text = render_csv(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
