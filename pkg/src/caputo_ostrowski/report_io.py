"""JSON and CSV serialization of campaign reports.

JSON layout::

    {"meta": {...}, "reports": [InequalityReport.to_dict(), ...], "summary": {...}}

No timestamps are written, so identical runs produce identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Sequence

from caputo_ostrowski.inequalities import Campaign, InequalityReport

__all__ = [
    "CSV_COLUMNS",
    "campaign_from_json",
    "campaign_to_json",
    "format_float",
    "reports_to_csv",
]

CSV_COLUMNS = (
    "theorem", "alpha", "m", "p", "q", "a", "b", "f_id", "g_id",
    "x", "lhs", "rhs", "ratio", "tol", "verdict", "error",
)


def format_float(v: float | None) -> str:
    """17 significant digits, empty for missing values."""
    return "" if v is None else f"{v:.17g}"


def campaign_to_json(campaign: Campaign, meta: dict[str, Any]) -> str:
    doc = {
        "meta": meta,
        "reports": [r.to_dict() for r in campaign.reports],
        "summary": campaign.summary,
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def campaign_from_json(text: str) -> tuple[dict[str, Any], Campaign]:
    doc = json.loads(text)
    reports = [InequalityReport.from_dict(d) for d in doc["reports"]]
    return doc["meta"], Campaign(reports, doc["summary"])


def reports_to_csv(reports: Sequence[InequalityReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        s = r.setup
        ids = list(r.function_ids) + [""] * (2 - len(r.function_ids))
        writer.writerow(
            [
                r.theorem.value,
                format_float(s.alpha if s else None),
                "" if s is None else s.m,
                format_float(s.p if s else None),
                format_float(s.q if s else None),
                format_float(r.iv.a),
                format_float(r.iv.b),
                ids[0],
                ids[1],
                format_float(r.x),
                format_float(r.lhs),
                format_float(r.rhs),
                format_float(r.ratio),
                format_float(r.tol),
                r.verdict.value,
                r.error or "",
            ]
        )
    return buf.getvalue()
