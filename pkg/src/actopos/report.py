"""Report documents: per-monoid JSON, suite JSON, and the delimited and
figure renderings written next to the suite report.

Key order is fixed at construction so identical inputs give byte-identical
JSON.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from . import __version__
from .harness import (
    HarnessBounds,
    MonoidEntry,
    PropertyProfile,
    SuiteReport,
    TheoremReport,
)
from .monoid import Monoid

SCHEMA_VERSION = 1

OUT_OF_SCOPE = [
    "infinite monoids and infinite M-sets",
    "Set-indexed (infinite) powers; finite powers only",
    "sheaf-side constructions and topological examples",
    "claims quantifying over unbounded M-set enumerations are reported"
    " as consistent-up-to-bound unless a proof-backed witness bound applies",
]


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def profile_dict(profile: PropertyProfile) -> dict:
    out = {flag: value for flag, value in sorted(profile.flags().items())}
    out["minimal_rf_generating_size"] = profile.minimal_rf_generating_size
    return out


def theorem_dict(report: TheoremReport) -> dict:
    return {
        "id": report.theorem,
        "agreement": report.agreement,
        "conditions": [
            {
                "id": c.id,
                "mode": c.mode,
                "guaranteed": c.guaranteed,
                "verdict": c.holds,
                **({"witness": _jsonable(c.witness)} if c.witness is not None else {}),
                **({"note": c.note} if c.note else {}),
            }
            for c in report.conditions
        ],
        "disagreements": list(report.disagreements),
        "unconfirmed": list(report.unconfirmed),
    }


def monoid_dict(M: Monoid) -> dict:
    return {
        "order": M.order,
        "identity": M.identity,
        "table": [list(row) for row in M.table],
    }


def report_document(
    M: Monoid,
    profile: PropertyProfile,
    theorems: list[TheoremReport],
    bounds: HarnessBounds,
) -> dict:
    return {
        "monoid": monoid_dict(M),
        "profile": profile_dict(profile),
        "theorems": [theorem_dict(t) for t in theorems],
        "bounds": bounds.as_dict(),
        "versions": {"artifact": __version__, "schema": SCHEMA_VERSION},
    }


def entry_dict(entry: MonoidEntry) -> dict:
    return {
        "canonical": entry.canonical_hex,
        "monoid": monoid_dict(entry.monoid),
        "profile": profile_dict(entry.profile),
        "theorems": [theorem_dict(t) for t in entry.reports],
        "profile_violations": list(entry.profile_violations),
        "disagreements": entry.disagreements,
    }


def suite_dict(suite: SuiteReport) -> dict:
    return {
        "preamble": {
            "scope": "finite monoids, bounded M-set enumeration",
            "out_of_scope": OUT_OF_SCOPE,
        },
        "versions": {"artifact": __version__, "schema": SCHEMA_VERSION},
        "max_order": suite.max_order,
        "bounds": suite.bounds.as_dict(),
        "monoids": [entry_dict(e) for e in suite.entries],
        "aggregate": {
            "by_order": {
                str(order): counts
                for order, counts in sorted(suite.property_counts().items())
            }
        },
        "disagreement_count": suite.disagreement_count,
    }


def suite_json(suite: SuiteReport) -> str:
    return json.dumps(suite_dict(suite), indent=2) + "\n"


def suite_csv(suite: SuiteReport) -> str:
    """One row per monoid: canonical form, order, then every profile flag."""
    buf = io.StringIO()
    if not suite.entries:
        return ""
    flags = sorted(suite.entries[0].profile.flags())
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["canonical", "order", *flags, "minimal_rf_generating_size", "disagreements"]
    )
    for e in suite.entries:
        row = [e.canonical_hex, e.monoid.order]
        row.extend(int(e.profile.flags()[f]) for f in flags)
        row.append(e.profile.minimal_rf_generating_size)
        row.append(len(e.disagreements))
        writer.writerow(row)
    return buf.getvalue()


def render_property_figure(suite: SuiteReport, path: str | Path) -> None:
    """Grouped bar chart: per order, how many monoids carry each property."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    counts = suite.property_counts()
    orders = sorted(counts)
    flags = sorted(suite.entries[0].profile.flags()) if suite.entries else []
    fig, ax = plt.subplots(figsize=(max(8, 1.2 * len(flags)), 4.5))
    width = 0.8 / max(1, len(orders))
    for i, order in enumerate(orders):
        values = [counts[order].get(f, 0) for f in flags]
        positions = [j + i * width for j in range(len(flags))]
        ax.bar(positions, values, width=width, label=f"order {order}")
    ax.set_xticks([j + 0.4 - width / 2 for j in range(len(flags))])
    ax.set_xticklabels(flags, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("monoids with property")
    ax.set_title(f"profile flags over all monoids of order <= {suite.max_order}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_suite_outputs(suite: SuiteReport, json_path: str | Path, figures: bool = True) -> list[Path]:
    """Write the JSON report plus the CSV and PNG renderings beside it."""
    json_path = Path(json_path)
    json_path.parent.mkdir(parents=True, exist_ok=True)
    json_path.write_text(suite_json(suite))
    written = [json_path]
    csv_path = json_path.with_suffix(".csv")
    csv_path.write_text(suite_csv(suite))
    written.append(csv_path)
    if figures:
        png_path = json_path.with_suffix(".png")
        render_property_figure(suite, png_path)
        written.append(png_path)
    return written
