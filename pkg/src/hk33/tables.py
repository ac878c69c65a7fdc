"""Assembly of classification tables over the named family grids.

Rows are ordered by (family, mu, nu), making output deterministic however
the classification work is scheduled.  TSV is the interchange format; the
JSON payload carries the full reports so every Proved/Refuted cell has its
citation alongside.
"""

from __future__ import annotations

from .criteria import classify
from .families import FamilyInstance, FamilySpecError, enumerate_family
from .model import report_payload
from .verdicts import Report

COLUMNS = (
    "label",
    "p",
    "slope_type",
    "irreducible",
    "atoroidal",
    "unique",
    "chiral",
    "sym_upper",
    "sym_lower",
    "sym_exact",
)

TABLE_NAMES = ("PT", "PI", "V", "W", "Vprime", "U")


def table_instances(name: str, start: int, stop: int, step: int = 1) -> list[FamilyInstance]:
    """Instances for a named table over an inclusive parameter range."""
    values = list(range(start, stop + 1, step))
    if name == "PT":
        return enumerate_family("T", values, values, "PT")
    if name == "PI":
        return enumerate_family("I", values, values, "PI")
    if name == "V":
        return enumerate_family("T", values, None, "V")
    if name == "W":
        return enumerate_family("T", values, values, "W")
    if name == "Vprime":
        return enumerate_family("T", values, None, "VPRIME")
    if name == "U":
        return enumerate_family("U", values, values, "U")
    raise FamilySpecError(f"unknown table {name!r}; expected one of {', '.join(TABLE_NAMES)}")


def classify_instance(instance: FamilyInstance) -> Report:
    return classify(
        instance.presentation,
        lower=instance.known_lower_bound,
        lower_citation=instance.lower_citation,
    )


def report_row(report: Report) -> dict[str, str]:
    sym = report.symmetry
    return {
        "label": report.label,
        "p": str(report.p),
        "slope_type": f"({report.slope_type.p1},{report.slope_type.p2})",
        "irreducible": report.verdicts["irreducible"].state.value,
        "atoroidal": report.verdicts["atoroidal"].state.value,
        "unique": report.verdicts["unique_annulus"].state.value,
        "chiral": report.verdicts["chiral"].state.value,
        "sym_upper": "" if sym.upper is None else sym.upper.value,
        "sym_lower": "" if sym.lower is None else sym.lower.value,
        "sym_exact": "" if sym.exact is None else sym.exact.value,
    }


def build_table(name: str, start: int, stop: int, step: int = 1) -> dict:
    instances = table_instances(name, start, stop, step)
    instances.sort(key=lambda inst: inst.label)
    reports = [classify_instance(inst) for inst in instances]
    return {
        "table": name,
        "columns": list(COLUMNS),
        "rows": [report_row(r) for r in reports],
        "reports": [report_payload(r) for r in reports],
    }


def render_tsv(payload: dict) -> str:
    lines = ["\t".join(payload["columns"])]
    for row in payload["rows"]:
        lines.append("\t".join(row[col] for col in payload["columns"]))
    return "\n".join(lines) + "\n"


def render_markdown(payload: dict) -> str:
    columns = payload["columns"]
    lines = [
        "| " + " | ".join(columns) + " |",
        "|" + "|".join(" --- " for _ in columns) + "|",
    ]
    for row in payload["rows"]:
        lines.append("| " + " | ".join(row[col] for col in columns) + " |")
    return "\n".join(lines) + "\n"
