"""Results persistence (CSV) and the static Likert summary plot (SVG).

Both writers are deterministic byte-for-byte for a given table: no
timestamps, fixed float formatting, fixed iteration order.
"""

from __future__ import annotations

from .errors import EmptyTable, ParseError
from .harness import FOUR_POINT, TEN_POINT, GradeRow, GradeTable
from .indicators import INDICATOR_ORDER

RESULT_COLUMNS = (
    "experiment", "problem", "m", "cardinality", "scenario", "level",
    "seed", "indicator", "value", "orientation", "rank", "grade", "error",
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_results(table: GradeTable, path, metadata: dict | None = None) -> None:
    """Write a GradeTable as CSV, one row per (instance, indicator).

    The value cell is empty and the error cell populated when an
    indicator failed on that instance.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if metadata:
            for key, value in metadata.items():
                fh.write(f"# {key}={value}\n")
        fh.write(",".join(RESULT_COLUMNS) + "\n")
        for row in table.rows:
            fh.write(",".join([
                row.experiment,
                row.problem,
                str(row.m),
                str(row.cardinality),
                row.scenario,
                _fmt(row.level),
                str(row.seed),
                row.indicator,
                _fmt(row.value),
                row.orientation,
                _fmt(row.rank),
                _fmt(row.grade),
                row.error or "",
            ]) + "\n")


def read_results(path) -> GradeTable:
    """Reconstruct a GradeTable from a results CSV."""
    rows: list[GradeRow] = []
    with open(path, "r", encoding="utf-8") as fh:
        header = None
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split(",")
            if header is None:
                header = fields
                if tuple(header) != RESULT_COLUMNS:
                    raise ParseError(f"unexpected header {header}", line=lineno)
                continue
            if len(fields) != len(RESULT_COLUMNS):
                raise ParseError(
                    f"expected {len(RESULT_COLUMNS)} columns, found {len(fields)}",
                    line=lineno)
            rec = dict(zip(RESULT_COLUMNS, fields))
            try:
                level: float | int | None = None
                if rec["level"]:
                    level = (float(rec["level"]) if rec["scenario"] == "coverage"
                             else int(float(rec["level"])))
                rows.append(GradeRow(
                    experiment=rec["experiment"],
                    problem=rec["problem"],
                    m=int(rec["m"]),
                    cardinality=int(rec["cardinality"]),
                    scenario=rec["scenario"],
                    level=level,
                    seed=int(rec["seed"]),
                    indicator=rec["indicator"],
                    value=float(rec["value"]) if rec["value"] else None,
                    orientation=rec["orientation"],
                    rank=float(rec["rank"]) if rec["rank"] else None,
                    grade=float(rec["grade"]) if rec["grade"] else None,
                    error=rec["error"] or None,
                ))
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno) from exc
    if not rows:
        raise EmptyTable(f"no result rows in {path}")
    experiment = rows[0].experiment
    scale = FOUR_POINT if experiment == "pathology" else TEN_POINT
    truth = {"coverage": "gamma=1", "uniformity": "beta=100",
             "pathology": "control"}.get(experiment, "control")
    return GradeTable(experiment, scale, truth, tuple(rows))


# ---------------------------------------------------------------------------
# SVG emission


def _grade_color(grade: float) -> str:
    """Red (worst) through white to blue (best) over the 0..10 range."""
    t = min(max(grade / 10.0, 0.0), 1.0)
    if t < 0.5:
        f = t / 0.5
        r, g, b = 202 + f * (247 - 202), 0 + f * 247, 32 + f * (247 - 32)
    else:
        f = (t - 0.5) / 0.5
        r, g, b = 247 + f * (5 - 247), 247 + f * (113 - 247), 247 + f * (176 - 247)
    return f"#{int(round(r)):02x}{int(round(g)):02x}{int(round(b)):02x}"


def emit_likert_svg(table: GradeTable, path) -> None:
    """One horizontal bar per indicator, one colored box per variant.

    The number inside each box is the variant's mean grade across all
    groups of the experiment. Output bytes depend only on the table.
    """
    grades = table.aggregate_grades()
    if not grades:
        raise EmptyTable("no graded rows to plot")
    variants = table.variants()
    indicators = [c for c in INDICATOR_ORDER
                  if any(key[0] == c for key in grades)]

    left, top, cell_h, gap = 70, 58, 30, 6
    cell_w = max(54, int(760 / max(len(variants), 1)))
    width = left + cell_w * len(variants) + 20
    height = top + (cell_h + gap) * len(indicators) + 30

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left}" y="22" font-family="sans-serif" font-size="15">'
        f'{table.experiment} preferences (mean points; ground truth: '
        f'{table.truth_variant})</text>',
    ]
    for col, variant in enumerate(variants):
        x = left + col * cell_w + cell_w / 2
        parts.append(
            f'<text x="{x:g}" y="{top - 10}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle">{variant}</text>')
    for rix, code in enumerate(indicators):
        y = top + rix * (cell_h + gap)
        parts.append(
            f'<text x="{left - 8}" y="{y + cell_h / 2 + 4:g}" '
            f'font-family="sans-serif" font-size="13" '
            f'text-anchor="end">{code}</text>')
        for col, variant in enumerate(variants):
            mean = grades.get((code, variant))
            if mean is None:
                continue
            x = left + col * cell_w
            parts.append(
                f'<rect x="{x}" y="{y}" width="{cell_w}" height="{cell_h}" '
                f'fill="{_grade_color(mean)}" stroke="#555" stroke-width="0.5"/>')
            parts.append(
                f'<text x="{x + cell_w / 2:g}" y="{y + cell_h / 2 + 4:g}" '
                f'font-family="sans-serif" font-size="12" '
                f'text-anchor="middle">{mean:.1f}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
