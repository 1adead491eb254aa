"""Byte-stable CSV, JSON and SVG emitters plus their parsers.

Every emitted file embeds the complete effective parameter set (the
``meta`` mapping): CSV as leading ``# key = value`` comment lines, JSON
under the ``meta`` key.  Two runs with identical meta blocks produce
identical bytes; nothing here depends on dict iteration hazards, locale,
or platform line endings (always LF).

CSV numbers use 12 significant digits; JSON keeps full float precision
(shortest round-trip repr).  Missing values (e.g. an undefined
efficiency) are empty CSV cells and JSON nulls.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import EmptySeries, IoError, NonFiniteValue

__all__ = [
    "Table",
    "ChartSeries",
    "emit_csv",
    "emit_json",
    "emit_svg_chart",
    "parse_csv",
    "parse_json",
]


@dataclass(frozen=True)
class Table:
    """Column-named rows with an ordered meta block."""

    columns: tuple
    rows: tuple
    meta: tuple = ()   # ordered (key, value-string) pairs

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int,)):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return f"{value:.12g}"
    return str(value)


def _parse_cell(text: str):
    if text == "":
        return None
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def _write_text(path, text: str):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(path, str(exc)) from exc


def emit_csv(table: Table, path) -> None:
    lines = [f"# {k} = {v}" for k, v in table.meta]
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(_format_cell(v) for v in row))
    _write_text(path, "\n".join(lines) + "\n")


def parse_csv(path) -> Table:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise IoError(path, str(exc)) from exc
    meta = []
    columns = None
    rows = []
    for line in raw.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(" = ")
            meta.append((key, value))
        elif columns is None:
            columns = tuple(line.split(","))
        elif line:
            rows.append(tuple(_parse_cell(c) for c in line.split(",")))
    return Table(columns=columns or (), rows=tuple(rows), meta=tuple(meta))


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def emit_json(table: Table, path, artifact_version: str = "") -> None:
    doc = {
        "meta": {k: v for k, v in table.meta},
        "columns": list(table.columns),
        "rows": [[_json_safe(v) for v in row] for row in table.rows],
    }
    if artifact_version:
        doc["meta"]["artifact_version"] = artifact_version
    _write_text(path, json.dumps(doc, indent=1, allow_nan=False) + "\n")


def parse_json(path) -> Table:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise IoError(path, str(exc)) from exc
    return Table(
        columns=tuple(doc["columns"]),
        rows=tuple(tuple(row) for row in doc["rows"]),
        meta=tuple((k, v) for k, v in doc["meta"].items()),
    )


# --------------------------------------------------------------------------
# SVG line charts
# --------------------------------------------------------------------------

CANVAS = (960, 600)
_MARGIN = (70.0, 20.0, 24.0, 48.0)   # left, right, top, bottom
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass(frozen=True)
class ChartSeries:
    """One polyline with markers.

    With parity_markers set, points at even round(x) get filled circles
    and odd ones open diamonds, so even/odd alternation is readable
    straight off the chart.
    """

    label: str
    x: tuple
    y: tuple
    parity_markers: bool = False


def _nice_ticks(lo: float, hi: float, target: int = 6):
    if lo == hi:
        pad = 1.0 if lo == 0 else abs(lo) * 0.1
        lo, hi = lo - pad, hi + pad
    raw = (hi - lo) / max(target, 2)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + step * 1e-9:
        ticks.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return lo, hi, ticks


def emit_svg_chart(series, axes, path) -> None:
    """Standalone fixed-canvas chart; axes is (x_label, y_label, title)."""
    series = list(series)
    if not series or any(len(s.x) == 0 for s in series):
        raise EmptySeries("chart needs at least one non-empty series")
    for s in series:
        if len(s.x) != len(s.y):
            raise EmptySeries(f"series {s.label!r} has mismatched x/y lengths")
        for v in list(s.x) + list(s.y):
            if not math.isfinite(v):
                raise NonFiniteValue(f"series {s.label!r} contains {v}")
    x_label, y_label, title = axes
    width, height = CANVAS
    ml, mr, mt, mb = _MARGIN
    x_lo, x_hi, x_ticks = _nice_ticks(
        min(min(s.x) for s in series), max(max(s.x) for s in series)
    )
    y_lo, y_hi, y_ticks = _nice_ticks(
        min(min(s.y) for s in series), max(max(s.y) for s in series)
    )

    def px(x):
        return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr)

    def py(y):
        return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="16" text-anchor="middle" '
        f'font-family="monospace" font-size="14">{title}</text>',
    ]
    # axes frame and ticks
    out.append(
        f'<rect x="{ml:.1f}" y="{mt:.1f}" width="{width - ml - mr:.1f}" '
        f'height="{height - mt - mb:.1f}" fill="none" stroke="black"/>'
    )
    for t in x_ticks:
        x = px(t)
        out.append(f'<line x1="{x:.2f}" y1="{height - mb:.1f}" x2="{x:.2f}" '
                   f'y2="{height - mb + 5:.1f}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{height - mb + 18:.1f}" '
                   f'text-anchor="middle" font-family="monospace" '
                   f'font-size="11">{t:g}</text>')
    for t in y_ticks:
        y = py(t)
        out.append(f'<line x1="{ml - 5:.1f}" y1="{y:.2f}" x2="{ml:.1f}" '
                   f'y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{ml - 8:.1f}" y="{y + 4:.2f}" '
                   f'text-anchor="end" font-family="monospace" '
                   f'font-size="11">{t:g}</text>')
    out.append(f'<text x="{(ml + width - mr) / 2:.1f}" y="{height - 8:.1f}" '
               f'text-anchor="middle" font-family="monospace" '
               f'font-size="12">{x_label}</text>')
    out.append(f'<text x="14" y="{(mt + height - mb) / 2:.1f}" '
               f'text-anchor="middle" font-family="monospace" font-size="12" '
               f'transform="rotate(-90 14 {(mt + height - mb) / 2:.1f})">'
               f'{y_label}</text>')

    for k, s in enumerate(series):
        color = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(s.x, s.y))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5"/>')
        for x, y in zip(s.x, s.y):
            cx, cy = px(x), py(y)
            if s.parity_markers and int(round(x)) % 2 == 1:
                out.append(
                    f'<path d="M {cx:.2f} {cy - 4:.2f} L {cx + 4:.2f} '
                    f'{cy:.2f} L {cx:.2f} {cy + 4:.2f} L {cx - 4:.2f} '
                    f'{cy:.2f} Z" fill="white" stroke="{color}"/>'
                )
            else:
                out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="3" '
                           f'fill="{color}"/>')
        # legend entry
        ly = mt + 16 + 16 * k
        lx = width - mr - 150
        out.append(f'<line x1="{lx:.1f}" y1="{ly:.1f}" x2="{lx + 22:.1f}" '
                   f'y2="{ly:.1f}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 28:.1f}" y="{ly + 4:.1f}" '
                   f'font-family="monospace" font-size="11">{s.label}</text>')
    out.append("</svg>")
    _write_text(path, "\n".join(out) + "\n")
