"""Chart export: CSV and JSON are exact data dumps, SVG is a minimal
static rendering with every value embedded as a text element so output can
be checked by string search.

Payload shapes by kind:
  line              [{"label": str, "points": [{"year": int, "value": float}]}]
  dumbbell          [{"label": str, "markers": {metric: value}}]
  grouped-bar       [{"label": str, "primary": float, "reference": float}]
  distribution-pair {"left": {"label": str, "probabilities": {...}},
                     "right": {...}}
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .errors import EmptyPayload, MalformedRow

KINDS = ("line", "dumbbell", "grouped-bar", "distribution-pair")

# marker shape per evenness axis, matching the dumbbell legend convention
MARKER_SHAPES = {"gender": "circle", "race": "triangle", "intersectional": "diamond"}

WIDTH, HEIGHT = 720, 420
MARGIN = 60


@dataclass
class ChartSpec:
    kind: str
    title: str
    payload: object
    x_label: str = ""
    y_label: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MalformedRow(f"unknown chart kind: {self.kind!r}")
        if not self.payload:
            raise EmptyPayload(f"chart {self.title!r} has no payload")

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind,
                "title": self.title,
                "x_label": self.x_label,
                "y_label": self.y_label,
                "payload": self.payload,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "ChartSpec":
        d = json.loads(text)
        return cls(d["kind"], d["title"], d["payload"], d.get("x_label", ""), d.get("y_label", ""))


def render_csv(spec: ChartSpec) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    if spec.kind == "line":
        w.writerow(["series", "year", "value"])
        for s in spec.payload:
            for p in s["points"]:
                w.writerow([s["label"], p["year"], p["value"]])
    elif spec.kind == "dumbbell":
        metrics = sorted({m for row in spec.payload for m in row["markers"]})
        w.writerow(["label"] + metrics)
        for row in spec.payload:
            w.writerow([row["label"]] + [row["markers"].get(m, "") for m in metrics])
    elif spec.kind == "grouped-bar":
        w.writerow(["label", "primary", "reference"])
        for row in spec.payload:
            w.writerow([row["label"], row["primary"], row["reference"]])
    else:
        w.writerow(["category", spec.payload["left"]["label"], spec.payload["right"]["label"]])
        left, right = spec.payload["left"], spec.payload["right"]
        for cat in left["probabilities"]:
            w.writerow([cat, left["probabilities"][cat], right["probabilities"].get(cat, 0.0)])
    return out.getvalue()


class _Svg:
    def __init__(self, width=WIDTH, height=HEIGHT):
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">'
        ]

    def text(self, x, y, s, **attrs):
        a = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        self.parts.append(f'<text x="{x:.1f}" y="{y:.1f}"{a}>{s}</text>')

    def line(self, x1, y1, x2, y2, stroke="#333", width=1):
        self.parts.append(
            f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
            f'stroke="{stroke}" stroke-width="{width}"/>'
        )

    def rect(self, x, y, w, h, fill):
        self.parts.append(
            f'<rect x="{x:.1f}" y="{y:.1f}" width="{w:.1f}" height="{h:.1f}" fill="{fill}"/>'
        )

    def circle(self, x, y, r, fill):
        self.parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{r}" fill="{fill}"/>')

    def polygon(self, pts, fill):
        coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in pts)
        self.parts.append(f'<polygon points="{coords}" fill="{fill}"/>')

    def marker(self, shape, x, y, fill, r=5):
        if shape == "circle":
            self.circle(x, y, r, fill)
        elif shape == "triangle":
            self.polygon([(x, y - r), (x - r, y + r), (x + r, y + r)], fill)
        else:  # diamond
            self.polygon([(x, y - r), (x + r, y), (x, y + r), (x - r, y)], fill)

    def finish(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


PALETTE = ["#1b6ca8", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085",
           "#2c3e50", "#7f8c8d", "#f39c12", "#2980b9", "#a93226", "#1e8449"]


def _scale(vmin, vmax, lo, hi):
    span = (vmax - vmin) or 1.0
    return lambda v: lo + (v - vmin) / span * (hi - lo)


def _render_line(spec, svg):
    years = sorted({p["year"] for s in spec.payload for p in s["points"]})
    values = [p["value"] for s in spec.payload for p in s["points"]]
    sx = _scale(min(years), max(years), MARGIN, WIDTH - MARGIN)
    sy = _scale(min(0.0, min(values)), max(values) or 1.0, HEIGHT - MARGIN, MARGIN)
    svg.line(MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN)
    svg.line(MARGIN, MARGIN, MARGIN, HEIGHT - MARGIN)
    for year in years:
        svg.text(sx(year), HEIGHT - MARGIN + 16, str(year), text_anchor="middle")
    for i, s in enumerate(spec.payload):
        color = PALETTE[i % len(PALETTE)]
        pts = sorted(s["points"], key=lambda p: p["year"])
        for a, b in zip(pts, pts[1:]):
            svg.line(sx(a["year"]), sy(a["value"]), sx(b["year"]), sy(b["value"]), color, 2)
        for p in pts:
            svg.circle(sx(p["year"]), sy(p["value"]), 3, color)
            svg.text(sx(p["year"]), sy(p["value"]) - 8, f'{p["value"]:.1f}', text_anchor="middle")
        svg.text(WIDTH - MARGIN + 4, MARGIN + 14 * i, s["label"], fill=color)


def _render_dumbbell(spec, svg):
    values = [v for row in spec.payload for v in row["markers"].values()]
    sx = _scale(0.0, max(values) or 1.0, 220, WIDTH - MARGIN)
    step = (HEIGHT - 2 * MARGIN) / max(len(spec.payload), 1)
    shapes = dict(MARKER_SHAPES)
    legend_x = 220
    for i, (metric, shape) in enumerate(shapes.items()):
        svg.marker(shape, legend_x + 110 * i, MARGIN - 24, PALETTE[i])
        svg.text(legend_x + 110 * i + 10, MARGIN - 20, metric)
    for i, row in enumerate(spec.payload):
        y = MARGIN + step * (i + 0.5)
        svg.text(10, y + 4, row["label"])
        marks = sorted(row["markers"].items(), key=lambda kv: kv[1])
        if len(marks) > 1:
            svg.line(sx(marks[0][1]), y, sx(marks[-1][1]), y, "#bbb", 2)
        for metric, value in marks:
            shape = shapes.setdefault(metric, "circle")
            color = PALETTE[list(shapes).index(metric) % len(PALETTE)]
            svg.marker(shape, sx(value), y, color)
            svg.text(sx(value), y - 8, f"{value:.3f}" if value < 1 else f"{value:.1f}",
                     text_anchor="middle")


def _render_grouped_bar(spec, svg):
    values = [max(row["primary"], row["reference"]) for row in spec.payload]
    sy = _scale(0.0, max(values) or 1.0, HEIGHT - MARGIN, MARGIN)
    step = (WIDTH - 2 * MARGIN) / max(len(spec.payload), 1)
    svg.line(MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN)
    svg.rect(WIDTH - 180, MARGIN - 30, 10, 10, "#bbb")
    svg.text(WIDTH - 166, MARGIN - 21, "reference")
    svg.rect(WIDTH - 90, MARGIN - 30, 10, 10, "#111")
    svg.text(WIDTH - 76, MARGIN - 21, "primary")
    for i, row in enumerate(spec.payload):
        x = MARGIN + step * i
        bw = step * 0.3
        # reference bar behind, primary in front (the paired-bar layout)
        svg.rect(x + step * 0.25, sy(row["reference"]), bw, HEIGHT - MARGIN - sy(row["reference"]), "#bbb")
        svg.rect(x + step * 0.4, sy(row["primary"]), bw, HEIGHT - MARGIN - sy(row["primary"]), "#111")
        svg.text(x + step * 0.5, sy(max(row["primary"], row["reference"])) - 6,
                 f'{row["primary"]:.1f}/{row["reference"]:.1f}', text_anchor="middle")
        svg.text(x + step * 0.5, HEIGHT - MARGIN + 14, row["label"],
                 text_anchor="middle", font_size="8")


def _render_distribution_pair(spec, svg):
    left, right = spec.payload["left"], spec.payload["right"]
    cats = list(left["probabilities"])
    step = (HEIGHT - 2 * MARGIN) / max(len(cats), 1)
    half = (WIDTH - 3 * MARGIN) / 2
    for panel, x0 in ((left, MARGIN), (right, 2 * MARGIN + half)):
        svg.text(x0 + half / 2, MARGIN - 10, panel["label"], text_anchor="middle")
        sx = _scale(0.0, 1.0, 0, half - 60)
        for i, cat in enumerate(cats):
            y = MARGIN + step * (i + 0.5)
            p = panel["probabilities"].get(cat, 0.0)
            svg.rect(x0, y - 5, sx(p), 10, "#1b6ca8")
            svg.text(x0 + sx(p) + 4, y + 4, f"{100 * p:.1f}% {cat}", font_size="8")


def render_svg(spec: ChartSpec) -> str:
    svg = _Svg()
    svg.text(WIDTH / 2, 20, spec.title, text_anchor="middle", font_size="14")
    if spec.x_label:
        svg.text(WIDTH / 2, HEIGHT - 8, spec.x_label, text_anchor="middle")
    if spec.y_label:
        svg.text(14, HEIGHT / 2, spec.y_label, transform=f"rotate(-90 14 {HEIGHT / 2})")
    {
        "line": _render_line,
        "dumbbell": _render_dumbbell,
        "grouped-bar": _render_grouped_bar,
        "distribution-pair": _render_distribution_pair,
    }[spec.kind](spec, svg)
    return svg.finish()


def emit_chart(spec: ChartSpec, fmt: str) -> str:
    if fmt == "json":
        return spec.to_json()
    if fmt == "csv":
        return render_csv(spec)
    if fmt == "svg":
        return render_svg(spec)
    raise MalformedRow(f"unknown chart format: {fmt!r}")
