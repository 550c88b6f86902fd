"""JSON documents for extended charts, rational parsing and SVG rendering of polygons."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Sequence

from .charts import ELChart, ExtendedELChart, hodge_point, is_cyclic, type_of, v_dim, validate
from .coweights import GCocharacter, IndexedInt, SuperbasicDatum, rel
from .errors import InvalidInput
from .polygons import Polygon, lattice_points

SCHEMA_VERSION = "1"
SVG_UNIT = 40
SVG_MARGIN = 20


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"not a rational number: {text!r}") from exc


def parse_vector(text: str) -> tuple:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise InvalidInput("empty vector")
    return tuple(parse_rational(p) for p in parts)


def parse_int_vector(text: str) -> tuple:
    vals = parse_vector(text)
    if any(v.denominator != 1 for v in vals):
        raise InvalidInput(f"expected integers: {text!r}")
    return tuple(int(v) for v in vals)


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ChartDocument:
    """Serialized extended chart; the optional fields are derived and re-checked on load."""

    d: int
    h: int
    slopes: tuple
    B: tuple  # ((tau, value), ...) sorted
    phi: tuple  # (((tau, value), phi), ...) over A_low, sorted
    type: tuple | None = None
    hodge: tuple | None = None
    cyclic: bool | None = None
    v_dim: int | None = None
    schema_version: str = SCHEMA_VERSION

    @classmethod
    def of(cls, ext: ExtendedELChart, derived: bool = True) -> "ChartDocument":
        A = ext.chart
        B = tuple(sorted((t, v) for t, g in enumerate(A.gens) for v in g))
        phi = tuple(sorted(((a.tau, a.value), x) for a, x in ext.phi_low.items()))
        extra = {}
        if derived:
            extra = dict(
                type=type_of(A).mu_prime.rows, hodge=hodge_point(ext).rows,
                cyclic=is_cyclic(ext), v_dim=v_dim(ext),
            )
        return cls(A.d, A.h, A.datum.slopes, B, phi, **extra)

    def to_dict(self) -> dict:
        out = {
            "schema_version": self.schema_version,
            "d": self.d,
            "h": self.h,
            "slopes": list(self.slopes),
            "B": [list(b) for b in self.B],
            "phi": [[list(a), x] for a, x in self.phi],
        }
        if self.type is not None:
            out["type"] = [list(r) for r in self.type]
        if self.hodge is not None:
            out["hodge"] = [list(r) for r in self.hodge]
        if self.cyclic is not None:
            out["cyclic"] = self.cyclic
        if self.v_dim is not None:
            out["v_dim"] = self.v_dim
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, obj: dict) -> "ChartDocument":
        if obj.get("schema_version") != SCHEMA_VERSION:
            raise InvalidInput(f"unsupported schema_version {obj.get('schema_version')!r}")
        try:
            doc = cls(
                d=int(obj["d"]), h=int(obj["h"]), slopes=tuple(int(s) for s in obj["slopes"]),
                B=tuple((int(t), int(v)) for t, v in obj["B"]),
                phi=tuple(((int(a[0]), int(a[1])), int(x)) for a, x in obj["phi"]),
                type=_rows(obj.get("type")), hodge=_rows(obj.get("hodge")),
                cyclic=obj.get("cyclic"), v_dim=obj.get("v_dim"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed chart document: {exc}") from exc
        return doc

    @classmethod
    def loads(cls, text: str) -> "ChartDocument":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"invalid JSON: {exc}") from exc
        return cls.from_dict(obj)

    def to_chart(self) -> ExtendedELChart:
        """Rebuild and re-validate the chart, including any derived fields."""
        datum = SuperbasicDatum(self.d, self.h, self.slopes)
        A = ELChart.from_B(datum, [IndexedInt(t, v) for t, v in self.B])
        if not A.is_normalized():
            raise InvalidInput("chart is not normalized")
        ext = ExtendedELChart.from_mapping(A, {IndexedInt(*a): x for a, x in self.phi})
        problems = validate(ext)
        if problems:
            raise InvalidInput("chart fails the axioms: " + "; ".join(problems[:3]))
        if self.type is not None and self != ChartDocument.of(ext):
            raise InvalidInput("derived fields disagree with the chart")
        return ext


def _rows(x):
    return None if x is None else tuple(tuple(int(v) for v in r) for r in x)


def dump_charts(exts: Iterable[ExtendedELChart], stream) -> int:
    n = 0
    for ext in exts:
        stream.write(ChartDocument.of(ext).dumps() + "\n")
        n += 1
    return n


def load_charts(stream) -> list:
    return [ChartDocument.loads(line).to_chart() for line in stream if line.strip()]


def polygon_svg(nu1: Sequence, nu2: Sequence) -> tuple:
    """SVG of P(nu1) above P(nu2) with the counted lattice points; returns (svg, points)."""
    nu1, nu2 = rel(nu1), rel(nu2)
    pts = lattice_points(nu1, nu2)
    p1, p2 = Polygon.of(nu1), Polygon.of(nu2)
    h = len(nu1)
    ys = [y for _, y in p1.breakpoints + p2.breakpoints]
    y_lo, y_hi = floor(min(ys)), ceil(max(ys))
    width = h * SVG_UNIT + 2 * SVG_MARGIN
    height = (y_hi - y_lo) * SVG_UNIT + 2 * SVG_MARGIN

    def X(x):
        return float(SVG_MARGIN + Fraction(x) * SVG_UNIT)

    def Y(y):
        return float(SVG_MARGIN + (y_hi - Fraction(y)) * SVG_UNIT)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<g id="grid" stroke="#cccccc" stroke-width="1">',
    ]
    for x in range(h + 1):
        out.append(f'<line x1="{X(x):g}" y1="{Y(y_lo):g}" x2="{X(x):g}" y2="{Y(y_hi):g}"/>')
    for y in range(y_lo, y_hi + 1):
        out.append(f'<line x1="{X(0):g}" y1="{Y(y):g}" x2="{X(h):g}" y2="{Y(y):g}"/>')
    out.append("</g>")
    for name, poly, color in (("nu1", p1, "#1f4e9c"), ("nu2", p2, "#b22222")):
        path = " ".join(f"{X(x):g},{Y(y):g}" for x, y in poly.breakpoints)
        out.append(f'<polyline id="{name}" fill="none" stroke="{color}" stroke-width="2" points="{path}"/>')
    out.append('<g id="points" fill="black">')
    for x, y in pts:
        out.append(f'<circle cx="{X(x):g}" cy="{Y(y):g}" r="4"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n", pts


def report_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=_default)


def _default(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, GCocharacter):
        return [list(r) for r in x.rows]
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def text_table(rows: list, headers: Sequence[str]) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


__all__ = [
    "ChartDocument", "SCHEMA_VERSION", "dump_charts", "format_rational", "load_charts",
    "parse_int_vector", "parse_rational", "parse_vector", "polygon_svg",
    "report_json", "text_table",
]
