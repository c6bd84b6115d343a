"""JSON cone files, quotient shorthand, and output serialization."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .mld import R_TERM, MldResult
from .orbifold import FanoConeData, QuotientChart, format_rational, parse_rational
from .toric import QuotientLattice

RATIONAL_PATTERN = r"^-?[0-9]+(/[0-9]+)?$"

CONE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["name", "r", "dim", "charts"],
    "properties": {
        "name": {"type": "string"},
        "r": {"type": "string", "pattern": RATIONAL_PATTERN},
        "dim": {"type": "integer", "minimum": 1},
        "charts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "factors"],
                "properties": {
                    "label": {"type": "string"},
                    "factors": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["order", "weights"],
                            "properties": {
                                "order": {"type": "integer", "minimum": 1},
                                "weights": {"type": "array", "items": {"type": "integer"}},
                            },
                        },
                    },
                },
            },
        },
        "ambient": {
            "type": "object",
            "required": ["generators"],
            "properties": {
                "generators": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "string", "pattern": RATIONAL_PATTERN}},
                }
            },
        },
    },
}

MLD_OUTPUT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["name", "mld", "mld_eq1", "witness", "terms", "validation"],
    "properties": {
        "name": {"type": "string"},
        "mld": {"type": "string", "pattern": RATIONAL_PATTERN},
        "mld_eq1": {"type": "string", "pattern": RATIONAL_PATTERN},
        "witness": {
            "oneOf": [
                {"type": "object", "required": ["kind"], "properties": {"kind": {"const": R_TERM}}},
                {
                    "type": "object",
                    "required": ["kind", "chart", "element"],
                    "properties": {
                        "kind": {"const": "element"},
                        "chart": {"type": "string"},
                        "element": {"type": "array", "items": {"type": "integer"}},
                    },
                },
            ]
        },
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["chart", "element", "value"],
                "properties": {
                    "chart": {"type": "string"},
                    "element": {"type": "array", "items": {"type": "integer"}},
                    "value": {"type": "string", "pattern": RATIONAL_PATTERN},
                },
            },
        },
        "validation": {"type": "string", "enum": ["PASS", "FAIL"]},
    },
}

CSV_COLUMNS = ["name", "n", "r", "mld", "ok", "equality", "smooth", "witness_chart", "witness_element"]


class SchemaError(ValueError):
    """Malformed input; ``field`` names the offending location."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise SchemaError(f"{where}{key}", "missing")
    value = obj[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise SchemaError(f"{where}{key}", f"expected integer, got {value!r}")
    if kind is not int and not isinstance(value, kind):
        raise SchemaError(f"{where}{key}", f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _rational(value, field: str) -> Fraction:
    try:
        return parse_rational(value if isinstance(value, str) else value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(field, f"not a rational: {value!r}") from exc


def cone_from_dict(obj: Any) -> FanoConeData:
    if not isinstance(obj, dict):
        raise SchemaError("<root>", "expected an object")
    name = _require(obj, "name", str, "")
    r = _rational(_require(obj, "r", (str, int), ""), "r")
    dim = _require(obj, "dim", int, "")
    charts = []
    for ci, c in enumerate(_require(obj, "charts", list, "")):
        where = f"charts[{ci}]."
        if not isinstance(c, dict):
            raise SchemaError(where[:-1], "expected an object")
        label = _require(c, "label", str, where)
        factors = []
        for fi, f in enumerate(_require(c, "factors", list, where)):
            fwhere = f"{where}factors[{fi}]."
            if not isinstance(f, dict):
                raise SchemaError(fwhere[:-1], "expected an object")
            order = _require(f, "order", int, fwhere)
            weights = _require(f, "weights", list, fwhere)
            if order < 1:
                raise SchemaError(f"{fwhere}order", "must be >= 1")
            if len(weights) != dim:
                raise SchemaError(f"{fwhere}weights", f"expected {dim} entries, got {len(weights)}")
            if any(isinstance(w, bool) or not isinstance(w, int) for w in weights):
                raise SchemaError(f"{fwhere}weights", "entries must be integers")
            factors.append((order, tuple(weights)))
        charts.append(QuotientChart(dim, tuple(factors), label))
    ambient = None
    if "ambient" in obj:
        gens = _require(obj["ambient"], "generators", list, "ambient.")
        vecs = []
        for gi, g in enumerate(gens):
            if not isinstance(g, list) or len(g) != dim:
                raise SchemaError(f"ambient.generators[{gi}]", f"expected {dim} rationals")
            vecs.append(tuple(_rational(x, f"ambient.generators[{gi}]") for x in g))
        ambient = QuotientLattice(dim, tuple(vecs))
    return FanoConeData(r, dim, tuple(charts), name, ambient=ambient)


def cone_to_dict(cone: FanoConeData) -> dict[str, Any]:
    out: dict[str, Any] = {
        "name": cone.name,
        "r": format_rational(cone.r),
        "dim": cone.dim,
        "charts": [
            {
                "label": c.label,
                "factors": [{"order": d, "weights": list(ws)} for d, ws in c.factors],
            }
            for c in cone.charts
        ],
    }
    if isinstance(cone.ambient, QuotientLattice):
        out["ambient"] = {
            "generators": [[format_rational(x) for x in g] for g in cone.ambient.extra_generators]
        }
    return out


def load_cone(path: str | Path) -> FanoConeData:
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}", exc.msg) from exc
    return cone_from_dict(obj)


def dump_cone(cone: FanoConeData) -> str:
    return json.dumps(cone_to_dict(cone), indent=2)


def parse_quotient(text: str) -> tuple[int, tuple[int, ...]]:
    """``"m:a1,a2,..."`` -> ``(m, (a1, a2, ...))``."""
    try:
        m_text, a_text = text.split(":", 1)
        m = int(m_text)
        a = tuple(int(x) for x in a_text.split(",") if x.strip())
    except ValueError as exc:
        raise SchemaError("--quotient", f"expected m:a1,a2,..., got {text!r}") from exc
    if m < 1 or not a:
        raise SchemaError("--quotient", f"expected m >= 1 and at least one weight, got {text!r}")
    return m, a


def mld_result_to_dict(name: str, eq2: MldResult, eq1: MldResult) -> dict[str, Any]:
    if eq2.witness == R_TERM:
        witness: dict[str, Any] = {"kind": R_TERM}
    else:
        witness = {"kind": "element", "chart": eq2.witness[0], "element": list(eq2.witness[1])}
    return {
        "name": name,
        "mld": format_rational(eq2.value),
        "mld_eq1": format_rational(eq1.value),
        "witness": witness,
        "terms": [
            {"chart": t.chart, "element": list(t.element), "value": format_rational(t.value)}
            for t in eq2.terms
        ],
        "validation": "PASS",
    }


def rows_to_csv(rows: Iterable[dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: str(v).lower() if isinstance(v, bool) else v for k, v in row.items()})
    return buf.getvalue()
