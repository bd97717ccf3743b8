"""Machine-readable reports.

JSON layout (``schema`` = :data:`SCHEMA_ID`)::

    {"schema": "bayeserr.report/1",
     "reports": [{"kind": "soft", "n": 10000, "point": 0.005,
                  "intervals": [{"method": "normal", "delta": 0.05,
                                 "lower": 0.0045, "upper": 0.0055}],
                  "metadata": {"seed": 0, ...},
                  "trial_series": [...]}]}

``trial_series`` is omitted when there are no per-trial values.  Numbers are
written with 6 significant digits unless full precision is requested.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

SCHEMA_ID = "bayeserr.report/1"

_NUM = {"type": "number"}
_SCALAR = {"type": ["string", "number", "integer", "boolean", "null"]}

JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "reports"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "reports": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind", "n", "point", "intervals", "metadata"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"type": "string"},
                    "n": {"type": "integer", "minimum": 0},
                    "point": _NUM,
                    "intervals": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["method", "delta", "lower", "upper"],
                            "additionalProperties": False,
                            "properties": {
                                "method": {"enum": ["hoeffding", "normal"]},
                                "delta": _NUM,
                                "lower": _NUM,
                                "upper": _NUM,
                            },
                        },
                    },
                    "metadata": {"type": "object", "additionalProperties": _SCALAR},
                    "trial_series": {"type": "array", "items": _NUM},
                },
            },
        },
    },
}


@dataclass(frozen=True)
class Report:
    kind: str
    n: int
    point: float
    intervals: tuple = ()
    metadata: dict = field(default_factory=dict)
    trial_series: tuple | None = None

    @classmethod
    def from_estimate(cls, est, trial_series=None, **metadata):
        ivs = tuple(
            {"method": iv.method.value, "delta": iv.delta, "lower": iv.lower, "upper": iv.upper}
            for iv in est.intervals
        )
        if est.class_prior is not None:
            metadata.setdefault("class_prior", est.class_prior)
        return cls(est.kind.value, est.n, est.point, ivs, metadata,
                   None if trial_series is None else tuple(float(x) for x in trial_series))

    def interval(self, method):
        for iv in self.intervals:
            if iv["method"] == method:
                return iv
        raise KeyError(method)

    def to_dict(self, precision=6):
        num = _rounder(precision)
        d = {
            "kind": self.kind,
            "n": int(self.n),
            "point": num(self.point),
            "intervals": [
                {"method": iv["method"], "delta": num(iv["delta"]),
                 "lower": num(iv["lower"]), "upper": num(iv["upper"])}
                for iv in self.intervals
            ],
            "metadata": {k: _meta(v, num) for k, v in sorted(self.metadata.items())},
        }
        if self.trial_series is not None:
            d["trial_series"] = [num(x) for x in self.trial_series]
        return d

    @classmethod
    def from_dict(cls, d):
        ts = d.get("trial_series")
        return cls(d["kind"], d["n"], d["point"], tuple(dict(iv) for iv in d["intervals"]),
                   dict(d["metadata"]), None if ts is None else tuple(ts))


def _rounder(precision):
    if precision is None:
        return float
    return lambda x: float(f"{float(x):.{precision}g}")


def _meta(v, num):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    if hasattr(v, "item"):  # numpy scalar
        return _meta(v.item(), num)
    return num(v)


def dumps_json(reports, precision=6):
    doc = {"schema": SCHEMA_ID, "reports": [r.to_dict(precision) for r in reports]}
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def loads_json(text):
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA_ID:
        raise ValueError(f"not a {SCHEMA_ID} document")
    return [Report.from_dict(d) for d in doc["reports"]]


def dumps_csv(reports, precision=6):
    """One row per report; intervals flattened to ``<method>_lower`` etc.

    Metadata keys become ``meta.<key>`` columns; trial series are left out.
    """
    rows = [r.to_dict(precision) for r in reports]
    methods = sorted({iv["method"] for d in rows for iv in d["intervals"]})
    meta_keys = sorted({k for d in rows for k in d["metadata"]})
    cols = ["kind", "n", "point"]
    for m in methods:
        cols += [f"{m}_delta", f"{m}_lower", f"{m}_upper"]
    cols += [f"meta.{k}" for k in meta_keys]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for d in rows:
        ivs = {iv["method"]: iv for iv in d["intervals"]}
        row = [d["kind"], d["n"], d["point"]]
        for m in methods:
            iv = ivs.get(m)
            row += [iv["delta"], iv["lower"], iv["upper"]] if iv else ["", "", ""]
        row += ["" if d["metadata"].get(k) is None else d["metadata"][k] for k in meta_keys]
        w.writerow(row)
    return buf.getvalue()


def dumps(reports, format="json", precision=6):
    if format == "json":
        return dumps_json(reports, precision)
    if format == "csv":
        return dumps_csv(reports, precision)
    raise ValueError(f"unknown report format {format!r}")
