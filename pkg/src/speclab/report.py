"""Report tables rendered as CSV or structured text (JSON).

Rationals are always written exactly as ``"p/q"``.  Output carries a
provenance footer and no timestamps, so equal inputs give equal bytes.
"""
import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

FORMATS = ("csv", "json")


def render_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (tuple, list, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return "{" + ",".join(render_value(v) for v in items) + "}"
    if value is None:
        return ""
    return str(value)


@dataclass
class ReportTable:
    header: list
    rows: list = field(default_factory=list)
    footer: dict = field(default_factory=dict)
    ok: bool = True

    def add(self, *values):
        if len(values) != len(self.header):
            raise ValueError(f"row has {len(values)} values, header has {len(self.header)}")
        self.rows.append(list(values))

    def fail(self):
        self.ok = False

    def render(self, fmt="csv"):
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([render_value(v) for v in row])
        buf.write(f"# status={'PASS' if self.ok else 'FAIL'}\n")
        for key, value in self.footer.items():
            buf.write(f"# {key}={render_value(value)}\n")
        return buf.getvalue()

    def to_json(self):
        doc = {
            "header": list(self.header),
            "rows": [[render_value(v) for v in row] for row in self.rows],
            "status": "PASS" if self.ok else "FAIL",
            "footer": {k: render_value(v) for k, v in self.footer.items()},
        }
        return json.dumps(doc, indent=2) + "\n"
