"""CountTable: the tabular unit the CLI emits and regression tests consume.

CSV dialect is fixed: comma separator, '.' decimal point, no thousands
separators, mandatory header row. Emitted CSV must re-parse to an identical
in-memory table.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import List, Sequence


@dataclass
class CountTable:
    name: str
    columns: List[str]
    rows: List[List[str]] = field(default_factory=list)

    def add_row(self, values: Sequence) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} cells, expected {len(self.columns)}")
        self.rows.append([str(v) for v in values])

    def column(self, name: str) -> List[str]:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerows(self.rows)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, name: str, text: str) -> "CountTable":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        table = cls(name=name, columns=header)
        for row in reader:
            if row:
                table.add_row(row)
        return table

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "columns": self.columns, "rows": self.rows}, indent=2)
