"""Versioned, key-sorted JSON reports.

Floats are written with 17 significant digits so every double survives a
round trip exactly; timing lives in its own top-level field so that two runs
of the same command can be compared byte for byte without it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

SCHEMA_VERSION = "ghzq-report/1"


def _encode(value, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite float {value!r} is not valid JSON")
        text = format(value, ".17g")
        if "." not in text and "e" not in text:
            text += ".0"
        return text
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {_encode(value[k], indent, level + 1)}"
            for k in sorted(value, key=str)
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(value, indent: int = 2) -> str:
    return _encode(value, indent, 0) + "\n"


@dataclass
class ReportDocument:
    command: str
    config: dict
    body: dict
    timing: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "schema_version": self.schema_version,
            "command": self.command,
            "config": self.config,
            "conventions": {
                "state_index": "mixed-radix, party 1 most significant digit",
                "outcomes": "exponent m in Z_D for eigenvalue omega**m, omega = exp(2*pi*i/D)",
            },
            **self.body,
        }
        if include_timing:
            out["timing"] = self.timing
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return dumps(self.to_dict(include_timing))

    @classmethod
    def from_dict(cls, data: dict) -> "ReportDocument":
        data = dict(data)
        schema = data.pop("schema_version")
        if schema != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {schema!r}")
        command = data.pop("command")
        config = data.pop("config")
        timing = data.pop("timing", {})
        data.pop("conventions", None)
        return cls(command=command, config=config, body=data, timing=timing, schema_version=schema)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    def write(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def read(cls, path) -> "ReportDocument":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))
