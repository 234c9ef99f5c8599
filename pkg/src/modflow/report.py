"""Result and benchmark record types with a fixed JSON schema."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

SCHEMA_VERSION = 1

__all__ = ["SolveReport", "BenchRecord", "SCHEMA_VERSION"]


@dataclass
class SolveReport:
    problem: str
    value: Optional[int | float]
    n: int
    m: int
    time_ms: float
    unbounded: bool = False
    witness: Any = None
    mw: Optional[int] = None
    node_counts: Optional[dict] = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "problem": self.problem,
            "value": self.value,
            "unbounded": self.unbounded,
            "n": self.n,
            "m": self.m,
            "mw": self.mw,
            "node_counts": self.node_counts,
            "time_ms": round(self.time_ms, 3),
            "witness": _jsonable(self.witness),
            **self.extra,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


BENCH_FIELDS = [
    "problem",
    "n",
    "m",
    "mw",
    "algorithm",
    "impl",
    "value",
    "time_ms",
    "seed",
]


@dataclass
class BenchRecord:
    problem: str
    n: int
    m: int
    mw: int
    algorithm: str  # "mw" | "baseline"
    impl: str  # "native" | "pure"
    value: int | float
    time_ms: float
    seed: int

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in BENCH_FIELDS}
        d["schema"] = SCHEMA_VERSION
        d["time_ms"] = round(self.time_ms, 3)
        return d

    def to_csv_row(self) -> str:
        return ",".join(str(self.to_dict()[k]) for k in BENCH_FIELDS)


def bench_csv(records) -> str:
    lines = [",".join(BENCH_FIELDS)]
    lines.extend(r.to_csv_row() for r in records)
    return "\n".join(lines) + "\n"


def _jsonable(x):
    if x is None or isinstance(x, (int, float, str, bool)):
        return x
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(e) for e in x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(e) for e in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return str(x)
