"""Verification reports and run manifests.

Reports serialize with a fixed field order.  Timings are kept on the
object but only written to JSON on request, so that two runs with the same
flags produce byte-identical manifests.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator

PASS, FAIL, OPEN = "pass", "fail", "open"
MANIFEST_VERSION = "1.0"

# check id -> the statement it reproduces
CHECKS: dict[str, str] = {
    "dimension-table": "dim g, dim k, rank g, rank k match the closed forms for each family",
    "generator-validity": "generators are K-invariant, algebraically independent, and sum(d_i - 1) = dim k",
    "pfaffian-identities": "Pf^2 = det for generic skew matrices; Pfaffian generators square to +-det",
    "harmonic-direct-sum": "P^d = (P . P_+^K)^d (+) H^d with zero intersection",
    "harmonic-hilbert": "dim H^d equals the coefficient of prod(1 - t^d_i)/(1 - t)^dim g (freeness)",
    "invariant-series": "dim (P^d)^K equals the coefficient of prod 1/(1 - t^d_i)",
    "character-paths": "torus character of H^d from kernel weights equals char(P) * prod(1 - t^d_i)",
    "multiplicity-bound": "cumulative multiplicity m(delta) <= dim(delta) for every K-type",
    "multiplicity-saturation": "K-types whose cumulative multiplicity has reached dim(delta)",
    "invariant-rank": "dim (H (x) V)^K = dim V for saturated K-types of V",
    "trivial-stabilizer": "explicit element with zero-dimensional centralizer in k; orbit dim = dim k = dim N(xi, eta)",
    "centralizer-structure": "centralizer of the principal nilpotent x0 in k has the stated parametrized form",
    "nilpotent-variety": "all generators vanish at x iff x and pr x are nilpotent",
}


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class VerificationReport:
    id: str
    family: str
    n: int
    params: dict = field(default_factory=dict)
    expected: Any = None
    computed: Any = None
    status: str = OPEN
    ms: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "id": self.id,
            "family": self.family,
            "n": self.n,
            "params": _jsonable(self.params),
            "expected": _jsonable(self.expected),
            "computed": _jsonable(self.computed),
            "status": self.status,
            "ms": round(self.ms, 1) if timings and self.ms is not None else None,
        }


def status_of(ok: bool) -> str:
    return PASS if ok else FAIL


@contextmanager
def timed(report_holder: list) -> Iterator[None]:
    """Stamp elapsed milliseconds onto every report appended inside the block."""
    start = time.perf_counter()
    before = len(report_holder)
    yield
    ms = (time.perf_counter() - start) * 1000.0
    for r in report_holder[before:]:
        if r.ms is None:
            r.ms = ms


@dataclass
class RunManifest:
    version: str
    seed: int
    reports: list[VerificationReport]

    @property
    def failed(self) -> bool:
        return any(r.status == FAIL for r in self.reports)

    def to_json(self, timings: bool = False) -> str:
        payload = {
            "version": self.version,
            "seed": self.seed,
            "reports": [r.to_dict(timings) for r in self.reports],
        }
        return json.dumps(payload, indent=2) + "\n"
