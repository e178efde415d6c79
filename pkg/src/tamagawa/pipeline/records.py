from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from ..arith import Factorization, parse_factorization
from ..curve import WeierstrassCurve, parse_curve
from ..localdata import tamagawa_quality

SOURCES = ("cremona", "lmfdb", "high-quality", "medium-quality", "high-merit", "unbeaten", "derived")
DATABASE_SOURCES = ("cremona", "lmfdb")


@dataclass(frozen=True)
class CurveRecord:
    source: str
    curve: WeierstrassCurve
    N: Factorization
    tau: Factorization
    q_tau: float
    path: str = "-"
    triple: Optional[tuple[int, int, int]] = None
    d: Optional[int] = None
    q: Optional[float] = None
    m: Optional[float] = None
    label: Optional[str] = None

    def sort_key(self):
        return (-self.q_tau, self.N.n, str(self.curve)) + self.provenance_key()

    def provenance_key(self):
        return (self.triple or (), self.d or 0, self.path, self.label or "")

    def check(self) -> None:
        """Raise AssertionError if the stored numbers are inconsistent."""
        assert self.N.complete and self.tau.complete
        if self.N.n >= 3:
            assert abs(tamagawa_quality(self.tau.n, self.N.n) - self.q_tau) <= 1e-9

    def to_json(self) -> dict:
        return {
            "source": self.source, "curve": str(self.curve), "N": self.N.n, "N_fact": str(self.N),
            "tau": self.tau.n, "tau_fact": str(self.tau), "q_tau": self.q_tau, "path": self.path,
            "triple": list(self.triple) if self.triple else None, "d": self.d, "q": self.q, "m": self.m,
            "label": self.label,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CurveRecord":
        N, tau = parse_factorization(obj["N_fact"]), parse_factorization(obj["tau_fact"])
        if N.n != obj["N"] or tau.n != obj["tau"]:
            raise ValueError("record factorizations do not match N and tau")
        return cls(obj["source"], parse_curve(obj["curve"]), N, tau, obj["q_tau"], obj.get("path", "-"),
                   tuple(obj["triple"]) if obj.get("triple") else None, obj.get("d"), obj.get("q"), obj.get("m"),
                   obj.get("label"))


def sort_records(records: Iterable[CurveRecord]) -> list[CurveRecord]:
    return sorted(records, key=CurveRecord.sort_key)


def dedupe(records: Iterable[CurveRecord]) -> list[CurveRecord]:
    """First record per (source, minimal model), in input order."""
    seen, out = set(), []
    for rec in records:
        key = (rec.source, rec.curve)
        if key not in seen:
            seen.add(key)
            out.append(rec)
    return out


def write_records(records: Iterable[CurveRecord], path: Path) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")


def read_records(path: Path) -> list[CurveRecord]:
    with open(path) as fh:
        return [CurveRecord.from_json(json.loads(line)) for line in fh if line.strip()]
