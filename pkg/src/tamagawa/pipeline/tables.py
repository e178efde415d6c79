"""Tab-separated record tables: ``output_<source>_qua.txt`` and ``output_<source>_tam.txt``."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional

from .records import CurveRecord, dedupe, sort_records

COLUMNS = ("rank", "q_tau", "tau", "tau_factorization", "N", "N_factorization", "minimal_model",
           "source", "triple", "d", "q", "m")
HEADER = "#" + "\t".join(COLUMNS)


def _fmt(x: Optional[float]) -> str:
    return "-" if x is None else f"{x:.5f}"


def format_row(rank: int, r: CurveRecord) -> str:
    return "\t".join((
        str(rank), f"{r.q_tau:.5f}", str(r.tau.n), str(r.tau), str(r.N.n), str(r.N), str(r.curve), r.source,
        " ".join(map(str, r.triple)) if r.triple else "-", "-" if r.d is None else str(r.d), _fmt(r.q), _fmt(r.m),
    ))


def render_table(rows: list[CurveRecord]) -> str:
    return "\n".join([HEADER] + [format_row(i, r) for i, r in enumerate(rows, 1)]) + "\n"


def quality_rows(records: Iterable[CurveRecord], threshold: float = 1.5) -> list[CurveRecord]:
    return [r for r in dedupe(sort_records(records)) if r.q_tau > threshold]


def tamagawa_rows(records: Iterable[CurveRecord]) -> list[CurveRecord]:
    rows = dedupe(sort_records(records))
    return sorted(rows, key=lambda r: -r.tau.n)  # stable: ties keep the q_tau order


def emit_tables(records: Iterable[CurveRecord], outdir, threshold: float = 1.5,
                sources: Iterable[str] = ()) -> list[Path]:
    """Write both tables for every source present in ``records`` or named in ``sources``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    groups: dict[str, list[CurveRecord]] = {s: [] for s in sources}
    for r in records:
        groups.setdefault(r.source, []).append(r)
    written = []
    for source in sorted(groups):
        recs = groups[source]
        for suffix, rows in (("qua", quality_rows(recs, threshold)), ("tam", tamagawa_rows(recs))):
            path = outdir / f"output_{source}_{suffix}.txt"
            path.write_text(render_table(rows))
            written.append(path)
    return written
