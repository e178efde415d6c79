"""Writing and re-reading the files a search leaves in its output directory."""
from __future__ import annotations

from pathlib import Path

from .figure import emit_figure
from .records import CurveRecord, read_records, write_records
from .search import SearchReport
from .summary import summarize
from .tables import emit_tables

RECORDS = "records.jsonl"
INPUTS = "inputs.tsv"
DIAGNOSTICS = "diagnostics.txt"
FIGURE = "figure.svg"
SUMMARY = "summary.txt"


def write_outputs(report: SearchReport, outdir, threshold: float = 1.5) -> list[Path]:
    """Records, per-source tables, figure (records above threshold) and summary."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    write_records(report.records, outdir / RECORDS)
    write_input_counts(report.input_counts, outdir / INPUTS)
    (outdir / DIAGNOSTICS).write_text("".join(f"{d}\n" for d in report.diagnostics))
    paths = [outdir / RECORDS, outdir / INPUTS, outdir / DIAGNOSTICS]
    paths += emit_tables(report.records, outdir, threshold, report.input_counts)
    paths.append(emit_figure([r for r in report.records if r.q_tau > threshold], outdir / FIGURE))
    (outdir / SUMMARY).write_text(summarize(report.by_source(), report.input_counts, threshold))
    paths.append(outdir / SUMMARY)
    return paths


def write_input_counts(counts: dict[str, int], path: Path) -> None:
    path.write_text("".join(f"{s}\t{n}\n" for s, n in sorted(counts.items())))


def read_input_counts(path) -> dict[str, int]:
    out = {}
    for line in Path(path).read_text().splitlines():
        if line.strip():
            s, n = line.split("\t")
            out[s] = int(n)
    return out


def group_by_source(records: list[CurveRecord]) -> dict[str, list[CurveRecord]]:
    out: dict[str, list[CurveRecord]] = {}
    for r in records:
        out.setdefault(r.source, []).append(r)
    return out


__all__ = ["write_outputs", "read_records", "read_input_counts", "group_by_source"]
