"""Per-source overview table."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .records import DATABASE_SOURCES, CurveRecord

ALL = "all together"


@dataclass(frozen=True)
class SummaryRow:
    source: str
    curves_in: Optional[int]
    triples_in: Optional[int]
    above: int
    best_q_tau: Optional[float]
    best_tau: Optional[int]


def _row(source, records, n_inputs, threshold) -> SummaryRow:
    is_db = source in DATABASE_SOURCES
    return SummaryRow(
        source,
        n_inputs if is_db else None,
        None if is_db else n_inputs,
        sum(1 for r in records if r.q_tau > threshold),
        max((r.q_tau for r in records), default=None),
        max((r.tau.n for r in records), default=None),
    )


def summary_rows(records_by_source: Mapping[str, Sequence[CurveRecord]],
                 input_counts: Mapping[str, int], threshold: float = 1.5) -> list[SummaryRow]:
    sources = sorted(set(records_by_source) | set(input_counts))
    rows = [_row(s, records_by_source.get(s, ()), input_counts.get(s, 0), threshold) for s in sources]
    # union over sources: a minimal model found from several sources counts once
    union = {}
    for s in sources:
        for r in records_by_source.get(s, ()):
            union.setdefault(r.curve, r)
    total = _row(ALL, list(union.values()), None, threshold)
    rows.append(SummaryRow(ALL, None, None, total.above, total.best_q_tau, total.best_tau))
    return rows


def summarize(records_by_source: Mapping[str, Sequence[CurveRecord]], input_counts: Mapping[str, int],
              threshold: float = 1.5) -> str:
    def cell(v, fmt="{}"):
        return "" if v is None else fmt.format(v)

    head = ("source", "# curves", "# abc-triples", f"# q_tau > {threshold:g}", "largest q_tau", "largest tau")
    body = [(r.source, cell(r.curves_in), cell(r.triples_in), str(r.above), cell(r.best_q_tau, "{:.5f}"),
             cell(r.best_tau)) for r in summary_rows(records_by_source, input_counts, threshold)]
    widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]

    def line(row):
        return "  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))).rstrip()

    rule = "-" * len(line(head))
    return "\n".join([line(head), rule] + [line(r) for r in body[:-1]] + [rule, line(body[-1])]) + "\n"
