"""Search orchestration: work items, step budgets, worker pool and checkpointing."""
from __future__ import annotations

import hashlib
import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Union

from ..abctriple import AbcTriple, UndefinedMeritError
from ..arith import BudgetExceeded, Factorization, IncompleteFactorizationError, StepBudget, factor
from ..curve import frey_curve
from ..isogeny import isogeny_tree
from ..localdata import GlobalData, global_data
from .config import SearchConfig
from .ingest import DatabaseCurve, ParseError, parse_cremona_file, parse_lmfdb_csv, parse_triple_file
from .records import CurveRecord, dedupe, sort_records

log = logging.getLogger(__name__)

BUDGET_EXCEEDED = "budget-exceeded"
TIME_EXCEEDED = "time-exceeded"
STORED_MISMATCH = "stored-mismatch"
INPUT_ERROR = "input"
UNDEFINED = "undefined-quality"


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    item: str
    message: str

    def __str__(self):
        return f"{self.kind}\t{self.item}\t{self.message}"

    def to_json(self):
        return {"kind": self.kind, "item": self.item, "message": self.message}


@dataclass(frozen=True)
class WorkItem:
    source: str
    triple: Optional[AbcTriple] = None
    d: Optional[int] = None
    db: Optional[DatabaseCurve] = None

    def describe(self) -> str:
        if self.triple is not None:
            return f"{self.source}:({self.triple.a},{self.triple.b},{self.triple.c}),d={self.d}"
        return f"{self.source}:{self.db.label}{self.db.curve}"

    def ident(self, depth: int, budget: int) -> str:
        """Stable id; settings that change the result are part of it."""
        if self.triple is not None:
            key = f"{self.source}|{self.triple.a},{self.triple.b},{self.triple.c}|{self.d}|{depth}|{budget}"
        else:
            key = f"{self.source}|{self.db.label}|{self.db.curve}|{budget}"
        return hashlib.sha256(key.encode()).hexdigest()[:24]


@dataclass
class ItemResult:
    records: list[CurveRecord] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def to_json(self, ident: str) -> str:
        return json.dumps({"id": ident, "records": [r.to_json() for r in self.records],
                           "diagnostics": [d.to_json() for d in self.diagnostics]}, sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict) -> "ItemResult":
        return cls([CurveRecord.from_json(r) for r in obj["records"]],
                   [Diagnostic(**d) for d in obj["diagnostics"]])


@dataclass
class SearchReport:
    records: list[CurveRecord]
    diagnostics: list[Diagnostic]
    input_counts: dict[str, int]
    items_total: int
    items_done: int

    @property
    def complete(self) -> bool:
        return self.items_done == self.items_total

    def by_source(self) -> dict[str, list[CurveRecord]]:
        out: dict[str, list[CurveRecord]] = {s: [] for s in self.input_counts}
        for r in self.records:
            out.setdefault(r.source, []).append(r)
        return out


class DeadlineBudget(StepBudget):
    """Step budget with an optional wall-clock guard (not reproducible, off by default)."""

    def __init__(self, limit: int, seconds: Optional[float]):
        super().__init__(limit)
        self.deadline = None if seconds is None else time.monotonic() + seconds

    def charge(self, steps: int = 1) -> None:
        super().charge(steps)
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise TimeoutError("wall-clock limit reached")


# ------------------------------------------------------------ one work item

def _record(item: WorkItem, g: GlobalData, path: str) -> CurveRecord:
    t = item.triple
    q = m = None
    if t is not None:
        q = t.q
        try:
            m = t.m
        except UndefinedMeritError:
            m = None
    return CurveRecord(item.source, g.minimal, g.N_factorization(), g.tau_factorization(), g.q_tau, path,
                       (t.a, t.b, t.c) if t else None, item.d, q, m, item.db.label if item.db else None)


def _frey_hint(t: AbcTriple, d: int) -> Factorization:
    primes = {2} | set(t.primes()) | set(factor(abs(d)).primes())
    return Factorization.from_dict({p: 1 for p in primes})


def process_item(item: WorkItem, depth: int, budget: int, time_limit: Optional[float] = None,
                 verify_stored: bool = True) -> ItemResult:
    """Records for one work item.  Records are emitted in a fixed order, so a
    larger budget reproduces every record a smaller one found."""
    out = ItemResult()
    steps = DeadlineBudget(budget, time_limit)
    name = item.describe()

    def add(g: GlobalData, path: str):
        if math.isnan(g.q_tau):
            out.diagnostics.append(Diagnostic(UNDEFINED, name, f"conductor {g.N} < 3"))
        else:
            out.records.append(_record(item, g, path))

    try:
        if item.db is not None:
            g = global_data(item.db.curve, None, steps)
            add(g, "-")
            db = item.db
            if verify_stored and (g.N != db.conductor or (db.tamagawa is not None and g.tau != db.tamagawa)):
                out.diagnostics.append(Diagnostic(
                    STORED_MISMATCH, name, f"stored N={db.conductor} tau={db.tamagawa}, computed N={g.N} tau={g.tau}"))
        else:
            hint = _frey_hint(item.triple, item.d)
            E = frey_curve(item.triple, item.d)
            g0 = global_data(E, hint, steps)
            add(g0, "1")
            for ic in isogeny_tree(g0.minimal, depth, steps):
                if ic.path:
                    add(global_data(ic.curve, hint, steps), ic.label)
    except (BudgetExceeded, IncompleteFactorizationError) as exc:
        out.diagnostics.append(Diagnostic(BUDGET_EXCEEDED, name, f"{exc} (after {steps.used} steps)"))
    except TimeoutError as exc:
        out.diagnostics.append(Diagnostic(TIME_EXCEEDED, name, str(exc)))
    return out


def _process_star(args):
    return process_item(*args)


# ------------------------------------------------------------------ inputs

def load_work(cfg: SearchConfig) -> tuple[list[WorkItem], dict[str, int], list[Diagnostic]]:
    """Expand the configured inputs into work items, in a fixed order."""
    items: list[WorkItem] = []
    counts: dict[str, int] = {}
    diags: list[Diagnostic] = []
    for spec in cfg.inputs:
        counts.setdefault(spec.source, 0)
        if spec.format in ("cremona", "lmfdb"):
            reader = parse_cremona_file if spec.format == "cremona" else parse_lmfdb_csv
            curves = reader(spec.path)
            counts[spec.source] += len(curves)
            items += [WorkItem(spec.source, db=c) for c in curves]
            continue
        fmt = "canonical" if spec.format == "triples" else spec.format
        tf = parse_triple_file(spec.path, fmt, budget=cfg.budget)
        diags += [Diagnostic(INPUT_ERROR, str(spec.path), msg) for msg in tf.diagnostics]
        triples = tf.triples
        if cfg.max_c is not None:
            triples = [t for t in triples if t.c <= cfg.max_c]
        if cfg.smallest_c is not None:
            triples = sorted(triples, key=lambda t: t.c)[:cfg.smallest_c]
        counts[spec.source] += len(triples)
        items += [WorkItem(spec.source, triple=t, d=d) for t in triples for d in cfg.twists]
    return items, counts, diags


# -------------------------------------------------------------- checkpoint

class Checkpoint:
    """Append-only ``done <id>`` lines, with results in a JSONL sidecar.

    The sidecar line is flushed before the matching done line, so a crash
    between the two only costs a recomputation of that item.
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.sidecar = self.path.with_name(self.path.name + ".records.jsonl")

    def load(self) -> dict[str, ItemResult]:
        done = set()
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                parts = line.split()
                if len(parts) == 2 and parts[0] == "done":
                    done.add(parts[1])
        results: dict[str, ItemResult] = {}
        if self.sidecar.exists():
            for line in self.sidecar.read_text().splitlines():
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError:
                    continue  # torn final line
                if obj.get("id") in done:
                    results[obj["id"]] = ItemResult.from_json(obj)
        return results

    @staticmethod
    def _append(path: Path, text: str) -> None:
        with open(path, "a") as fh:
            fh.write(text + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def mark(self, ident: str, result: ItemResult) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._append(self.sidecar, result.to_json(ident))
        self._append(self.path, f"done {ident}")


# ------------------------------------------------------------------ search

def _results(pending, cfg: SearchConfig) -> Iterator[ItemResult]:
    args = [(it, cfg.depth, cfg.budget, cfg.time_limit, cfg.verify_stored) for it in pending]
    if cfg.jobs == 1 or len(args) <= 1:
        yield from map(_process_star, args)
        return
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        try:
            yield from pool.map(_process_star, args, chunksize=1)
        finally:
            pool.shutdown(wait=True, cancel_futures=True)


def run_search(cfg: SearchConfig, *, stop_after: Optional[int] = None) -> SearchReport:
    """Run every work item of ``cfg`` and merge the results.

    ``stop_after`` processes at most that many new items and returns, as a
    stand-in for an interrupted run; with a checkpoint, a later call picks
    up where this one stopped.
    """
    items, counts, diags = load_work(cfg)
    ids = [it.ident(cfg.depth, cfg.budget) for it in items]
    ckpt = Checkpoint(cfg.checkpoint) if cfg.checkpoint else None
    done = ckpt.load() if ckpt else {}
    pending = [(i, it) for i, (it, ident) in enumerate(zip(items, ids)) if ident not in done]
    if stop_after is not None:
        pending = pending[:stop_after]
    if done:
        log.info("resuming: %d of %d work items already done", len(done), len(items))

    results: dict[int, ItemResult] = {i: done[ident] for i, ident in enumerate(ids) if ident in done}
    for (i, it), res in zip(pending, _results([it for _, it in pending], cfg)):
        results[i] = res
        if ckpt:
            ckpt.mark(ids[i], res)
        for d in res.diagnostics:
            log.warning("%s", d)

    ordered = [results[i] for i in sorted(results)]
    records = [r for res in ordered for r in res.records]
    diags += [d for res in ordered for d in res.diagnostics]
    records = dedupe(sort_records(records))
    return SearchReport(records, diags, counts, len(items), len(results))


def search_records(cfg: SearchConfig) -> list[CurveRecord]:
    return run_search(cfg).records
