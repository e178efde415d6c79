"""Recompute conductor and Tamagawa product for a Cremona-format file and compare with the stored columns.

    python scripts/cremona_sanity.py [FILE] [--jobs N]
"""
import argparse
import statistics
import time
from collections import Counter
from pathlib import Path

from tamagawa.pipeline.config import InputSpec, SearchConfig
from tamagawa.pipeline.ingest import parse_cremona_file
from tamagawa.pipeline.search import STORED_MISMATCH, run_search

DEFAULT = Path(__file__).resolve().parent.parent / "tests" / "data" / "cremona_1000.txt"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("file", nargs="?", default=DEFAULT, type=Path)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    rows = parse_cremona_file(args.file)
    start = time.perf_counter()
    report = run_search(SearchConfig(inputs=(InputSpec(args.file, "cremona", "cremona"),), jobs=args.jobs))
    took = time.perf_counter() - start
    bad = [d for d in report.diagnostics if d.kind == STORED_MISMATCH]
    taus = [r.tamagawa for r in rows if r.tamagawa is not None]
    print(f"{len(rows)} curves in {took:.1f}s, {len(bad)} stored-value mismatches, "
          f"{len(report.diagnostics) - len(bad)} other diagnostics")
    if taus:
        print(f"tau: mean {statistics.mean(taus):.4f}, median {statistics.median(taus)}, max {max(taus)}")
        print("most common:", ", ".join(f"{t} ({n})" for t, n in Counter(taus).most_common(8)))
    top = report.records[0]
    print(f"largest q_tau {top.q_tau:.5f}: {top.label} N={top.N.n} tau={top.tau}")
    for d in bad[:10]:
        print(d)


if __name__ == "__main__":
    main()
