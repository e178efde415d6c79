"""Command line interface.  Exit codes: 0 success, 1 fatal I/O, 2 configuration error."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .abctriple import TripleError, UndefinedMeritError, classify, derive_triples, make_triple
from .curve import invariants, minimal_model, parse_curve, quadratic_twist
from .isogeny import MAX_DEPTH, isogeny_tree
from .localdata import global_data
from .pipeline.config import ConfigError, InputSpec, SearchConfig, load_config
from .pipeline.figure import emit_figure
from .pipeline.ingest import ParseError, parse_triple_file
from .pipeline.outputs import INPUTS, group_by_source, read_input_counts, write_outputs
from .pipeline.records import read_records
from .pipeline.search import run_search
from .pipeline.summary import summarize
from .pipeline.tables import emit_tables

log = logging.getLogger("tamagawa")

EXIT_OK, EXIT_IO, EXIT_CONFIG = 0, 1, 2


def _curve_arg(parts: Sequence[str]):
    text = " ".join(parts).strip()
    if not text.startswith("["):
        text = "[" + ",".join(text.replace(",", " ").split()) + "]"
    try:
        return parse_curve(text.replace(" ", ""))
    except ValueError as exc:
        raise ConfigError(f"bad curve {text!r}: {exc}") from None


def _fmt_m(t) -> str:
    try:
        return f"{t.m:.6f}"
    except UndefinedMeritError:
        return "-"


# ------------------------------------------------------------------ triples

def cmd_triples_check(args, cfg) -> int:
    triples, problems = [], []
    if args.triple:
        try:
            triples.append(make_triple(*args.triple, budget=cfg.budget))
        except TripleError as exc:
            problems.append(f"{exc.reason}: {exc}")
    for path in args.files:
        tf = parse_triple_file(path, args.format, budget=cfg.budget)
        triples += tf.triples
        problems += tf.diagnostics
    print("#a\tb\tc\tr\tq\tm\tcategory\thigh_merit")
    for t in triples:
        cat = classify(t)
        print(f"{t.a}\t{t.b}\t{t.c}\t{t.r}\t{t.q:.6f}\t{_fmt_m(t)}\t{cat.category.value}\t{'yes' if cat.high_merit else 'no'}")
    for p in problems:
        print(p, file=sys.stderr)
    return EXIT_OK


def cmd_triples_derive(args, cfg) -> int:
    sources = []
    if args.triple:
        try:
            sources.append(make_triple(*args.triple, budget=cfg.budget))
        except TripleError as exc:
            print(f"{exc.reason}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    for path in args.files:
        tf = parse_triple_file(path, args.format, budget=cfg.budget)
        sources += tf.triples
        for p in tf.diagnostics:
            print(p, file=sys.stderr)
    for t in sources:
        for dt in derive_triples(t, cfg.budget):
            if dt.triple is None:
                if not args.keep_good:
                    print(f"# {dt.label} {dt.a} {dt.b} {dt.c}: {dt.error}")
                continue
            good = classify(dt.triple)
            if args.keep_good and not (dt.triple.q_exact >= 1.4 or good.high_merit):
                continue
            x = dt.triple
            print(f"{x.a} {x.b} {x.c} {x.fa} {x.fb} {x.fc}\t# {dt.label} from {t.a} {t.b} {t.c}: "
                  f"q={x.q:.6f} m={_fmt_m(x)}")
    return EXIT_OK


# -------------------------------------------------------------------- curve

def cmd_curve_invariants(args, cfg) -> int:
    E = _curve_arg(args.curve)
    for name, value in invariants(E)._asdict().items():
        print(f"{name}\t{value}")
    return EXIT_OK


def cmd_curve_minimal(args, cfg) -> int:
    E = _curve_arg(args.curve)
    if args.twist is not None:
        try:
            E = quadratic_twist(E, args.twist)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    M, T = minimal_model(E)
    print(M)
    print(f"# u={T.u} r={T.r} s={T.s} t={T.t}")
    return EXIT_OK


def cmd_curve_localdata(args, cfg) -> int:
    E = _curve_arg(args.curve)
    g = global_data(E, budget=cfg.budget)
    print(f"minimal\t{g.minimal}")
    print(f"N\t{g.N}\t{g.N_factorization()}")
    print(f"tau\t{g.tau}\t{g.tau_factorization()}")
    print(f"q_tau\t{g.q_tau:.6f}")
    for ld in g.locals:
        print(f"p={ld.p}\t{ld.kodaira}\tf={ld.f}\tc={ld.c}\t{ld.kind}")
    return EXIT_OK


def cmd_curve_isogenous(args, cfg) -> int:
    E = _curve_arg(args.curve)
    for ic in isogeny_tree(E, args.depth or cfg.depth, cfg.budget):
        print(f"{ic.label}\t{ic.curve}")
    return EXIT_OK


# ----------------------------------------------------------------- pipeline

def _search_config(args, cfg: SearchConfig) -> SearchConfig:
    extra = []
    for spec in args.input or ():
        if len(spec) == 2 and spec[1] in ("cremona", "lmfdb"):
            spec = [*spec, spec[1]]
        if len(spec) != 3:
            raise ConfigError(f"--input expects PATH FORMAT [SOURCE], got {' '.join(spec)}")
        extra.append(InputSpec(Path(spec[0]), spec[1], spec[2]))
    extra = tuple(extra)
    twists = None
    if args.twists:
        try:
            twists = tuple(int(x) for x in args.twists.replace(",", " ").split())
        except ValueError:
            raise ConfigError(f"bad twist list {args.twists!r}") from None
    return cfg.with_overrides(
        inputs=cfg.inputs + extra if extra else None, twists=twists, depth=args.depth,
        outdir=Path(args.outdir) if args.outdir else None,
        checkpoint=Path(args.checkpoint) if args.checkpoint else None, threshold=args.threshold)


def cmd_search(args, cfg) -> int:
    cfg = _search_config(args, cfg)
    if not cfg.inputs:
        raise ConfigError("no inputs: give --input or 'input = ...' lines in the config file")
    report = run_search(cfg)
    write_outputs(report, cfg.outdir, cfg.threshold)
    for d in report.diagnostics:
        print(d, file=sys.stderr)
    print(f"{len(report.records)} records from {report.items_done} work items; "
          f"{len(report.diagnostics)} diagnostics; output in {cfg.outdir}")
    return EXIT_OK


def cmd_tables(args, cfg) -> int:
    records = read_records(args.records)
    threshold = args.threshold if args.threshold is not None else cfg.threshold
    for p in emit_tables(records, args.outdir or cfg.outdir, threshold):
        print(p)
    return EXIT_OK


def cmd_figure(args, cfg) -> int:
    records = read_records(args.records)
    if args.min_q_tau is not None:
        records = [r for r in records if r.q_tau > args.min_q_tau]
    print(emit_figure(records, args.out))
    return EXIT_OK


def cmd_summary(args, cfg) -> int:
    records = read_records(args.records)
    counts_path = Path(args.inputs) if args.inputs else Path(args.records).with_name(INPUTS)
    counts = read_input_counts(counts_path) if counts_path.exists() else {}
    threshold = args.threshold if args.threshold is not None else cfg.threshold
    sys.stdout.write(summarize(group_by_source(records), counts, threshold))
    return EXIT_OK


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="key = value configuration file")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="step budget per work item")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="tamagawa", parents=[common],
                                     description="Search for elliptic curves with large Tamagawa products.")
    sub = parser.add_subparsers(dest="command", required=True)

    tri = sub.add_parser("triples", help="abc-triple tools").add_subparsers(dest="action", required=True)
    for name, fn, helptext in (("check", cmd_triples_check, "quality, merit and category"),
                               ("derive", cmd_triples_derive, "triples from triples")):
        p = tri.add_parser(name, parents=[common], help=helptext)
        p.add_argument("files", nargs="*", help="triple files")
        p.add_argument("--triple", nargs=3, type=int, metavar=("A", "B", "C"))
        p.add_argument("--format", default="canonical", choices=("canonical", "desmit-like"))
        if name == "derive":
            p.add_argument("--keep-good", action="store_true", help="only valid candidates with q >= 1.4 or m > 24")
        p.set_defaults(func=fn)

    cur = sub.add_parser("curve", help="single-curve tools").add_subparsers(dest="action", required=True)
    for name, fn, helptext in (("invariants", cmd_curve_invariants, "b- and c-invariants, discriminant, j"),
                               ("minimal", cmd_curve_minimal, "global minimal model"),
                               ("localdata", cmd_curve_localdata, "Tate's algorithm at every bad prime"),
                               ("isogenous", cmd_curve_isogenous, "curves reached by rational isogenies")):
        p = cur.add_parser(name, parents=[common], help=helptext)
        p.add_argument("curve", nargs="+", help="[a1,a2,a3,a4,a6] or five integers")
        if name == "minimal":
            p.add_argument("--twist", type=int)
        if name == "isogenous":
            p.add_argument("--depth", type=int, choices=range(1, MAX_DEPTH + 1))
        p.set_defaults(func=fn)

    p = sub.add_parser("search", parents=[common], help="run a search and write all outputs")
    p.add_argument("--input", nargs="+", action="append", metavar="PATH FORMAT [SOURCE]",
                   help="repeatable; SOURCE defaults to FORMAT for cremona and lmfdb")
    p.add_argument("--twists")
    p.add_argument("--depth", type=int)
    p.add_argument("--outdir")
    p.add_argument("--checkpoint")
    p.add_argument("--threshold", type=float)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("tables", parents=[common], help="record tables from records.jsonl")
    p.add_argument("records")
    p.add_argument("--outdir")
    p.add_argument("--threshold", type=float)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("figure", parents=[common], help="SVG scatter from records.jsonl")
    p.add_argument("records")
    p.add_argument("--out", default="figure.svg")
    p.add_argument("--min-q-tau", type=float)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("summary", parents=[common], help="per-source overview from records.jsonl")
    p.add_argument("records")
    p.add_argument("--inputs", help="input counts (default: inputs.tsv next to the records)")
    p.add_argument("--threshold", type=float)
    p.set_defaults(func=cmd_summary)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        cfg = load_config(args.config) if getattr(args, "config", None) else SearchConfig()
        cfg = cfg.with_overrides(jobs=getattr(args, "jobs", None), budget=getattr(args, "budget", None))
        return args.func(args, cfg)
    except (ConfigError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
