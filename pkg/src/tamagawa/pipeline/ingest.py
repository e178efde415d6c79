"""Readers for Cremona allcurves text, LMFDB-style CSV and triple tables."""
from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from ..abctriple import AbcTriple, TripleError, make_triple
from ..arith import BudgetLike, parse_factorization
from ..curve import WeierstrassCurve


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class DatabaseCurve:
    conductor: int
    label: str
    curve: WeierstrassCurve
    rank: Optional[int] = None
    torsion: Optional[int] = None
    tamagawa: Optional[int] = None


_CREMONA = re.compile(r"^\s*(\d+)\s+([a-z]+)\s+(\d+)\s+(\[[^\]]*\])(.*)$")


def _locate_cremona_error(line: str) -> tuple[str, int]:
    """Message and 1-based column of the first field that does not fit."""
    fields = [(m.group(), m.start() + 1) for m in re.finditer(r"\[[^\]]*\]?|\S+", line)]
    expect = (("conductor", r"\d+"), ("isogeny class", r"[a-z]+"), ("class index", r"\d+"),
              ("coefficient list", r"\[[^\]]*\]"))
    for i, (what, pattern) in enumerate(expect):
        if i >= len(fields):
            return f"missing {what}", len(line.rstrip()) + 1
        text, col = fields[i]
        if not re.fullmatch(pattern, text):
            return f"expected {what}, found {text!r}", col
    return "malformed line", 1


def parse_cremona_line(line: str, lineno: int = 0) -> Optional[DatabaseCurve]:
    """One allcurves line: ``N class index [a1,a2,a3,a4,a6] rank torsion``.

    A seventh column, when present, is read as the Tamagawa product (as in
    Cremona's allbsd files).  Blank lines and ``#`` comments give None.
    """
    if not line.strip() or line.lstrip().startswith("#"):
        return None
    m = _CREMONA.match(line)
    if not m:
        msg, col = _locate_cremona_error(line)
        raise ParseError(msg, lineno, col)
    body = m.group(4)[1:-1]
    parts = [p.strip() for p in body.split(",")]
    if len(parts) != 5:
        raise ParseError(f"expected 5 coefficients, found {len(parts)}", lineno, m.start(4) + 1)
    try:
        coeffs = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-integer coefficient in {m.group(4)}", lineno, m.start(4) + 1) from None
    rest = m.group(5).split()
    try:
        extras = [int(x) for x in rest]
    except ValueError:
        raise ParseError("non-integer trailing field", lineno, m.start(5) + 1) from None
    if len(extras) not in (0, 2, 3):
        raise ParseError("expected rank and torsion after the coefficients", lineno, m.start(5) + 1)
    curve = WeierstrassCurve.from_ainvs(coeffs)
    return DatabaseCurve(int(m.group(1)), m.group(1) + m.group(2) + m.group(3), curve,
                         extras[0] if extras else None, extras[1] if extras else None,
                         extras[2] if len(extras) == 3 else None)


def parse_cremona_file(path) -> list[DatabaseCurve]:
    out = []
    with open(path) as fh:
        for i, line in enumerate(fh, 1):
            rec = parse_cremona_line(line, i)
            if rec is not None:
                out.append(rec)
    return out


def parse_lmfdb_csv(path) -> list[DatabaseCurve]:
    """CSV with header ``conductor,a1,a2,a3,a4,a6``; Tamagawa products are recomputed."""
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        need = ["conductor", "a1", "a2", "a3", "a4", "a6"]
        if reader.fieldnames is None or any(k not in reader.fieldnames for k in need):
            raise ParseError(f"header must contain {','.join(need)}", 1, 1)
        for i, row in enumerate(reader, 2):
            try:
                curve = WeierstrassCurve.from_ainvs([int(row[k]) for k in need[1:]])
                N = int(row["conductor"])
            except (TypeError, ValueError) as exc:
                raise ParseError(str(exc), i, 1) from None
            out.append(DatabaseCurve(N, f"lmfdb:{i - 1}", curve))
    return out


# ------------------------------------------------------------------ triples

@dataclass
class TripleFile:
    triples: list[AbcTriple] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)


def _canonical_fields(line: str) -> Optional[list[str]]:
    body = line.split("#", 1)[0].strip()
    return body.split() if body else None


def _desmit_fields(line: str) -> Optional[list[str]]:
    """First three consecutive integers with a + b = c, any separators, extra columns ignored."""
    body = line.split("#", 1)[0]
    nums = re.findall(r"\d+", body)
    for i in range(len(nums) - 2):
        a, b, c = (int(x) for x in nums[i:i + 3])
        if a + b == c:
            return nums[i:i + 3]
    return [] if nums else None


TRIPLE_FORMATS: dict[str, Callable[[str], Optional[list[str]]]] = {
    "canonical": _canonical_fields,
    "desmit-like": _desmit_fields,
}


def register_triple_format(name: str, splitter: Callable[[str], Optional[list[str]]]) -> None:
    """Adapter hook: ``splitter(line)`` returns [a, b, c, (fa, fb, fc)] strings, or None to skip."""
    TRIPLE_FORMATS[name] = splitter


def parse_triple_line(fields: list[str], budget: BudgetLike = None) -> AbcTriple:
    if len(fields) not in (3, 6):
        raise TripleError("parse", f"expected 'a b c' or 'a b c fa fb fc', got {len(fields)} fields")
    try:
        a, b, c = (int(x) for x in fields[:3])
    except ValueError:
        raise TripleError("parse", f"non-integer entry in {' '.join(fields[:3])}") from None
    fs = [None, None, None]
    if len(fields) == 6:
        try:
            fs = [parse_factorization(x) for x in fields[3:]]
        except ValueError as exc:
            raise TripleError("parse", f"bad factorization: {exc}") from None
        for n, f in zip((a, b, c), fs):
            if f.n != n:
                raise TripleError("parse", f"factorization {f} does not multiply to {n}")
    return make_triple(a, b, c, fa=fs[0], fb=fs[1], fc=fs[2], budget=budget)


def parse_triple_file(path, format: str = "canonical", budget: BudgetLike = None) -> TripleFile:
    """Read triples; bad lines become diagnostics instead of aborting."""
    try:
        splitter = TRIPLE_FORMATS[format]
    except KeyError:
        raise ValueError(f"unknown triple format {format!r}") from None
    out = TripleFile()
    with open(path) as fh:
        for i, line in enumerate(fh, 1):
            fields = splitter(line)
            if fields is None:
                continue
            try:
                if not fields:
                    raise TripleError("parse", "no a + b = c among the numbers")
                out.triples.append(parse_triple_line(fields, budget))
            except TripleError as exc:
                out.diagnostics.append(f"{path}:{i}: {exc.reason}: {exc}")
    return out
