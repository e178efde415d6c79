"""File ingestion, search orchestration and reporting."""
from .config import ConfigError, InputSpec, SearchConfig, load_config, parse_config
from .figure import emit_figure
from .ingest import ParseError, parse_cremona_line, parse_lmfdb_csv, parse_triple_file
from .records import CurveRecord
from .search import Diagnostic, SearchReport, WorkItem, process_item, run_search
from .summary import summarize
from .tables import emit_tables

__all__ = [
    "ConfigError", "InputSpec", "SearchConfig", "load_config", "parse_config", "emit_figure", "ParseError",
    "parse_cremona_line", "parse_lmfdb_csv", "parse_triple_file", "CurveRecord", "Diagnostic", "SearchReport",
    "WorkItem", "process_item", "run_search", "summarize", "emit_tables",
]
