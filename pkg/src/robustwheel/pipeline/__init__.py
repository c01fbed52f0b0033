"""Configuration, data ingestion, end-to-end analysis and the CLI."""

from .config import PipelineConfig, load_config, parse_config
from .ingest import ingest_responses, parse_responses
from .report import Report, emit_report, run_analysis

__all__ = [
    "PipelineConfig",
    "Report",
    "emit_report",
    "ingest_responses",
    "load_config",
    "parse_config",
    "parse_responses",
    "run_analysis",
]
