from .config import Settings, get_settings, settings
from .exceptions import (
    AlignmentError,
    ConfigError,
    CorpusFormatError,
    EvaluationError,
    MinerError,
    ReportError,
    StageError,
)
from .jsonl import dump_record, iter_jsonl, write_json, write_jsonl
from .logger import setup_logging

__all__ = [
    "Settings",
    "get_settings",
    "settings",
    "MinerError",
    "CorpusFormatError",
    "AlignmentError",
    "ConfigError",
    "EvaluationError",
    "ReportError",
    "StageError",
    "iter_jsonl",
    "dump_record",
    "write_jsonl",
    "write_json",
    "setup_logging",
]
