"""Utility modules for certiq."""

from .io_utils import (
    canonical_json,
    stable_hash,
    run_metadata,
    write_json,
    write_jsonl,
    write_csv,
    read_csv
)

__all__ = [
    "canonical_json",
    "stable_hash",
    "run_metadata",
    "write_json",
    "write_jsonl",
    "write_csv",
    "read_csv"
]
