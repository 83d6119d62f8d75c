"""Utility functions and helpers for gradia."""

from .file_utils import read_file, write_file
from .trace import NULL_TRACER, NullTracer, Tracer

__all__ = ["read_file", "write_file", "Tracer", "NullTracer", "NULL_TRACER"]
