"""Command-line interface, space files and reports."""

from .main import main, run
from .report import Report
from .spacefile import emit, parse

__all__ = ["main", "run", "Report", "parse", "emit"]
