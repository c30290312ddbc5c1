"""Locally linearly dependent operator spaces and bounded-rank matrix spaces over finite fields."""

from .alternating import AltSubspace, operator_space_from_alt, pfaffian, wedge_space
from .catalog import build_entry, list_entries
from .exactfield import Field, make_field
from .matspace import MatrixSpace, dual_hat, fingerprint, reduce, trk, urk

__version__ = "0.1.0"

__all__ = [
    "Field", "make_field", "MatrixSpace", "AltSubspace", "urk", "trk", "fingerprint",
    "dual_hat", "reduce", "pfaffian", "operator_space_from_alt", "wedge_space",
    "build_entry", "list_entries",
]
