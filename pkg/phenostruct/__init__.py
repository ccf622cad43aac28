"""Verification laboratory for phenomenologically symmetric geometries and physical structures."""

from phenostruct.catalog import all_entries, catalog_frame, get_entry, list_entries
from phenostruct.core import PhenostructError

__all__ = ["PhenostructError", "all_entries", "catalog_frame", "get_entry", "list_entries"]
