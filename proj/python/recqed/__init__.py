"""Rare-earth cavity QED design and simulation toolkit."""

from pathlib import Path

from ._core import *  # noqa: F401,F403
from ._core import RecqedError, NumericError, load_catalog as _load_catalog

CATALOG_PATH = Path(__file__).with_name("data") / "ion_catalog.txt"


def load_catalog(path=None):
    """Parse a catalog file; the bundled one when `path` is None."""
    return _load_catalog(str(path) if path is not None else str(CATALOG_PATH))


__version__ = "0.1.0"
