"""Exact toolkit for coset conformal field theory."""

from importlib import resources
from pathlib import Path

__version__ = "0.1.0"


def data_path(name: str = "") -> Path:
    """Path of a bundled example file, or of the data directory itself."""
    root = Path(str(resources.files(__name__) / "data"))
    return root / name if name else root
