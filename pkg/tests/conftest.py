# In: tests/conftest.py
from pathlib import Path

import pytest

from config import EXTENSION_KINDS
from data.reference_examples import ReferenceBank

_SUFFIXES = {kind: suffix for suffix, kind in EXTENSION_KINDS.items()}
_SUFFIXES["system"] = ".sfm"


@pytest.fixture(scope="session")
def bank() -> ReferenceBank:
    return ReferenceBank()


@pytest.fixture
def example_file(bank, tmp_path):
    """Writes a reference example to tmp_path under the extension of its kind."""
    def write(name: str) -> str:
        path = Path(tmp_path) / f"{name}{_SUFFIXES[bank.kind(name)]}"
        path.write_text(bank.text(name), encoding="utf-8")
        return str(path)
    return write
