"""Fixture lookup honoring the FRACLOG_FIXTURES environment override."""

import json
import os
from pathlib import Path

_DEFAULT_DIR = Path(__file__).parent / "fixtures"


def fixture_dir() -> Path:
    override = os.environ.get("FRACLOG_FIXTURES")
    return Path(override) if override else _DEFAULT_DIR


def load_fixture(name: str) -> dict:
    path = fixture_dir() / name
    with open(path) as fh:
        return json.load(fh)
