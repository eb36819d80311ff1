"""Shared fixtures: fixture-data paths, schema loading, in-process CLI runner."""

import contextlib
import io
import json
from importlib import resources
from pathlib import Path

import pytest

from spontrad.cli import main

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return Path(resources.files("spontrad")) / "data"


@pytest.fixture(scope="session")
def schemas() -> dict:
    out = {}
    for path in (REPO_ROOT / "schemas").glob("*.schema.json"):
        out[path.name.replace(".schema.json", "")] = json.loads(
            path.read_text(encoding="utf-8"))
    return out


class CliResult:
    def __init__(self, code: int, out: str, err: str):
        self.code = code
        self.out = out
        self.err = err

    @property
    def json(self):
        return json.loads(self.out)

    @property
    def error(self):
        return json.loads(self.err)


@pytest.fixture()
def run_cli():
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""

    def run(*argv) -> CliResult:
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main([str(a) for a in argv])
        return CliResult(code, out.getvalue(), err.getvalue())

    return run
