import io
import json
from pathlib import Path

import pytest
from hypothesis import settings

from ndroots.cli import run

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def cli():
    """Run the CLI in-process; returns (exit code, stdout text)."""

    def call(*argv):
        buf = io.StringIO()
        code = run([str(a) for a in argv], out=buf)
        return code, buf.getvalue()

    return call


@pytest.fixture
def cli_json(cli):
    def call(*argv):
        code, text = cli(*argv)
        return code, (json.loads(text) if text.strip() else None)

    return call


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
