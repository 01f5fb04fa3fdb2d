from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).resolve().parent
FIXTURES = TESTS / "fixtures"
PROJECT = FIXTURES / "project"

sys.path.insert(0, str(TESTS))
sys.path.insert(0, str(FIXTURES))


@pytest.fixture(scope="session")
def project_dir() -> Path:
    return PROJECT


@pytest.fixture(scope="session")
def expected() -> dict:
    return json.loads((PROJECT / "expected.json").read_text())


@pytest.fixture(scope="session")
def project_config():
    from quastat.pipeline import ProjectConfig
    return ProjectConfig.load(PROJECT / "quastat.json")


@pytest.fixture(scope="session")
def annotations() -> dict:
    return json.loads((FIXTURES / "annotated" / "annotations.json").read_text())["files"]


@pytest.fixture(scope="session")
def v3_corpus(project_config):
    from quastat.source_model import load_corpus
    label, root = project_config.versions[-1]
    return load_corpus(root, project_config.exclusion, project_config.language)


# one verdict line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
