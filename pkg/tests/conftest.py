from __future__ import annotations

import json
from pathlib import Path

import pytest

from formtime import estimate_layout, parse_document
from formtime.serialize import task_from_dict

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def forms_dir() -> Path:
    return FIXTURES / "forms"


@pytest.fixture(scope="session")
def manifest(forms_dir) -> dict:
    return json.loads((forms_dir / "manifest.json").read_text())


@pytest.fixture(scope="session")
def corpus(forms_dir, manifest):
    """All fixture documents, parsed and laid out, keyed by file name."""
    docs = {}
    for name in manifest:
        parsed = parse_document((forms_dir / name).read_text(), source=name)
        docs[name] = estimate_layout(parsed.document)
    return docs


@pytest.fixture(scope="session")
def golden_doc(corpus):
    return corpus["form02_signup.html"]


@pytest.fixture(scope="session")
def golden_task():
    return task_from_dict(json.loads((FIXTURES / "tasks" / "golden_task.json").read_text()))
