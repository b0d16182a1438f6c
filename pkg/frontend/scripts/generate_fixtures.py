"""Regenerate the golden fixtures the frontend tests assert against.

Run from the repository root after any engine change:

    python frontend/scripts/generate_fixtures.py

The fixtures capture real backend responses (HTTP service) plus the CLI's
formatted total for the same inputs, so the UI tests can prove parity without
a running server.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from formtime.api import app
from formtime.cli import main as cli_main

ROOT = Path(__file__).resolve().parents[2]
FORMS = ROOT / "tests" / "fixtures" / "forms"
TASKS = ROOT / "tests" / "fixtures" / "tasks"
OUT = ROOT / "frontend" / "tests" / "fixtures" / "golden.json"


def cli_total(html: Path, task: Path, profile: str) -> str:
    import contextlib
    import io

    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = cli_main(
            [
                "analyze",
                "--input", str(html),
                "--task", str(task),
                "--profile", profile,
                "--format", "json",
            ]
        )
    assert code == 0, "CLI analyze failed while generating fixtures"
    return f"{json.loads(buffer.getvalue())['total_seconds']:.6f}"


def main() -> int:
    client = TestClient(app)
    html = (FORMS / "form02_signup.html").read_text()
    task = json.loads((TASKS / "golden_task.json").read_text())

    parsed = client.post("/api/parse", json={"html": html})
    parsed.raise_for_status()
    document = parsed.json()["document"]

    def model(profile: str, strategy: str) -> dict:
        response = client.post(
            "/api/model",
            json={
                "document": document,
                "task": task,
                "profile": {"typing_skill": profile},
                "strategy": strategy,
            },
        )
        response.raise_for_status()
        return response.json()

    payload = {
        "document": document,
        "task": task,
        "cli_total_seconds": cli_total(
            FORMS / "form02_signup.html", TASKS / "golden_task.json", "expert"
        ),
        "model_expert": model("expert", "mouse-keyboard"),
        "model_nontypist": model("nontypist", "mouse-keyboard"),
        "model_keyboard": model("expert", "keyboard"),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
