from __future__ import annotations

import json
import random

import pytest
from fastapi.testclient import TestClient

from formtime import TypingSkill, UserProfile, model_task
from formtime.api import app
from formtime.cli import (
    EXIT_BAD_FILE,
    EXIT_FETCH,
    EXIT_OK,
    EXIT_UNREADABLE,
    EXIT_USAGE,
    EXIT_VIOLATIONS,
    main,
)
from formtime.serialize import document_to_dict, task_to_dict

from cases import canonical_task

client = TestClient(app)


@pytest.fixture()
def golden_paths(forms_dir):
    return {
        "html": str(forms_dir / "form02_signup.html"),
        "task": str(forms_dir.parent / "tasks" / "golden_task.json"),
    }


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCliAnalyze:
    def test_json_happy_path_matches_library(self, capsys, golden_paths, golden_doc, golden_task):
        code, out, _ = run_cli(
            capsys, "analyze", "--input", golden_paths["html"], "--task", golden_paths["task"],
            "--profile", "expert", "--strategy", "mouse-keyboard", "--format", "json",
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        expected = model_task(
            golden_doc, golden_task, profile=UserProfile(typing_skill=TypingSkill.EXPERT)
        )
        assert payload["total_us"] == expected.total_us
        assert payload["settings"]["profile"]["typing_skill"] == "expert"

    def test_all_formats_carry_same_total(self, capsys, golden_paths):
        totals = {}
        for fmt in ("text", "json", "csv"):
            code, out, _ = run_cli(
                capsys, "analyze", "--input", golden_paths["html"], "--task",
                golden_paths["task"], "--format", fmt,
            )
            assert code == EXIT_OK
            if fmt == "json":
                totals[fmt] = f"{json.loads(out)['total_seconds']:.6f}"
            elif fmt == "csv":
                last = [line for line in out.strip().splitlines() if line.startswith("total")][-1]
                totals[fmt] = last.split(",")[4]
            else:
                totals[fmt] = out.strip().splitlines()[-1].split()[-1].rstrip("s")
        assert len(set(totals.values())) == 1, totals

    def test_explain_with_fitts_names_the_law(self, capsys, golden_paths):
        code, out, _ = run_cli(
            capsys, "analyze", "--input", golden_paths["html"], "--task", golden_paths["task"],
            "--fitts", "--fitts-a", "0.1", "--fitts-b", "0.15", "--explain", "--format", "json",
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        pointing = [r for r in payload["explanation"] if r["code"] == "P"]
        assert pointing and all("Fitts" in r["rationale"] for r in pointing)

    def test_repeated_runs_are_byte_identical(self, capsys, golden_paths):
        outputs = set()
        for _ in range(2):
            _, out, _ = run_cli(
                capsys, "analyze", "--input", golden_paths["html"], "--task",
                golden_paths["task"], "--format", "json", "--explain",
            )
            outputs.add(out)
        assert len(outputs) == 1

    def test_missing_input_file_is_unreadable(self, capsys, golden_paths):
        code, _, err = run_cli(
            capsys, "analyze", "--input", "/no/such/file.html", "--task", golden_paths["task"],
        )
        assert code == EXIT_UNREADABLE
        assert "/no/such/file.html" in err

    def test_missing_task_file_names_path(self, capsys, golden_paths):
        code, _, err = run_cli(
            capsys, "analyze", "--input", golden_paths["html"], "--task", "/no/task.json",
        )
        assert code == EXIT_UNREADABLE
        assert "/no/task.json" in err

    def test_malformed_task_json_is_bad_file(self, capsys, golden_paths, tmp_path):
        bad = tmp_path / "task.json"
        bad.write_text("{not json")
        code, _, err = run_cli(
            capsys, "analyze", "--input", golden_paths["html"], "--task", str(bad),
        )
        assert code == EXIT_BAD_FILE
        assert "task" in err

    def test_schema_violating_task_is_bad_file(self, capsys, golden_paths, tmp_path):
        bad = tmp_path / "task.json"
        bad.write_text('{"steps": [{"element_id": "x", "action": {"type": "fly"}}]}')
        code, _, err = run_cli(
            capsys, "analyze", "--input", golden_paths["html"], "--task", str(bad),
        )
        assert code == EXIT_BAD_FILE

    def test_validation_violations_exit_code(self, capsys, golden_paths, tmp_path):
        bad = tmp_path / "task.json"
        bad.write_text('{"steps": [{"element_id": "ghost", "action": {"type": "press"}}]}')
        code, _, err = run_cli(
            capsys, "analyze", "--input", golden_paths["html"], "--task", str(bad),
        )
        assert code == EXIT_VIOLATIONS
        assert "ghost" in err

    def test_offline_url_fetch_fails(self, capsys, golden_paths):
        code, _, err = run_cli(
            capsys, "analyze", "--url", "http://example.invalid/form", "--task",
            golden_paths["task"], "--offline",
        )
        assert code == EXIT_FETCH
        assert "offline" in err

    def test_usage_error_without_source(self, capsys, golden_paths):
        code, _, err = run_cli(capsys, "analyze", "--task", golden_paths["task"])
        assert code == EXIT_USAGE


class TestCliCompare:
    def test_identical_designs_tie_to_first_label(self, capsys, forms_dir):
        design = str(forms_dir / "design_a.html")
        task = str(forms_dir.parent / "tasks" / "design_task.json")
        code, out, _ = run_cli(
            capsys, "analyze", "--compare", f"first={design}", "--compare", f"second={design}",
            "--task", task, "--format", "json",
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["winner"] == "first"
        assert payload["deltas"][0]["delta_us"] == 0

    def test_farther_submit_loses_under_fitts(self, capsys, forms_dir):
        task = str(forms_dir.parent / "tasks" / "design_task.json")
        code, out, _ = run_cli(
            capsys, "analyze",
            "--compare", f"near={forms_dir / 'design_a.html'}",
            "--compare", f"far={forms_dir / 'design_b.html'}",
            "--task", task, "--fitts", "--format", "json",
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["winner"] == "near"
        totals = {r["label"]: r["total_us"] for r in payload["results"]}
        assert totals["near"] < totals["far"]

    def test_three_designs_three_deltas(self, capsys, forms_dir):
        task = str(forms_dir.parent / "tasks" / "design_task.json")
        code, out, _ = run_cli(
            capsys, "analyze",
            "--compare", f"a={forms_dir / 'design_a.html'}",
            "--compare", f"b={forms_dir / 'design_b.html'}",
            "--compare", f"c={forms_dir / 'design_a.html'}",
            "--task", task, "--format", "json",
        )
        payload = json.loads(out)
        assert len(payload["results"]) == 3
        assert len(payload["deltas"]) == 3

    def test_single_compare_is_usage_error(self, capsys, forms_dir):
        task = str(forms_dir.parent / "tasks" / "design_task.json")
        code, _, err = run_cli(
            capsys, "analyze", "--compare", f"a={forms_dir / 'design_a.html'}", "--task", task,
        )
        assert code == EXIT_USAGE

    def test_invalid_task_names_design_label(self, capsys, forms_dir, tmp_path):
        bad = tmp_path / "task.json"
        bad.write_text('{"steps": [{"element_id": "missing", "action": {"type": "press"}}]}')
        code, _, err = run_cli(
            capsys, "analyze",
            "--compare", f"alpha={forms_dir / 'design_a.html'}",
            "--compare", f"beta={forms_dir / 'design_b.html'}",
            "--task", str(bad),
        )
        assert code == EXIT_VIOLATIONS
        assert "alpha" in err


class TestCliMetrics:
    def test_sus(self, capsys):
        code, out, _ = run_cli(capsys, "sus", "--responses", "5,1,5,1,5,1,5,1,5,1")
        assert code == EXIT_OK
        assert "100.0" in out and "Best Imaginable" in out

    def test_gain(self, capsys):
        code, out, _ = run_cli(capsys, "gain", "--pre", "50", "--post", "75", "--max", "100")
        assert code == EXIT_OK
        assert "50.00%" in out

    def test_alpha(self, capsys, tmp_path):
        csv_path = tmp_path / "survey.csv"
        csv_path.write_text("q1,q2,q3\n1,1,1\n2,2,2\n4,4,4\n")
        code, out, _ = run_cli(capsys, "alpha", "--csv", str(csv_path))
        assert code == EXIT_OK
        assert "1.000" in out

    def test_gain_undefined_is_bad_input(self, capsys):
        code, _, err = run_cli(capsys, "gain", "--pre", "100", "--post", "100", "--max", "100")
        assert code == EXIT_BAD_FILE


def parse_via_api(html: str) -> dict:
    response = client.post("/api/parse", json={"html": html})
    assert response.status_code == 200
    return response.json()["document"]


class TestHttpApi:
    def test_parse_returns_document_with_geometry(self, forms_dir):
        document = parse_via_api((forms_dir / "form02_signup.html").read_text())
        assert len(document["elements"]) == 5
        assert all(e["geometry"] for e in document["elements"])

    def test_parse_malformed_html_is_best_effort_200(self):
        response = client.post("/api/parse", json={"html": "<form><input name=x</form>"})
        assert response.status_code == 200
        assert isinstance(response.json()["diagnostics"], list)

    def test_parse_requires_exactly_one_source(self):
        assert client.post("/api/parse", json={}).status_code == 400
        assert (
            client.post("/api/parse", json={"html": "<form></form>", "url": "http://x"}).status_code
            == 400
        )

    def test_parse_url_fetch_failure_is_502(self, monkeypatch):
        def boom(url, timeout=10.0, offline=False):
            from formtime.serialize import FetchError

            raise FetchError(url, "connection refused")

        monkeypatch.setattr("formtime.api.fetch_url", boom)
        response = client.post("/api/parse", json={"url": "http://example.invalid/"})
        assert response.status_code == 502
        assert response.json()["code"] == "fetch-failed"

    def test_model_empty_task(self, golden_doc):
        response = client.post(
            "/api/model",
            json={"document": document_to_dict(golden_doc), "task": {"steps": []}},
        )
        assert response.status_code == 200
        assert response.json()["total_seconds"] == 0

    def test_model_matches_library(self, golden_doc, golden_task):
        response = client.post(
            "/api/model",
            json={
                "document": document_to_dict(golden_doc),
                "task": task_to_dict(golden_task),
                "profile": {"typing_skill": "expert"},
            },
        )
        assert response.status_code == 200
        expected = model_task(
            golden_doc, golden_task, profile=UserProfile(typing_skill=TypingSkill.EXPERT)
        )
        body = response.json()
        assert body["total_us"] == expected.total_us
        assert body["explanation"]

    def test_identical_requests_byte_identical(self, golden_doc, golden_task):
        payload = {
            "document": document_to_dict(golden_doc),
            "task": task_to_dict(golden_task),
            "fitts": {"a": 0.1, "b": 0.15},
        }
        first = client.post("/api/model", json=payload)
        second = client.post("/api/model", json=payload)
        assert first.content == second.content

    def test_model_validation_violations_are_400(self, golden_doc):
        response = client.post(
            "/api/model",
            json={
                "document": document_to_dict(golden_doc),
                "task": {"steps": [{"element_id": "ghost", "action": {"type": "press"}}]},
            },
        )
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "validation-failed"
        assert body["violations"][0]["code"] == "unknown-element"

    def test_model_bad_payload_is_400(self):
        response = client.post("/api/model", json={"document": {}, "task": {"nope": 1}})
        assert response.status_code == 400
        assert response.json()["code"] == "bad-payload"

    def test_compare_endpoint(self, corpus, golden_task):
        doc = corpus["form02_signup.html"]
        response = client.post(
            "/api/compare",
            json={
                "designs": [
                    {"label": "a", "document": document_to_dict(doc)},
                    {"label": "b", "document": document_to_dict(doc)},
                ],
                "task": task_to_dict(golden_task),
                "settings": {"fitts": {"a": 0.1, "b": 0.15}},
            },
        )
        assert response.status_code == 200
        body = response.json()
        assert body["winner"] == "a"
        assert body["deltas"][0]["delta_us"] == 0

    def test_profiles_inventory(self):
        response = client.get("/api/profiles")
        assert response.status_code == 200
        body = response.json()
        assert body["skills"]["expert"] == 0.12
        assert body["operator_table"]["M"] == 1.35
        assert body["fitts"] == {"a": 0.1, "b": 0.15}
        assert "mouse-keyboard" in body["strategies"]

    def test_metrics_endpoints(self):
        sus = client.post("/api/metrics/sus", json={"responses": [5, 1, 5, 1, 5, 1, 5, 1, 5, 1]})
        assert sus.status_code == 200
        assert sus.json()["mean"] == 100.0

        alpha = client.post(
            "/api/metrics/alpha",
            json={"responses": [[1, 1], [2, 2], [4, 4]]},
        )
        assert alpha.status_code == 200
        assert alpha.json()["alpha"] == pytest.approx(1.0, abs=1e-9)

        gain = client.post("/api/metrics/gain", json={"pre": 50, "post": 75, "max": 100})
        assert gain.status_code == 200
        assert gain.json()["gain_percent"] == 50.0

    def test_metrics_bad_input_is_400(self):
        response = client.post("/api/metrics/sus", json={"responses": [9] * 10})
        assert response.status_code == 400

    def test_request_order_never_matters(self, golden_doc, golden_task):
        requests = [
            ("/api/model", {"document": document_to_dict(golden_doc), "task": task_to_dict(golden_task)}),
            ("/api/metrics/gain", {"pre": 10, "post": 20, "max": 100}),
            ("/api/metrics/sus", {"responses": [3] * 10}),
        ]
        rng = random.Random(1)
        baseline = {path: client.post(path, json=body).content for path, body in requests}
        for _ in range(3):
            shuffled = list(requests)
            rng.shuffle(shuffled)
            for path, body in shuffled:
                assert client.post(path, json=body).content == baseline[path]


class TestInterfaceParity:
    def test_cli_and_http_agree_on_totals(self, capsys, forms_dir, corpus, tmp_path):
        for name in ("form01_login.html", "form02_signup.html", "form08_selects.html"):
            doc = corpus[name]
            task = canonical_task(doc)
            http_total = client.post(
                "/api/model",
                json={"document": document_to_dict(doc), "task": task_to_dict(task)},
            ).json()["total_seconds"]

            task_file = tmp_path / f"{name}.task.json"
            task_file.write_text(json.dumps(task_to_dict(task)))
            code, out, _ = run_cli(
                capsys, "analyze", "--input", str(forms_dir / name), "--task", str(task_file),
                "--format", "json",
            )
            assert code == EXIT_OK
            cli_total = json.loads(out)["total_seconds"]
            assert f"{cli_total:.6f}" == f"{http_total:.6f}", name
