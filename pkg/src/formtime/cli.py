"""Command line interface: analyze forms, serve the HTTP API, score surveys."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import metrics
from .compare import DesignTaskError, compare_designs, comparison_to_dict
from .engine import TaskValidationError, model_task
from .model import (
    FittsCoefficients,
    MentalPlacementRule,
    Strategy,
    StrategyKind,
    TypingSkill,
    UserProfile,
    validate_task,
)
from .parser import LayoutConfig, apply_layout_overrides, estimate_layout, overrides_from_dict, parse_document
from .serialize import (
    FetchError,
    TaskFormatError,
    fetch_url,
    render_csv,
    render_json,
    render_text,
    seconds_str,
    task_from_dict,
)

EXIT_OK = 0
EXIT_USAGE = 2  # argparse default
EXIT_UNREADABLE = 3
EXIT_BAD_FILE = 4
EXIT_VIOLATIONS = 5
EXIT_FETCH = 6


class _CliError(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(EXIT_UNREADABLE, f"cannot read {path}: {exc}") from exc


def _load_json_file(path: str, what: str) -> dict:
    text = _read_file(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _CliError(EXIT_BAD_FILE, f"{what} file {path} is not valid JSON: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="formtime",
        description="Predict expert, error-free completion times for web form tasks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="model a form-filling task")
    source = analyze.add_mutually_exclusive_group()
    source.add_argument("--input", metavar="PATH", help="HTML file to analyze")
    source.add_argument("--url", metavar="URL", help="URL of the form to analyze")
    analyze.add_argument("--task", metavar="PATH", help="task JSON file", required=True)
    analyze.add_argument(
        "--profile",
        choices=[skill.value for skill in TypingSkill],
        default=TypingSkill.AVERAGE.value,
    )
    analyze.add_argument("--motor-mult", type=float, default=1.0, metavar="R")
    analyze.add_argument("--cognitive-mult", type=float, default=1.0, metavar="R")
    analyze.add_argument(
        "--strategy",
        choices=[kind.value for kind in StrategyKind],
        default=StrategyKind.MOUSE_REACH_KEYBOARD_FILL.value,
    )
    analyze.add_argument("--fitts", action="store_true", help="apply Fitts' law to pointing")
    analyze.add_argument("--fitts-a", type=float, default=0.1, metavar="S")
    analyze.add_argument("--fitts-b", type=float, default=0.15, metavar="S")
    analyze.add_argument(
        "--mental",
        choices=[rule.value for rule in MentalPlacementRule],
        default=MentalPlacementRule.ONCE_PER_ELEMENT.value,
    )
    analyze.add_argument("--layout", metavar="PATH", help="layout config JSON")
    analyze.add_argument("--overrides", metavar="PATH", help="geometry override JSON")
    analyze.add_argument("--format", choices=["text", "json", "csv"], default="text")
    analyze.add_argument("--explain", action="store_true", help="append the explanation trace")
    analyze.add_argument(
        "--compare",
        action="append",
        default=[],
        metavar="LABEL=PATH",
        help="compare designs (repeat >= 2 times; replaces --input)",
    )
    analyze.add_argument("--timeout", type=float, default=10.0, help="URL fetch timeout seconds")
    analyze.add_argument("--offline", action="store_true", help="refuse network access")

    serve = sub.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--ui", metavar="DIR", help="also serve a built web UI from this directory")

    sus = sub.add_parser("sus", help="score System Usability Scale responses")
    sus_source = sus.add_mutually_exclusive_group(required=True)
    sus_source.add_argument(
        "--responses",
        action="append",
        metavar="N,N,...",
        help="10 comma-separated items 1..5 (repeat per respondent)",
    )
    sus_source.add_argument("--csv", metavar="PATH", help="survey CSV (header + rows)")

    alpha = sub.add_parser("alpha", help="Cronbach's alpha of a survey CSV")
    alpha.add_argument("--csv", metavar="PATH", required=True)
    alpha.add_argument("--scale-min", type=int, default=1)
    alpha.add_argument("--scale-max", type=int, default=5)

    gain = sub.add_parser("gain", help="normalized learning gain")
    gain.add_argument("--pre", type=float, required=True)
    gain.add_argument("--post", type=float, required=True)
    gain.add_argument("--max", type=float, required=True, dest="max_score")

    return parser


def _load_document(args, html: str, source: str, layout: LayoutConfig, overrides: Optional[dict]):
    parsed = parse_document(html, source=source)
    doc = estimate_layout(parsed.document, layout)
    if overrides:
        doc = apply_layout_overrides(doc, overrides_from_dict(overrides))
    return doc, parsed.diagnostics


def _analyze(args) -> int:
    if args.compare and len(args.compare) < 2:
        raise _CliError(EXIT_USAGE, "--compare needs at least two LABEL=PATH designs")
    if not args.compare and not (args.input or args.url):
        raise _CliError(EXIT_USAGE, "one of --input/--url (or --compare) is required")

    layout = LayoutConfig()
    if args.layout:
        data = _load_json_file(args.layout, "layout config")
        try:
            layout = LayoutConfig.from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise _CliError(EXIT_BAD_FILE, f"bad layout config {args.layout}: {exc}") from exc
    overrides = _load_json_file(args.overrides, "geometry override") if args.overrides else None

    task_data = _load_json_file(args.task, "task")
    try:
        task = task_from_dict(task_data)
    except TaskFormatError as exc:
        raise _CliError(EXIT_BAD_FILE, f"bad task file {args.task}: {exc}") from exc

    profile = UserProfile(
        typing_skill=TypingSkill(args.profile),
        motor_multiplier=args.motor_mult,
        cognitive_multiplier=args.cognitive_mult,
    )
    strategy = Strategy(StrategyKind(args.strategy))
    rule = MentalPlacementRule(args.mental)
    fitts = FittsCoefficients(a=args.fitts_a, b=args.fitts_b) if args.fitts else None

    if args.compare:
        designs = []
        for spec in args.compare:
            label, sep, path = spec.partition("=")
            if not sep or not label or not path:
                raise _CliError(EXIT_USAGE, f"--compare expects LABEL=PATH, got {spec!r}")
            html = _read_file(path)
            doc, _ = _load_document(args, html, path, layout, overrides)
            designs.append((label, doc))
        try:
            report = compare_designs(
                designs, task, profile=profile, strategy=strategy, rule=rule, fitts=fitts
            )
        except DesignTaskError as exc:
            raise _CliError(EXIT_VIOLATIONS, str(exc)) from exc
        if args.format == "json":
            print(json.dumps(comparison_to_dict(report, include_explanation=args.explain),
                             indent=2, sort_keys=True))
        elif args.format == "csv":
            print("label,total_seconds")
            for label, result in report.results:
                print(f"{label},{seconds_str(result.total_us)}")
            print(f"winner,{report.winner}")
        else:
            for label, result in report.results:
                marker = "*" if label == report.winner else " "
                print(f"{marker} {label:<20} {seconds_str(result.total_us)}s")
            for a, b, delta_us in report.deltas:
                if delta_us == 0:
                    print(f"  {a} vs {b}: tie")
                else:
                    faster = b if delta_us > 0 else a
                    print(f"  {a} vs {b}: {seconds_str(abs(delta_us))}s in favor of {faster}")
            print(f"winner: {report.winner}")
        return EXIT_OK

    if args.url:
        try:
            html = fetch_url(args.url, timeout=args.timeout, offline=args.offline)
        except FetchError as exc:
            raise _CliError(EXIT_FETCH, str(exc)) from exc
        source = args.url
    else:
        html = _read_file(args.input)
        source = args.input

    doc, diagnostics = _load_document(args, html, source, layout, overrides)
    violations = validate_task(doc, task)
    if violations:
        for violation in violations:
            print(f"violation: {violation.message}", file=sys.stderr)
        raise _CliError(EXIT_VIOLATIONS, f"task has {len(violations)} violation(s)")

    result = model_task(
        doc, task, profile=profile, strategy=strategy, rule=rule, fitts=fitts
    )
    for diagnostic in diagnostics:
        print(f"note: {diagnostic}", file=sys.stderr)
    if args.format == "json":
        print(render_json(result, explain=args.explain))
    elif args.format == "csv":
        print(render_csv(result), end="")
    else:
        print(render_text(result, explain=args.explain), end="")
    return EXIT_OK


def _sus(args) -> int:
    if args.csv:
        matrix = metrics.load_survey_csv(_read_file(args.csv))
        rows = matrix.responses.tolist()
    else:
        try:
            rows = [[int(cell) for cell in spec.split(",")] for spec in args.responses]
        except ValueError as exc:
            raise _CliError(EXIT_BAD_FILE, f"bad --responses value: {exc}") from exc
    try:
        scores = metrics.sus_scores(rows)
    except ValueError as exc:
        raise _CliError(EXIT_BAD_FILE, str(exc)) from exc
    mean = sum(scores) / len(scores)
    for i, score in enumerate(scores):
        print(f"respondent {i}: {score:.1f}")
    print(f"mean SUS score: {mean:.1f}")
    print(f"band: {metrics.sus_band(mean)}")
    return EXIT_OK


def _alpha(args) -> int:
    try:
        matrix = metrics.load_survey_csv(
            _read_file(args.csv), scale_min=args.scale_min, scale_max=args.scale_max
        )
        value = metrics.cronbach_alpha(matrix)
    except ValueError as exc:
        raise _CliError(EXIT_BAD_FILE, str(exc)) from exc
    print(f"cronbach alpha: {value:.3f} (n={matrix.n_respondents}, k={matrix.n_items})")
    return EXIT_OK


def _gain(args) -> int:
    try:
        value = metrics.normalized_gain(args.pre, args.post, args.max_score)
    except ValueError as exc:
        raise _CliError(EXIT_BAD_FILE, str(exc)) from exc
    print(f"normalized gain: {value:.2f}%")
    return EXIT_OK


def _serve(args) -> int:
    import uvicorn

    from .api import app

    if args.ui:
        if not Path(args.ui).is_dir():
            raise _CliError(EXIT_UNREADABLE, f"UI directory not found: {args.ui}")
        from fastapi.staticfiles import StaticFiles

        # mounted last, so /api/* keeps precedence
        app.mount("/", StaticFiles(directory=args.ui, html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": _analyze,
        "serve": _serve,
        "sus": _sus,
        "alpha": _alpha,
        "gain": _gain,
    }
    try:
        return handlers[args.command](args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except TaskValidationError as exc:
        for violation in exc.violations:
            print(f"violation: {violation.message}", file=sys.stderr)
        return EXIT_VIOLATIONS


if __name__ == "__main__":
    sys.exit(main())
