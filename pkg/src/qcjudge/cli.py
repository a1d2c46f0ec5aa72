"""
Operator CLI: evaluate one submission, serve the HTTP API, run a refinement
session, or compute metrics over recorded sessions.
"""
from __future__ import annotations

import argparse
import sys
import time
import uuid
from dataclasses import replace
from pathlib import Path

from .bank import default_bank_path, load_bank
from .pipeline import Verdict, render_feedback, report_from_adapter_failure, report_json
from .qasm import ADAPTER_EXPORT, SourceProgram
from .refine import (DEFAULT_MAX_ROUNDS, generator_from_spec, load_sessions,
                     compute_metrics, render_metrics, run_session)
from .service import (AdapterUnavailable, ServiceConfig, evaluate_with_timeout,
                      load_config, run_adapter, serve)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcjudge",
                                     description="quantum circuit judge")
    sub = parser.add_subparsers(dest="verb", required=True)

    p_eval = sub.add_parser("evaluate", help="judge one submission file")
    p_eval.add_argument("problem_id")
    p_eval.add_argument("file", type=Path)
    p_eval.add_argument("--bank", type=Path, default=None)
    p_eval.add_argument("--language", choices=["qasm", "qiskit_python"],
                        default=None, help="defaults by file extension")
    p_eval.add_argument("--adapter-command", default=None,
                        help="adapter invocation for qiskit_python submissions")
    p_eval.add_argument("--feedback", action="store_true",
                        help="also print the refinement feedback on failure")

    p_serve = sub.add_parser("serve", help="run the HTTP evaluation service")
    p_serve.add_argument("--bank", type=Path, default=None)
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--host", default=None)
    p_serve.add_argument("--config", type=Path, default=None)

    p_refine = sub.add_parser("refine", help="run one refinement session")
    p_refine.add_argument("problem_id")
    p_refine.add_argument("--generator", required=True,
                          help="script:<files>|command:<cmd>|http:<url>")
    p_refine.add_argument("--max-rounds", type=int, default=DEFAULT_MAX_ROUNDS)
    p_refine.add_argument("--bank", type=Path, default=None)
    p_refine.add_argument("--log-dir", type=Path, default=Path("sessions"))

    p_metrics = sub.add_parser("metrics", help="aggregate recorded sessions")
    p_metrics.add_argument("session_dir", type=Path)
    p_metrics.add_argument("--round", type=int, default=None)
    return parser


def _find_problem(bank_path: Path | None, problem_id: str):
    bank = load_bank(bank_path or default_bank_path())
    for problem in bank:
        if problem.id == problem_id:
            return problem
    print(f"error: unknown problem id {problem_id!r}", file=sys.stderr)
    raise SystemExit(2)


def _cmd_evaluate(args, config: ServiceConfig) -> int:
    problem = _find_problem(args.bank, args.problem_id)
    source = args.file.read_text()
    language = args.language or ("qiskit_python" if args.file.suffix == ".py"
                                 else "qasm")
    if language == "qiskit_python":
        command = args.adapter_command or config.adapter_command
        if not command:
            print("error: no adapter command configured for qiskit_python "
                  "(use --adapter-command or QCJUDGE_ADAPTER_COMMAND)",
                  file=sys.stderr)
            return 2
        try:
            result = run_adapter(command, source, config.timeout_seconds + 5.0)
        except AdapterUnavailable as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        if result["status"] == "ok":
            report = evaluate_with_timeout(
                SourceProgram(result.get("qasm") or "", origin=ADAPTER_EXPORT),
                problem, config.qubit_cap, config.timeout_seconds)
        else:
            report = report_from_adapter_failure(
                result["status"], result.get("error_text") or "adapter failure")
    else:
        report = evaluate_with_timeout(source, problem, config.qubit_cap,
                                       config.timeout_seconds)
    print(report_json(report))
    if args.feedback and report.verdict is not Verdict.AC:
        print(render_feedback(report, source))
    return 0 if report.verdict is Verdict.AC else 1


def _cmd_refine(args, config: ServiceConfig) -> int:
    problem = _find_problem(args.bank, args.problem_id)
    try:
        generator = generator_from_spec(args.generator)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    stamp = time.strftime("%Y%m%dT%H%M%S")
    log_path = args.log_dir / f"{problem.id}-{stamp}-{uuid.uuid4().hex[:8]}.jsonl"
    session = run_session(problem, generator, max_rounds=args.max_rounds,
                          log_path=log_path)
    verdicts = [a.report.verdict.value for a in session.attempts]
    print(f"verdicts: {verdicts}")
    print(f"outcome: {session.outcome}")
    print(f"log: {log_path}")
    return 0 if session.outcome == "solved" else 1


def _cmd_metrics(args) -> int:
    try:
        sessions = load_sessions(args.session_dir)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    at_round = args.round or max(s.max_rounds for s in sessions)
    print(render_metrics(compute_metrics(sessions, at_round)))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    config = load_config()
    if args.verb == "evaluate":
        return _cmd_evaluate(args, config)
    if args.verb == "serve":
        if args.config is not None:
            config = load_config(args.config)
        updates = {key: value for key, value in
                   (("bank_path", args.bank), ("port", args.port), ("host", args.host))
                   if value is not None}
        if updates:
            config = replace(config, **updates)
        serve(config)
        return 0
    if args.verb == "refine":
        return _cmd_refine(args, config)
    return _cmd_metrics(args)


if __name__ == "__main__":
    sys.exit(main())
