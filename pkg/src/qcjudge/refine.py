"""
Feedback-driven refinement loop and its metrics.

A session repeatedly asks a generator for a submission, evaluates it, and
feeds the failure report back into the next prompt, stopping at the first
accepted attempt or after ``max_rounds`` rounds. Generators are plain
callables ``prompt -> source text`` raising :class:`GeneratorError` on
declared failure; scripted replay, external-command, and HTTP chat-endpoint
implementations ship here (tests exercise the scripted one).

Session logs are append-only JSON-lines files: a ``session_start`` record,
one ``attempt`` record per round, and a ``session_end`` record.
"""
from __future__ import annotations

import json
import os
import subprocess
import time
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .bank import ProblemSpec, render_prompt
from .pipeline import (EvaluationReport, Verdict, evaluate, render_feedback,
                       report_from_dict, report_to_dict)

DEFAULT_MAX_ROUNDS = 3

SOLVED = "solved"
EXHAUSTED = "exhausted"
GENERATOR_FAILED = "generator_failed"

GeneratorPort = Callable[[str], str]

# Verdict -> metrics category; the six rates partition the session set.
CATEGORY_BY_VERDICT = {
    Verdict.AC: "success",
    Verdict.RE: "runtime_error",
    Verdict.UGE: "gate_violation",
    Verdict.UME: "module_violation",
    Verdict.DLE: "depth_violation",
    Verdict.WA: "wrong_output",
}
CATEGORIES = ("success", "runtime_error", "gate_violation", "module_violation",
              "depth_violation", "wrong_output")


class GeneratorError(RuntimeError):
    """A generator could not produce a submission."""


@dataclass(frozen=True)
class Attempt:
    prompt: str
    source: str
    report: EvaluationReport


@dataclass(frozen=True)
class RefinementSession:
    problem_id: str
    attempts: tuple[Attempt, ...]
    max_rounds: int
    outcome: str

    def __post_init__(self):
        if self.outcome not in (SOLVED, EXHAUSTED, GENERATOR_FAILED):
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if len(self.attempts) > self.max_rounds:
            raise ValueError("more attempts than max_rounds")
        solved = bool(self.attempts) and self.attempts[-1].report.verdict is Verdict.AC
        if (self.outcome == SOLVED) != solved:
            raise ValueError("outcome inconsistent with final verdict")
        if any(a.report.verdict is Verdict.AC for a in self.attempts[:-1]):
            raise ValueError("no attempt may follow an accepted one")


class ScriptedGenerator:
    """Replays a fixed list of sources, ignoring prompts; offline and exact."""

    def __init__(self, sources: Sequence[str]):
        self._sources = list(sources)
        self._next = 0

    @classmethod
    def from_files(cls, paths: Sequence[Path | str]) -> "ScriptedGenerator":
        return cls([Path(p).read_text() for p in paths])

    def __call__(self, prompt: str) -> str:
        if self._next >= len(self._sources):
            raise GeneratorError(f"script exhausted after {self._next} attempts")
        source = self._sources[self._next]
        self._next += 1
        return source


class CommandGenerator:
    """Spawns a subprocess per round: prompt on stdin, source on stdout.

    A nonzero exit status or spawn failure is a generator failure.
    """

    def __init__(self, argv: Sequence[str], timeout: float = 120.0):
        if not argv:
            raise ValueError("command generator needs a command")
        self.argv = list(argv)
        self.timeout = timeout

    def __call__(self, prompt: str) -> str:
        try:
            proc = subprocess.run(self.argv, input=prompt, capture_output=True,
                                  text=True, timeout=self.timeout)
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise GeneratorError(f"generator command failed: {exc}")
        if proc.returncode != 0:
            raise GeneratorError(
                f"generator command exited {proc.returncode}: "
                f"{proc.stderr.strip()[:400]}")
        return proc.stdout


class HttpGenerator:
    """Posts the prompt to a chat-completions-style endpoint.

    The bearer token is read from ``api_key_env`` (default
    ``QCJUDGE_GENERATOR_API_KEY``); never stored in config files.
    """

    def __init__(self, url: str, model: str = "default",
                 api_key_env: str = "QCJUDGE_GENERATOR_API_KEY",
                 timeout: float = 120.0):
        self.url = url
        self.model = model
        self.api_key_env = api_key_env
        self.timeout = timeout

    def __call__(self, prompt: str) -> str:
        payload = json.dumps({"model": self.model,
                              "messages": [{"role": "user", "content": prompt}]})
        request = urllib.request.Request(
            self.url, data=payload.encode(), method="POST",
            headers={"Content-Type": "application/json"})
        key = os.environ.get(self.api_key_env)
        if key:
            request.add_header("Authorization", f"Bearer {key}")
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as response:
                body = json.loads(response.read().decode())
            return body["choices"][0]["message"]["content"]
        except Exception as exc:
            raise GeneratorError(f"generator endpoint failed: {exc}")


def generator_from_spec(spec: str) -> GeneratorPort:
    """Build a generator from a CLI spec string.

    ``script:<file>[,<file>...]`` | ``command:<shell words>`` | ``http:<url>``
    """
    scheme, _, rest = spec.partition(":")
    if scheme == "script" and rest:
        return ScriptedGenerator.from_files(rest.split(","))
    if scheme == "command" and rest:
        return CommandGenerator(rest.split())
    if scheme == "http" and rest:
        return HttpGenerator(rest)
    raise ValueError(f"unrecognized generator spec {spec!r}")


class _SessionLog:
    def __init__(self, path: Path | None):
        self.path = Path(path) if path is not None else None
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)

    def write(self, record: dict):
        if self.path is None:
            return
        record = dict(record, time=time.strftime("%Y-%m-%dT%H:%M:%S%z"))
        with self.path.open("a") as handle:
            handle.write(json.dumps(record) + "\n")


def run_session(problem: ProblemSpec, generator: GeneratorPort,
                max_rounds: int = DEFAULT_MAX_ROUNDS,
                log_path: Path | None = None) -> RefinementSession:
    """Generate/evaluate/refine until accepted or out of rounds.

    Round 1 sends the baseline prompt; round k > 1 sends the baseline plus the
    feedback rendered from round k-1's report and source. The generator is
    never called again after an accepted attempt.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    log = _SessionLog(log_path)
    base_prompt = render_prompt(problem)
    log.write({"event": "session_start", "problem_id": problem.id,
               "max_rounds": max_rounds})
    prompt = base_prompt
    attempts: list[Attempt] = []
    outcome = EXHAUSTED
    for round_no in range(1, max_rounds + 1):
        try:
            source = generator(prompt)
        except GeneratorError as exc:
            log.write({"event": "generator_failure", "round": round_no,
                       "error": str(exc)})
            outcome = GENERATOR_FAILED
            break
        report = evaluate(source, problem)
        attempts.append(Attempt(prompt, source, report))
        log.write({"event": "attempt", "round": round_no, "prompt": prompt,
                   "source": source, "report": report_to_dict(report)})
        if report.verdict is Verdict.AC:
            outcome = SOLVED
            break
        prompt = base_prompt + "\n" + render_feedback(report, source)
    log.write({"event": "session_end", "outcome": outcome})
    return RefinementSession(problem.id, tuple(attempts), max_rounds, outcome)


@dataclass(frozen=True)
class MetricsTable:
    """Per-category percentage rates over a session set at a given round."""

    n_sessions: int
    at_round: int
    success: float
    runtime_error: float
    gate_violation: float
    module_violation: float
    depth_violation: float
    wrong_output: float
    success_by_iteration: tuple[float, ...]

    def rates(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in CATEGORIES}

    def condensed_view(self) -> dict[str, float]:
        """Four-column view folding gate/module violations into runtime errors.

        This folding is an interpretation for comparing against reports that
        publish only success/runtime/depth/wrong-output columns; the six-way
        breakdown above is the ground truth.
        """
        return {"success": self.success,
                "runtime_error": self.runtime_error + self.gate_violation
                                 + self.module_violation,
                "depth_violation": self.depth_violation,
                "wrong_output": self.wrong_output}


def _verdict_at_round(session: RefinementSession, round_no: int) -> Verdict:
    if not session.attempts:
        raise ValueError(f"session for {session.problem_id!r} has no attempts")
    index = min(round_no, len(session.attempts)) - 1
    return session.attempts[index].report.verdict


def _succeeded_by(session: RefinementSession, round_no: int) -> bool:
    return any(a.report.verdict is Verdict.AC
               for a in session.attempts[:round_no])


def compute_metrics(sessions: Sequence[RefinementSession],
                    at_round: int) -> MetricsTable:
    """Category rates at ``at_round``: success is cumulative, failures are the
    verdict of the attempt in effect at that round."""
    if not sessions:
        raise ValueError("cannot compute metrics over an empty session list")
    if at_round < 1:
        raise ValueError("at_round must be >= 1")
    counts = {name: 0 for name in CATEGORIES}
    for session in sessions:
        if _succeeded_by(session, at_round):
            counts["success"] += 1
        else:
            counts[CATEGORY_BY_VERDICT[_verdict_at_round(session, at_round)]] += 1
    total = len(sessions)
    rates = {name: 100.0 * count / total for name, count in counts.items()}
    return MetricsTable(n_sessions=total, at_round=at_round,
                        success_by_iteration=tuple(success_curve(sessions, at_round)),
                        **rates)


def success_curve(sessions: Sequence[RefinementSession],
                  max_round: int) -> list[float]:
    """Success rate per round, rounds 1..max_round; non-decreasing by
    construction (success at round r counts any accepted attempt <= r)."""
    if max_round < 1:
        raise ValueError("max_round must be >= 1")
    if not sessions:
        raise ValueError("cannot compute a success curve over no sessions")
    total = len(sessions)
    return [100.0 * sum(_succeeded_by(s, r) for s in sessions) / total
            for r in range(1, max_round + 1)]


def render_metrics(table: MetricsTable) -> str:
    """Human-readable metrics block used by the CLI."""
    lines = [f"sessions: {table.n_sessions}   round: {table.at_round}"]
    for name in CATEGORIES:
        lines.append(f"{name:>17s}: {getattr(table, name):6.2f}%")
    curve = ", ".join(f"{rate:.2f}%" for rate in table.success_by_iteration)
    lines.append(f"success by iteration: [{curve}]")
    return "\n".join(lines)


def write_session_log(session: RefinementSession, path: Path):
    """Write a completed session as one JSON-lines log file."""
    log = _SessionLog(path)
    log.write({"event": "session_start", "problem_id": session.problem_id,
               "max_rounds": session.max_rounds})
    for round_no, attempt in enumerate(session.attempts, start=1):
        log.write({"event": "attempt", "round": round_no, "prompt": attempt.prompt,
                   "source": attempt.source,
                   "report": report_to_dict(attempt.report)})
    log.write({"event": "session_end", "outcome": session.outcome})


def load_session(path: Path) -> RefinementSession:
    problem_id, max_rounds, outcome = "", DEFAULT_MAX_ROUNDS, EXHAUSTED
    attempts: list[Attempt] = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        if record["event"] == "session_start":
            problem_id = record["problem_id"]
            max_rounds = record["max_rounds"]
        elif record["event"] == "attempt":
            attempts.append(Attempt(record["prompt"], record["source"],
                                    report_from_dict(record["report"])))
        elif record["event"] == "session_end":
            outcome = record["outcome"]
    return RefinementSession(problem_id, tuple(attempts), max_rounds, outcome)


def load_sessions(directory: Path) -> list[RefinementSession]:
    """Load every ``*.jsonl`` session log under ``directory``."""
    paths = sorted(Path(directory).glob("*.jsonl"))
    if not paths:
        raise ValueError(f"{directory}: no session logs found")
    return [load_session(p) for p in paths]
