"""
HTTP evaluation service.

POST /evaluate takes {problem_id, language, source} and returns the verdict,
the byte-stable report line, and (for failures) the rendered feedback prompt.
GET /problems lists id/statement/constraints only; reference states and
solutions are never exposed.

Python submissions are delegated to an external adapter process speaking the
line protocol documented in the adapter package: submission on stdin, one
JSON result line on stdout.
"""
from __future__ import annotations

import concurrent.futures
import json
import os
import shlex
import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import yaml
from fastapi import FastAPI, Header, HTTPException
from pydantic import BaseModel

from .bank import constraints_summary, default_bank_path, load_bank
from .pipeline import (EvaluationReport, Verdict, evaluate, render_feedback,
                       report_from_adapter_failure, report_json)
from .qasm import ADAPTER_EXPORT, SourceProgram
from .simulate import MAX_QUBITS

QASM = "qasm"
QISKIT_PYTHON = "qiskit_python"

_ENV_KEYS = {"bank_path": "QCJUDGE_BANK", "host": "QCJUDGE_HOST",
             "port": "QCJUDGE_PORT", "qubit_cap": "QCJUDGE_QUBIT_CAP",
             "timeout_seconds": "QCJUDGE_TIMEOUT",
             "adapter_command": "QCJUDGE_ADAPTER_COMMAND",
             "shared_secret": "QCJUDGE_SHARED_SECRET"}


class AdapterUnavailable(RuntimeError):
    """The Python adapter is missing, unspawnable, or speaking garbage."""


@dataclass(frozen=True)
class ServiceConfig:
    bank_path: Path = None  # type: ignore[assignment]  # filled in __post_init__
    host: str = "127.0.0.1"
    port: int = 8000
    qubit_cap: int = MAX_QUBITS
    timeout_seconds: float = 10.0
    adapter_command: str | None = None
    shared_secret: str | None = None

    def __post_init__(self):
        if self.bank_path is None:
            object.__setattr__(self, "bank_path", default_bank_path())
        object.__setattr__(self, "bank_path", Path(self.bank_path))


def load_config(config_file: Path | None = None, env=os.environ) -> ServiceConfig:
    """Config file values overridden per-key by QCJUDGE_* environment variables."""
    values: dict = {}
    if config_file is not None:
        raw = yaml.safe_load(Path(config_file).read_text()) or {}
        if not isinstance(raw, dict):
            raise ValueError(f"{config_file}: expected a mapping")
        unknown = set(raw) - set(_ENV_KEYS)
        if unknown:
            raise ValueError(f"{config_file}: unknown key {sorted(unknown)[0]!r}")
        values.update(raw)
    for field_name, env_key in _ENV_KEYS.items():
        if env_key in env:
            values[field_name] = env[env_key]
    if "port" in values:
        values["port"] = int(values["port"])
    if "qubit_cap" in values:
        values["qubit_cap"] = int(values["qubit_cap"])
    if "timeout_seconds" in values:
        values["timeout_seconds"] = float(values["timeout_seconds"])
    return ServiceConfig(**values)


class EvaluateRequest(BaseModel):
    problem_id: str
    language: Literal["qasm", "qiskit_python"] = QASM
    source: str


class EvaluateResponse(BaseModel):
    verdict: str
    report: str
    feedback: str | None = None


def evaluate_with_timeout(source: SourceProgram | str, problem,
                          qubit_cap: int, timeout: float) -> EvaluationReport:
    """Evaluate with a wall-clock bound; a timeout reports RE.

    The worker thread is abandoned on timeout (evaluation is pure and the
    qubit cap bounds its memory), so the request never hangs.
    """
    executor = concurrent.futures.ThreadPoolExecutor(max_workers=1)
    try:
        future = executor.submit(evaluate, source, problem, qubit_cap)
        try:
            return future.result(timeout=timeout)
        except concurrent.futures.TimeoutError:
            return EvaluationReport(
                Verdict.RE, runtime_error=True,
                error_text=f"evaluation timed out after {timeout:g} s",
                unevaluated=("gate_set", "depth", "state"))
    finally:
        executor.shutdown(wait=False)


def run_adapter(command: str, source: str, timeout: float) -> dict:
    """Invoke the Python adapter: source on stdin, one JSON line on stdout."""
    try:
        proc = subprocess.run(shlex.split(command), input=source,
                              capture_output=True, text=True, timeout=timeout)
    except FileNotFoundError as exc:
        raise AdapterUnavailable(f"adapter command not found: {exc}")
    except OSError as exc:
        raise AdapterUnavailable(f"could not spawn adapter: {exc}")
    except subprocess.TimeoutExpired:
        return {"status": "runtime_error",
                "error_text": f"submission timed out after {timeout:g} s"}
    lines = [line for line in proc.stdout.splitlines() if line.strip()]
    if proc.returncode != 0 or not lines:
        raise AdapterUnavailable(
            f"adapter exited {proc.returncode} without a result line: "
            f"{proc.stderr.strip()[:400]}")
    try:
        result = json.loads(lines[-1])
    except json.JSONDecodeError:
        raise AdapterUnavailable(f"adapter produced a malformed result line: "
                                 f"{lines[-1][:200]}")
    if result.get("status") not in ("ok", "runtime_error", "module_violation"):
        raise AdapterUnavailable(f"adapter reported unknown status "
                                 f"{result.get('status')!r}")
    return result


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    """Build the service around an immutable, eagerly loaded problem bank."""
    config = config or ServiceConfig()
    problems = {p.id: p for p in load_bank(config.bank_path)}
    app = FastAPI(title="qcjudge", version="0.1.0")

    def check_auth(token: str | None):
        if config.shared_secret is not None and token != config.shared_secret:
            raise HTTPException(status_code=401, detail="bad or missing auth token")

    @app.get("/problems")
    def list_problems(x_auth_token: str | None = Header(default=None)):
        check_auth(x_auth_token)
        return [{"id": p.id, "statement": p.statement,
                 "constraints": constraints_summary(p)}
                for p in sorted(problems.values(), key=lambda p: p.id)]

    @app.post("/evaluate", response_model=EvaluateResponse)
    def evaluate_submission(request: EvaluateRequest,
                            x_auth_token: str | None = Header(default=None)):
        check_auth(x_auth_token)
        problem = problems.get(request.problem_id)
        if problem is None:
            raise HTTPException(status_code=404,
                                detail=f"unknown problem id {request.problem_id!r}")
        if request.language == QISKIT_PYTHON:
            if not config.adapter_command:
                raise HTTPException(status_code=503,
                                    detail="no Python adapter is configured")
            try:
                result = run_adapter(config.adapter_command, request.source,
                                     timeout=config.timeout_seconds + 5.0)
            except AdapterUnavailable as exc:
                raise HTTPException(status_code=503, detail=str(exc))
            if result["status"] == "ok":
                exported = SourceProgram(result.get("qasm") or "",
                                         origin=ADAPTER_EXPORT)
                report = evaluate_with_timeout(exported, problem,
                                               config.qubit_cap,
                                               config.timeout_seconds)
            else:
                report = report_from_adapter_failure(
                    result["status"], result.get("error_text") or "adapter failure")
        else:
            report = evaluate_with_timeout(request.source, problem,
                                           config.qubit_cap,
                                           config.timeout_seconds)
        feedback = None
        if report.verdict is not Verdict.AC:
            feedback = render_feedback(report, request.source)
        return EvaluateResponse(verdict=report.verdict.value,
                                report=report_json(report), feedback=feedback)

    return app


def serve(config: ServiceConfig):
    """Run the service under uvicorn (blocking)."""
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port)
