"""
Process-isolated execution of untrusted Python submissions.

Each submission runs in its own interpreter process with a fresh empty
working directory and CPU/memory limits; the parent enforces a wall-clock
timeout on top. The child reports back over the one-line JSON protocol, and
the engine never loads submitted code in-process.
"""
from __future__ import annotations

import json
import math
import subprocess
import sys
import tempfile
from dataclasses import dataclass
from typing import Iterable

from .child import DEFAULT_ALLOWLIST

OK = "ok"
RUNTIME_ERROR = "runtime_error"
MODULE_VIOLATION = "module_violation"


@dataclass(frozen=True)
class AdapterResult:
    """Outcome of one submission: exactly one of qasm / error_text is set."""

    status: str
    qasm: str | None = None
    error_text: str | None = None

    def __post_init__(self):
        if self.status not in (OK, RUNTIME_ERROR, MODULE_VIOLATION):
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == OK) != (self.qasm is not None):
            raise ValueError("qasm must be set exactly when status is ok")
        if (self.status != OK) != (self.error_text is not None):
            raise ValueError("error_text must be set exactly on failure")

    def to_json_line(self) -> str:
        return json.dumps({"status": self.status, "qasm": self.qasm,
                           "error_text": self.error_text})


def execute_submission(source: str,
                       import_allowlist: Iterable[str] = DEFAULT_ALLOWLIST,
                       timeout: float = 10.0) -> AdapterResult:
    """Run ``source`` (which must define solve()) in a sandboxed subprocess."""
    argv = [sys.executable, "-m", "qcadapter.child",
            "--allow", ",".join(sorted(set(import_allowlist))),
            "--cpu-seconds", str(max(1, math.ceil(timeout)))]
    with tempfile.TemporaryDirectory(prefix="qcadapter-") as workdir:
        try:
            proc = subprocess.run(argv, input=source, capture_output=True,
                                  text=True, timeout=timeout, cwd=workdir)
        except subprocess.TimeoutExpired:
            return AdapterResult(RUNTIME_ERROR,
                                 error_text=f"submission timed out after "
                                            f"{timeout:g} s")
    lines = [line for line in proc.stdout.splitlines() if line.strip()]
    if not lines:
        detail = proc.stderr.strip().splitlines()
        tail = detail[-1] if detail else f"exit status {proc.returncode}"
        return AdapterResult(RUNTIME_ERROR,
                             error_text=f"submission produced no result: {tail}")
    try:
        payload = json.loads(lines[-1])
        return AdapterResult(payload["status"], payload.get("qasm"),
                             payload.get("error_text"))
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        return AdapterResult(RUNTIME_ERROR,
                             error_text=f"malformed sandbox result: {exc}")
