"""
Sandbox child: runs one submission and prints a single JSON result line.

Invoked by the runner in a fresh working directory with CPU/memory limits.
The submission arrives on stdin; it must define ``solve()`` returning a
circuit object. Import statements in the submission are checked statically
against the allowlist before anything executes; OS-level process isolation
is the enforcement boundary for everything else.
"""
from __future__ import annotations

import argparse
import ast
import json
import resource
import sys
from pathlib import Path

DEFAULT_ALLOWLIST = ("qiskit", "math", "cmath", "numpy")

CPU_SECONDS = 10
ADDRESS_SPACE_BYTES = 2 << 30


def _result(status: str, qasm: str | None = None, error_text: str | None = None):
    print(json.dumps({"status": status, "qasm": qasm, "error_text": error_text}))


def _first_line(exc: BaseException) -> str:
    text = f"{type(exc).__name__}: {exc}"
    return text.splitlines()[0] if text else type(exc).__name__


def _imported_modules(source: str) -> list[str]:
    tree = ast.parse(source)
    names = []
    for node in ast.walk(tree):
        if isinstance(node, ast.Import):
            names.extend(alias.name.split(".")[0] for alias in node.names)
        elif isinstance(node, ast.ImportFrom) and node.level == 0 and node.module:
            names.append(node.module.split(".")[0])
    return names


def _ensure_shim_importable():
    # Prefer a real SDK when present; otherwise serve the bundled shim.
    try:
        import qiskit  # noqa: F401
    except ImportError:
        sys.path.insert(0, str(Path(__file__).parent / "vendor"))


def _set_limits(cpu_seconds: int):
    resource.setrlimit(resource.RLIMIT_CPU, (cpu_seconds, cpu_seconds + 1))
    try:
        resource.setrlimit(resource.RLIMIT_AS,
                           (ADDRESS_SPACE_BYTES, ADDRESS_SPACE_BYTES))
    except (ValueError, OSError):
        pass  # some hosts forbid lowering it; CPU limit still applies


def main(argv=None) -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--allow", default=",".join(DEFAULT_ALLOWLIST))
    parser.add_argument("--cpu-seconds", type=int, default=CPU_SECONDS)
    args = parser.parse_args(argv)
    allowlist = {name.strip() for name in args.allow.split(",") if name.strip()}

    _set_limits(args.cpu_seconds)
    _ensure_shim_importable()
    source = sys.stdin.read()

    try:
        offending = [name for name in _imported_modules(source)
                     if name not in allowlist]
    except SyntaxError as exc:
        _result("runtime_error", error_text=_first_line(exc))
        return 0
    if offending:
        _result("module_violation",
                error_text=f"module {offending[0]!r} is not in the import "
                           f"allowlist")
        return 0

    from .export import export_qasm

    namespace = {"__name__": "__submission__"}
    try:
        exec(compile(source, "<submission>", "exec"), namespace)
        solve = namespace.get("solve")
        if not callable(solve):
            raise NameError("solve() is not defined")
        circuit = solve()
        if circuit is None or not hasattr(circuit, "data") \
                or not hasattr(circuit, "num_qubits"):
            raise TypeError("solve() must return a QuantumCircuit")
        qasm = export_qasm(circuit)
    except BaseException as exc:  # untrusted code: report, never crash
        _result("runtime_error", error_text=_first_line(exc))
        return 0
    _result("ok", qasm=qasm)
    return 0


if __name__ == "__main__":
    sys.exit(main())
