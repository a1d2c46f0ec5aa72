"""
qcadapter: sandboxed execution of Python quantum-circuit submissions.

Runs a submission's ``solve() -> QuantumCircuit`` in an isolated subprocess,
classifies Python-level failures (runtime errors, unauthorized imports), and
exports the built circuit as judging-engine QASM.
"""
from .export import export_qasm
from .runner import (AdapterResult, MODULE_VIOLATION, OK, RUNTIME_ERROR,
                     execute_submission)

__version__ = "0.1.0"

__all__ = ["AdapterResult", "MODULE_VIOLATION", "OK", "RUNTIME_ERROR",
           "execute_submission", "export_qasm"]
