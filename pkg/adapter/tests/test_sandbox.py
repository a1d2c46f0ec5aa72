"""Isolation properties: time limits, working-directory confinement."""
import time

from qcadapter import OK, RUNTIME_ERROR, execute_submission

SPIN_FOREVER = """\
def solve():
    while True:
        pass
"""

READ_BANK_FILE = """\
from qiskit import QuantumCircuit

def solve() -> QuantumCircuit:
    with open("problems/QPC001-A4/reference.qasm") as handle:
        handle.read()
    return QuantumCircuit(1)
"""

NO_SOLVE = "x = 1\n"

BAD_RETURN = """\
def solve():
    return 42
"""

WRITES_SCRATCH_FILE = """\
from qiskit import QuantumCircuit

def solve() -> QuantumCircuit:
    with open("scratch.txt", "w") as handle:
        handle.write("hello")
    qc = QuantumCircuit(1)
    qc.x(0)
    return qc
"""


class TestIsolation:
    def test_infinite_loop_hits_timeout(self):
        started = time.perf_counter()
        result = execute_submission(SPIN_FOREVER, timeout=2.0)
        elapsed = time.perf_counter() - started
        assert result.status == RUNTIME_ERROR
        assert "timed out" in result.error_text
        assert elapsed < 10.0

    def test_bank_files_unreachable_from_sandbox(self):
        result = execute_submission(READ_BANK_FILE)
        assert result.status == RUNTIME_ERROR
        assert "FileNotFoundError" in result.error_text

    def test_scratch_directory_is_writable_and_discarded(self):
        first = execute_submission(WRITES_SCRATCH_FILE)
        assert first.status == OK
        # a second run starts from a fresh directory
        probe = """\
from qiskit import QuantumCircuit
import os.path

def solve() -> QuantumCircuit:
    assert not os.path.exists("scratch.txt")
    return QuantumCircuit(1)
"""
        second = execute_submission(probe, import_allowlist=["qiskit", "os"])
        assert second.status == OK


class TestContractFailures:
    def test_missing_solve_reported(self):
        result = execute_submission(NO_SOLVE)
        assert result.status == RUNTIME_ERROR
        assert "solve() is not defined" in result.error_text

    def test_wrong_return_type_reported(self):
        result = execute_submission(BAD_RETURN)
        assert result.status == RUNTIME_ERROR
        assert "must return a QuantumCircuit" in result.error_text

    def test_exception_inside_solve_keeps_first_line(self):
        result = execute_submission(
            "def solve():\n    raise RuntimeError('boom\\nmore')\n")
        assert result.status == RUNTIME_ERROR
        assert result.error_text == "RuntimeError: boom"
