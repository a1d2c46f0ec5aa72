"""
Problem definitions: the on-disk schema, the loader, and prompt rendering.

A bank directory holds one subdirectory per problem id:

    <bank>/<id>/spec             # problem definition, YAML (schema below)
    <bank>/<id>/reference.qasm   # an accepted solution in the engine dialect
    <bank>/<id>/fixtures/*.qasm  # known-verdict submissions, named *_<verdict>.qasm
                                 # or <verdict>.qasm

spec fields::

    id: QPC001-A4              # must equal the directory name
    statement: |               # natural-language problem text
    n_qubits: 2
    gates:                     # optional; defaults to {allowed: ALL, mode: strict}
      allowed: ALL             # or a list of gate names, e.g. [h, cx]
      mode: strict             # strict | lenient
    depth_limit: 5             # optional, positive
    judge:
      kind: exact_state        # exact_state | support_predicate
      phase_mode: sensitive    # exact_state only: sensitive | ignored
      reference:               # exact_state only: (basis label, re, im) triples;
        - ["1", 0.0, 1.0]      #   omitted labels are zero; normalized on load
      required_nonzero: ["00"] # support_predicate only: basis labels
      required_zero: ["11"]
      tolerance: 1.0e-6        # optional
    code_template: |           # optional; defaults to the standard solve() skeleton

Basis labels read |q0 q1 ... q_{n-1}>, so label "10" on two qubits is
amplitude index 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from .circuit import GATE_NAMES, GateKind
from .judge import (DEFAULT_TOLERANCE, EXACT_STATE, PHASE_IGNORED,
                    PHASE_SENSITIVE, SUPPORT_PREDICATE, JudgeSpec)
from .simulate import StateVector
from .transpile import ALL, LENIENT, STRICT, GateSetPolicy

_SPEC_KEYS = {"id", "statement", "n_qubits", "gates", "depth_limit", "judge",
              "code_template"}
_JUDGE_KEYS = {"kind", "phase_mode", "reference", "required_nonzero",
               "required_zero", "tolerance"}

_DEFAULT_TEMPLATE = """\
from qiskit import QuantumCircuit

def solve() -> QuantumCircuit:
    qc = QuantumCircuit({n})
    # Write your code here:

    return qc
"""

GENERATION_INSTRUCTION = ("Generate only the body of the solve() function, "
                          "with no additional imports or code outside the template.")


class BankLoadError(ValueError):
    """A problem file violates the schema; the message names file and field."""


@dataclass(frozen=True)
class ProblemSpec:
    """One task: statement, hardware constraints, and acceptance judge."""

    id: str
    statement: str
    n_qubits: int
    gate_policy: GateSetPolicy
    depth_limit: int | None
    judge: JudgeSpec
    code_template: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("problem id must be non-empty")
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        if self.depth_limit is not None and self.depth_limit < 1:
            raise ValueError("depth_limit must be positive when present")
        if self.judge.kind == EXACT_STATE:
            if self.judge.reference.n_qubits != self.n_qubits:
                raise ValueError("judge reference size does not match n_qubits")
        else:
            dim = 2 ** self.n_qubits
            indices = self.judge.required_nonzero | self.judge.required_zero
            if any(not 0 <= i < dim for i in indices):
                raise ValueError("judge predicate index out of range for n_qubits")


def label_to_index(label: str, n_qubits: int) -> int:
    """Basis label |q0 q1 ...> to amplitude index (qubit 0 most significant)."""
    if len(label) != n_qubits or any(c not in "01" for c in label):
        raise ValueError(f"label {label!r} is not a {n_qubits}-bit basis string")
    return int(label, 2)


def index_to_label(index: int, n_qubits: int) -> str:
    return format(index, f"0{n_qubits}b")


def default_bank_path() -> Path:
    """The bundled problem set that ships inside the package."""
    return Path(__file__).parent / "problems"


def _fail(path: Path, field: str, message: str) -> BankLoadError:
    return BankLoadError(f"{path}: field {field!r}: {message}")


def _parse_gate_set(raw, path: Path, field: str) -> frozenset[GateKind] | str:
    if raw == ALL:
        return ALL
    if not isinstance(raw, list) or not raw:
        raise _fail(path, field, "expected 'ALL' or a non-empty list of gate names")
    kinds = set()
    for name in raw:
        kind = GATE_NAMES.get(str(name))
        if kind is None:
            raise _fail(path, field, f"unknown gate name {name!r}")
        kinds.add(kind)
    return frozenset(kinds)


def _parse_labels(raw, n_qubits: int, path: Path, field: str) -> frozenset[int]:
    if not isinstance(raw, list):
        raise _fail(path, field, "expected a list of basis labels")
    try:
        return frozenset(label_to_index(str(label), n_qubits) for label in raw)
    except ValueError as exc:
        raise _fail(path, field, str(exc))


def _parse_judge(raw, n_qubits: int, path: Path) -> JudgeSpec:
    if not isinstance(raw, dict):
        raise _fail(path, "judge", "expected a mapping")
    unknown = set(raw) - _JUDGE_KEYS
    if unknown:
        raise _fail(path, f"judge.{sorted(unknown)[0]}", "unknown field")
    kind = raw.get("kind")
    tolerance = raw.get("tolerance", DEFAULT_TOLERANCE)
    try:
        tolerance = float(tolerance)
    except (TypeError, ValueError):
        raise _fail(path, "judge.tolerance", f"not a number: {tolerance!r}")
    if kind == EXACT_STATE:
        triples = raw.get("reference")
        if not isinstance(triples, list) or not triples:
            raise _fail(path, "judge.reference", "expected a list of (label, re, im)")
        amps = np.zeros(2 ** n_qubits, dtype=complex)
        for entry in triples:
            if not (isinstance(entry, list) and len(entry) == 3):
                raise _fail(path, "judge.reference",
                            f"expected [label, re, im], got {entry!r}")
            label, re, im = entry
            try:
                idx = label_to_index(str(label), n_qubits)
                amps[idx] = complex(float(re), float(im))
            except ValueError as exc:
                raise _fail(path, "judge.reference", str(exc))
        phase_mode = raw.get("phase_mode", PHASE_IGNORED)
        if phase_mode not in (PHASE_SENSITIVE, PHASE_IGNORED):
            raise _fail(path, "judge.phase_mode", f"unknown mode {phase_mode!r}")
        try:
            reference = StateVector.from_amplitudes(amps)
        except ValueError as exc:
            raise _fail(path, "judge.reference", str(exc))
        return JudgeSpec(kind=EXACT_STATE, reference=reference,
                         phase_mode=phase_mode, tolerance=tolerance)
    if kind == SUPPORT_PREDICATE:
        nonzero = _parse_labels(raw.get("required_nonzero", []), n_qubits,
                                path, "judge.required_nonzero")
        zero = _parse_labels(raw.get("required_zero", []), n_qubits,
                             path, "judge.required_zero")
        try:
            return JudgeSpec(kind=SUPPORT_PREDICATE, required_nonzero=nonzero,
                             required_zero=zero, tolerance=tolerance)
        except ValueError as exc:
            raise _fail(path, "judge", str(exc))
    raise _fail(path, "judge.kind", f"expected exact_state or support_predicate, "
                                    f"got {kind!r}")


def load_problem(problem_dir: Path) -> ProblemSpec:
    """Load and validate one ``<bank>/<id>`` directory."""
    problem_dir = Path(problem_dir)
    path = problem_dir / "spec"
    if not path.is_file():
        raise BankLoadError(f"{problem_dir}: missing spec file")
    try:
        raw = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise BankLoadError(f"{path}: not valid YAML: {exc}")
    if not isinstance(raw, dict):
        raise BankLoadError(f"{path}: expected a mapping at top level")
    unknown = set(raw) - _SPEC_KEYS
    if unknown:
        raise _fail(path, sorted(unknown)[0], "unknown field")
    problem_id = raw.get("id")
    if not isinstance(problem_id, str) or not problem_id:
        raise _fail(path, "id", "expected a non-empty string")
    if problem_id != problem_dir.name:
        raise _fail(path, "id", f"id {problem_id!r} does not match directory "
                                f"name {problem_dir.name!r}")
    statement = raw.get("statement")
    if not isinstance(statement, str) or not statement.strip():
        raise _fail(path, "statement", "expected non-empty text")
    n_qubits = raw.get("n_qubits")
    if not isinstance(n_qubits, int) or n_qubits < 1:
        raise _fail(path, "n_qubits", f"expected a positive integer, got {n_qubits!r}")
    gates_raw = raw.get("gates", {"allowed": ALL, "mode": STRICT})
    if not isinstance(gates_raw, dict):
        raise _fail(path, "gates", "expected a mapping")
    mode = gates_raw.get("mode", STRICT)
    if mode not in (STRICT, LENIENT):
        raise _fail(path, "gates.mode", f"expected strict or lenient, got {mode!r}")
    allowed = _parse_gate_set(gates_raw.get("allowed", ALL), path, "gates.allowed")
    depth_limit = raw.get("depth_limit")
    if depth_limit is not None and (not isinstance(depth_limit, int) or depth_limit < 1):
        raise _fail(path, "depth_limit", f"expected a positive integer, "
                                         f"got {depth_limit!r}")
    judge = _parse_judge(raw.get("judge"), n_qubits, path)
    template = raw.get("code_template", _DEFAULT_TEMPLATE.format(n=n_qubits))
    if not isinstance(template, str) or not template.strip():
        raise _fail(path, "code_template", "expected non-empty text")
    try:
        return ProblemSpec(id=problem_id, statement=statement, n_qubits=n_qubits,
                           gate_policy=GateSetPolicy(allowed, mode),
                           depth_limit=depth_limit, judge=judge,
                           code_template=template)
    except ValueError as exc:
        raise BankLoadError(f"{path}: {exc}")


def load_bank(bank_path: Path) -> list[ProblemSpec]:
    """Load every problem under ``bank_path``, sorted by id."""
    bank_path = Path(bank_path)
    if not bank_path.is_dir():
        raise BankLoadError(f"{bank_path}: not a directory")
    problems = []
    seen: set[str] = set()
    for sub in sorted(p for p in bank_path.iterdir() if p.is_dir()):
        problem = load_problem(sub)
        if problem.id in seen:
            raise BankLoadError(f"{sub}: duplicate problem id {problem.id!r}")
        seen.add(problem.id)
        problems.append(problem)
    if not problems:
        raise BankLoadError(f"{bank_path}: contains no problems")
    return problems


def serialize_problem(problem: ProblemSpec) -> str:
    """Render a ProblemSpec back into spec-file YAML (load/serialize round-trips)."""
    doc: dict = {"id": problem.id, "statement": problem.statement,
                 "n_qubits": problem.n_qubits}
    allowed = problem.gate_policy.allowed
    doc["gates"] = {"allowed": ALL if allowed == ALL
                    else sorted(k.value for k in allowed),
                    "mode": problem.gate_policy.mode}
    if problem.depth_limit is not None:
        doc["depth_limit"] = problem.depth_limit
    judge = problem.judge
    if judge.kind == EXACT_STATE:
        triples = [[index_to_label(i, problem.n_qubits), float(a.real), float(a.imag)]
                   for i, a in enumerate(judge.reference.amps) if a != 0]
        doc["judge"] = {"kind": EXACT_STATE, "phase_mode": judge.phase_mode,
                        "reference": triples, "tolerance": judge.tolerance}
    else:
        doc["judge"] = {"kind": SUPPORT_PREDICATE,
                        "required_nonzero": sorted(
                            index_to_label(i, problem.n_qubits)
                            for i in judge.required_nonzero),
                        "required_zero": sorted(
                            index_to_label(i, problem.n_qubits)
                            for i in judge.required_zero),
                        "tolerance": judge.tolerance}
    doc["code_template"] = problem.code_template
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)


def constraint_lines(problem: ProblemSpec) -> list[str]:
    """The constraint sentences shown in prompts and problem listings."""
    if problem.judge.kind == EXACT_STATE and problem.judge.phase_mode == PHASE_SENSITIVE:
        lines = ["States with different global phases will be considered incorrect."]
    else:
        lines = ["Global phase is ignored in judge."]
    if problem.gate_policy.allowed != ALL:
        names = ", ".join(sorted(k.value for k in problem.gate_policy.allowed))
        lines.append(f"Allowed gates: {names}.")
    if problem.depth_limit is not None:
        lines.append(f"The circuit depth must not exceed {problem.depth_limit}.")
    return lines


def constraints_summary(problem: ProblemSpec) -> str:
    return " ".join(constraint_lines(problem))


def render_prompt(problem: ProblemSpec) -> str:
    """The baseline generation prompt: statement, constraints, code template."""
    parts = ["Problem", problem.statement.strip(), "", "Constraints"]
    parts.extend(constraint_lines(problem))
    parts.extend(["", "Use the following code format:", "",
                  problem.code_template.strip(), "", GENERATION_INSTRUCTION])
    return "\n".join(parts) + "\n"


def reference_path(bank_path: Path, problem_id: str) -> Path:
    return Path(bank_path) / problem_id / "reference.qasm"


def load_reference(bank_path: Path, problem_id: str) -> str:
    """The bundled accepted solution for a problem."""
    return reference_path(bank_path, problem_id).read_text()


def iter_fixtures(bank_path: Path, problem_id: str) -> list[tuple[str, str]]:
    """(name, source) pairs for a problem's known-verdict fixture submissions."""
    fixture_dir = Path(bank_path) / problem_id / "fixtures"
    if not fixture_dir.is_dir():
        return []
    return [(p.stem, p.read_text()) for p in sorted(fixture_dir.glob("*.qasm"))]
