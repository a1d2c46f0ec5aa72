"""
Staged evaluation of a submission against a problem.

Checks run in severity order and stop at the first failure:

    1. parse            -> RE (disallowed include -> UME)
    2. gate-set check   -> UGE
    3. depth check      -> DLE
    4. simulate + judge -> WA / AC

The four-flag report line and the per-verdict feedback sentences are external
interfaces and must stay byte-stable.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

from .bank import ProblemSpec
from .qasm import UNSUPPORTED, FrontendError, SourceProgram, parse
from .simulate import MAX_QUBITS, SimulationError, run
from .judge import judge_state
from .transpile import check_depth, check_gates


class Verdict(str, Enum):
    AC = "AC"    # accepted
    RE = "RE"    # parse / runtime error
    UME = "UME"  # unauthorized module (disallowed include / import)
    UGE = "UGE"  # unauthorized gate
    DLE = "DLE"  # depth limit exceeded
    WA = "WA"    # wrong output state


_STAGES = ("gate_set", "depth", "state")

FEEDBACK_SENTENCES = {
    Verdict.WA: "This is wrong. Try again.",
    Verdict.DLE: ("The circuit depth exceeded the given constraint. "
                  "Please revise your implementation to improve efficiency. "
                  "Try again."),
    Verdict.UME: "Unauthorized modules has been used. Try again.",
    Verdict.UGE: "An unauthorized quantum gate has been used. Try again.",
}


@dataclass(frozen=True)
class EvaluationReport:
    """Outcome of one evaluation: verdict, stage flags, diagnostics.

    Stages that were skipped because an earlier one failed keep their default
    flag values and are listed in ``unevaluated``. ``module_violation`` is an
    additive flag used only by UME so the four documented keys stay untouched.
    """

    verdict: Verdict
    runtime_error: bool = False
    gate_violation: bool = False
    depth_violation: bool = False
    state_match: bool = False
    module_violation: bool = False
    measured_depth: int | None = None
    error_text: str | None = None
    detail: str | None = None
    unevaluated: tuple[str, ...] = ()
    sim_wall_time: float = 0.0

    def __post_init__(self):
        ok = not (self.runtime_error or self.gate_violation
                  or self.depth_violation or self.module_violation)
        if (self.verdict is Verdict.AC) != (ok and self.state_match):
            raise ValueError(f"flags inconsistent with verdict {self.verdict}")


def evaluate(source: SourceProgram | str, problem: ProblemSpec,
             qubit_cap: int = MAX_QUBITS) -> EvaluationReport:
    """Run the staged checks for ``source`` against ``problem``."""
    try:
        circuit = parse(source)
    except FrontendError as err:
        if err.category == UNSUPPORTED and err.construct == "include":
            return EvaluationReport(Verdict.UME, module_violation=True,
                                    error_text=str(err), unevaluated=_STAGES)
        return EvaluationReport(Verdict.RE, runtime_error=True,
                                error_text=str(err), unevaluated=_STAGES)
    if circuit.n_qubits > min(qubit_cap, MAX_QUBITS):
        return EvaluationReport(
            Verdict.RE, runtime_error=True,
            error_text=f"circuit uses {circuit.n_qubits} qubits; the evaluator "
                       f"cap is {min(qubit_cap, MAX_QUBITS)}",
            unevaluated=_STAGES)
    if circuit.n_qubits != problem.n_qubits:
        return EvaluationReport(
            Verdict.RE, runtime_error=True,
            error_text=f"circuit declares {circuit.n_qubits} qubit(s) but the "
                       f"problem is stated on {problem.n_qubits}",
            unevaluated=_STAGES)

    offending = check_gates(circuit, problem.gate_policy)
    if offending:
        names = ", ".join(
            f"{pos}:{getattr(circuit.gates[pos], 'name', None) or circuit.gates[pos].kind.value}"
            for pos in offending)
        return EvaluationReport(Verdict.UGE, gate_violation=True,
                                detail=f"unauthorized instruction(s) at {names}",
                                unevaluated=("depth", "state"))

    depth_report = check_depth(circuit, problem.depth_limit)
    if depth_report.violated:
        return EvaluationReport(
            Verdict.DLE, depth_violation=True, measured_depth=depth_report.depth,
            detail=f"depth {depth_report.depth} exceeds limit {depth_report.limit}",
            unevaluated=("state",))

    started = time.perf_counter()
    try:
        state = run(circuit)
    except SimulationError as exc:
        return EvaluationReport(Verdict.RE, runtime_error=True, error_text=str(exc),
                                measured_depth=depth_report.depth,
                                unevaluated=("state",))
    wall = time.perf_counter() - started
    result = judge_state(state, problem.judge)
    return EvaluationReport(Verdict.AC if result.match else Verdict.WA,
                            state_match=result.match, detail=result.diagnostic,
                            measured_depth=depth_report.depth, sim_wall_time=wall)


def report_from_adapter_failure(status: str, error_text: str) -> EvaluationReport:
    """Fold a Python-adapter failure into the engine's report shape."""
    if status == "module_violation":
        return EvaluationReport(Verdict.UME, module_violation=True,
                                error_text=error_text, unevaluated=_STAGES)
    return EvaluationReport(Verdict.RE, runtime_error=True,
                            error_text=error_text, unevaluated=_STAGES)


def report_json(report: EvaluationReport) -> str:
    """The single-line report body, byte-stable.

    Exactly the four documented keys in fixed order; ``module_violation`` is
    appended only when set, keeping the four-key form untouched otherwise.
    """
    pairs = [("runtime_error", report.runtime_error),
             ("gate_violation", report.gate_violation),
             ("depth_violation", report.depth_violation),
             ("state_match", report.state_match)]
    if report.module_violation:
        pairs.append(("module_violation", True))
    body = ", ".join(f'"{key}": {"true" if value else "false"}'
                     for key, value in pairs)
    return "{ " + body + " }"


def render_feedback(report: EvaluationReport, previous_source: str) -> str:
    """The refinement prompt for a failed attempt; verbatim branch sentences."""
    if report.verdict is Verdict.AC:
        raise ValueError("feedback is only rendered for failed evaluations")
    if report.verdict is Verdict.RE:
        sentence = f"The occurring error is: {report.error_text}. Try again."
    else:
        sentence = FEEDBACK_SENTENCES[report.verdict]
    body = previous_source if previous_source.endswith("\n") else previous_source + "\n"
    return f"Your answer was\n'''python\n{body}'''\n{sentence}"


def report_to_dict(report: EvaluationReport) -> dict:
    """JSON-friendly form used by session logs."""
    return {"verdict": report.verdict.value,
            "runtime_error": report.runtime_error,
            "gate_violation": report.gate_violation,
            "depth_violation": report.depth_violation,
            "state_match": report.state_match,
            "module_violation": report.module_violation,
            "measured_depth": report.measured_depth,
            "error_text": report.error_text,
            "detail": report.detail,
            "unevaluated": list(report.unevaluated),
            "sim_wall_time": report.sim_wall_time}


def report_from_dict(data: dict) -> EvaluationReport:
    return EvaluationReport(verdict=Verdict(data["verdict"]),
                            runtime_error=data["runtime_error"],
                            gate_violation=data["gate_violation"],
                            depth_violation=data["depth_violation"],
                            state_match=data["state_match"],
                            module_violation=data.get("module_violation", False),
                            measured_depth=data.get("measured_depth"),
                            error_text=data.get("error_text"),
                            detail=data.get("detail"),
                            unevaluated=tuple(data.get("unevaluated", ())),
                            sim_wall_time=data.get("sim_wall_time", 0.0))
