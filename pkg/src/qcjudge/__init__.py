"""
qcjudge: a hardware-aware evaluation engine and feedback-driven refinement
harness for quantum circuit programs.

Submissions in the engine's OpenQASM 2.0 dialect are parsed, checked against
per-problem gate and depth constraints, simulated, and judged against the
problem's state specification; failures come back as structured reports whose
feedback rendering drives an iterative generate/evaluate/refine loop.
"""
from .circuit import (Circuit, GateDefinitionError, GateInstance, GateKind,
                      StateInjection, gate_matrix, validate)
from .qasm import FrontendError, SourceProgram, emit, parse
from .transpile import (ALL, DecompositionError, DepthReport, GateSetPolicy,
                        UNIVERSAL_BASIS, check_depth, check_gates,
                        circuit_depth, decompose)
from .simulate import (MAX_QUBITS, ResourceLimitError, SimulationError,
                       StateVector, apply_gate, overlap, run)
from .judge import JudgeResult, JudgeSpec, judge_state
from .pipeline import (EvaluationReport, Verdict, evaluate, render_feedback,
                       report_json)
from .bank import (BankLoadError, ProblemSpec, default_bank_path, load_bank,
                   load_problem, render_prompt, serialize_problem)
from .refine import (GeneratorError, MetricsTable, RefinementSession,
                     ScriptedGenerator, compute_metrics, run_session,
                     success_curve)

__version__ = "0.1.0"

__all__ = [
    "ALL", "BankLoadError", "Circuit", "DecompositionError", "DepthReport",
    "EvaluationReport", "FrontendError", "GateDefinitionError", "GateInstance",
    "GateKind", "GateSetPolicy", "GeneratorError", "JudgeResult", "JudgeSpec",
    "MAX_QUBITS", "MetricsTable", "ProblemSpec", "RefinementSession",
    "ResourceLimitError", "ScriptedGenerator", "SimulationError",
    "SourceProgram", "StateInjection", "StateVector", "UNIVERSAL_BASIS",
    "Verdict", "apply_gate", "check_depth", "check_gates", "circuit_depth",
    "compute_metrics", "decompose", "default_bank_path", "emit", "evaluate",
    "gate_matrix", "judge_state", "load_bank", "load_problem", "overlap",
    "parse", "render_feedback", "render_prompt", "report_json", "run",
    "run_session", "serialize_problem", "success_curve", "validate",
]
