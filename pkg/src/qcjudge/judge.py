"""
State acceptance judging: exact-reference comparison (with or without global
phase) and structural support predicates for problems that allow arbitrary
non-zero amplitudes on a fixed set of basis states.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .simulate import StateVector, overlap

EXACT_STATE = "exact_state"
SUPPORT_PREDICATE = "support_predicate"
PHASE_SENSITIVE = "sensitive"
PHASE_IGNORED = "ignored"

DEFAULT_TOLERANCE = 1e-6


@dataclass(frozen=True)
class JudgeSpec:
    """What counts as a correct output state for one problem.

    ``exact_state`` compares against ``reference``: with ``phase_mode``
    "ignored" the match criterion is |<ref|out>| >= 1 - tolerance; with
    "sensitive" it is |<ref|out> - 1| < sqrt(2 * tolerance), which makes the
    fidelity and phase tolerances commensurate. ``support_predicate`` checks
    |amp|^2 < tolerance on every required-zero index and >= tolerance on
    every required-nonzero index.
    """

    kind: str
    reference: StateVector | None = None
    phase_mode: str = PHASE_IGNORED
    required_nonzero: frozenset[int] = field(default_factory=frozenset)
    required_zero: frozenset[int] = field(default_factory=frozenset)
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        object.__setattr__(self, "required_nonzero", frozenset(self.required_nonzero))
        object.__setattr__(self, "required_zero", frozenset(self.required_zero))
        if self.kind == EXACT_STATE:
            if self.reference is None:
                raise ValueError("exact_state judge requires a reference state")
            if abs(self.reference.norm() - 1.0) > 1e-9:
                raise ValueError("reference state must be unit-norm")
            if self.phase_mode not in (PHASE_SENSITIVE, PHASE_IGNORED):
                raise ValueError(f"unknown phase_mode {self.phase_mode!r}")
        elif self.kind == SUPPORT_PREDICATE:
            if self.required_nonzero & self.required_zero:
                raise ValueError("required_nonzero and required_zero overlap")
            if not (self.required_nonzero or self.required_zero):
                raise ValueError("support predicate constrains no indices")
        else:
            raise ValueError(f"unknown judge kind {self.kind!r}")
        if not 0 < self.tolerance < 1:
            raise ValueError(f"tolerance must be in (0, 1), got {self.tolerance}")

    @property
    def n_qubits(self) -> int | None:
        return self.reference.n_qubits if self.reference is not None else None


class JudgeResult(NamedTuple):
    match: bool
    diagnostic: str


def judge_state(output: StateVector, spec: JudgeSpec) -> JudgeResult:
    """Decide whether ``output`` satisfies ``spec``; never raises on a mismatch."""
    if abs(output.norm() - 1.0) > 1e-9:
        raise ValueError(f"output state is not unit-norm ({output.norm()!r})")
    if spec.kind == EXACT_STATE:
        return _judge_exact(output, spec)
    return _judge_support(output, spec)


def _judge_exact(output: StateVector, spec: JudgeSpec) -> JudgeResult:
    inner = overlap(spec.reference, output)
    fidelity = abs(inner) ** 2
    if spec.phase_mode == PHASE_IGNORED:
        match = abs(inner) >= 1.0 - spec.tolerance
        return JudgeResult(match, f"fidelity {fidelity:.12f} (global phase ignored)")
    distance = abs(inner - 1.0)
    match = distance < (2.0 * spec.tolerance) ** 0.5
    return JudgeResult(
        match, f"fidelity {fidelity:.12f}, phase-sensitive distance {distance:.3e}")


def _judge_support(output: StateVector, spec: JudgeSpec) -> JudgeResult:
    probs = np.abs(output.amps) ** 2
    dim = probs.shape[0]
    for idx in sorted(spec.required_zero | spec.required_nonzero):
        if not 0 <= idx < dim:
            raise ValueError(f"predicate index {idx} out of range for {dim} amplitudes")
    for idx in sorted(spec.required_zero):
        if probs[idx] >= spec.tolerance:
            return JudgeResult(
                False, f"index {idx} must have zero amplitude but has "
                       f"probability {probs[idx]:.3e}")
    for idx in sorted(spec.required_nonzero):
        if probs[idx] < spec.tolerance:
            return JudgeResult(
                False, f"index {idx} must have non-zero amplitude but has "
                       f"probability {probs[idx]:.3e}")
    return JudgeResult(True, "support predicate satisfied")
