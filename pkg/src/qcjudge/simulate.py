"""
Dense statevector simulation.

Gates are applied by reshaping the amplitude array to a rank-n tensor and
contracting the gate unitary over the operand axes; the full ``2**n x 2**n``
circuit unitary is never materialized. Index convention follows
:mod:`qcjudge.circuit`: qubit k is tensor axis k (qubit 0 most significant).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, GateInstance, StateInjection, gate_matrix, validate

MAX_QUBITS = 20

_NORM_TOL = 1e-10


class SimulationError(RuntimeError):
    """The circuit cannot be executed on the statevector backend."""


class ResourceLimitError(SimulationError):
    """The register is larger than the backend's hard qubit cap."""


@dataclass(frozen=True, eq=False)
class StateVector:
    """``2**n_qubits`` complex amplitudes; treat as immutable once built."""

    n_qubits: int
    amps: np.ndarray

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        """The all-zeros basis state |0...0>."""
        if n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {n_qubits}")
        if n_qubits > MAX_QUBITS:
            raise ResourceLimitError(
                f"{n_qubits} qubits exceeds the {MAX_QUBITS}-qubit simulator cap")
        amps = np.zeros(2 ** n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def from_amplitudes(cls, amps) -> "StateVector":
        """Wrap an explicit amplitude vector, normalizing it to unit norm.

        Already-normalized input (within 1e-12) is kept bit-identical so that
        serialize/load round trips are exact.
        """
        arr = np.asarray(amps, dtype=complex).ravel()
        n = int(arr.shape[0]).bit_length() - 1
        if arr.shape[0] != 2 ** n or n < 1:
            raise ValueError(f"amplitude count {arr.shape[0]} is not 2**n for n >= 1")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(arr)
        if norm < 1e-12:
            raise ValueError("cannot normalize the zero vector")
        if abs(norm - 1.0) > 1e-12:
            arr = arr / norm
        return cls(n, arr)

    def __eq__(self, other) -> bool:
        return (isinstance(other, StateVector) and self.n_qubits == other.n_qubits
                and np.array_equal(self.amps, other.amps))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def apply_gate(state: StateVector, gate: GateInstance) -> StateVector:
    """Apply one gate and return the new state; norm is preserved."""
    if isinstance(gate, StateInjection):
        raise SimulationError(
            f"'{gate.name}' is a state injection, not an executable gate")
    for q in gate.qubits:
        if not 0 <= q < state.n_qubits:
            raise ValueError(f"qubit {q} out of range for {state.n_qubits}-qubit state")
    n, m = state.n_qubits, len(gate.qubits)
    u = gate_matrix(gate.kind, gate.params).reshape([2] * (2 * m))
    psi = state.amps.reshape([2] * n)
    psi = np.tensordot(u, psi, axes=(list(range(m, 2 * m)), list(gate.qubits)))
    psi = np.moveaxis(psi, list(range(m)), list(gate.qubits))
    out = StateVector(n, np.ascontiguousarray(psi.reshape(-1)))
    if abs(out.norm() - 1.0) >= _NORM_TOL:
        raise SimulationError(f"norm drifted to {out.norm()!r} after {gate.kind.value}")
    return out


def run(circuit: Circuit) -> StateVector:
    """Simulate ``circuit`` from |0...0> by folding :func:`apply_gate`."""
    problems = validate(circuit)
    if problems:
        raise ValueError("invalid circuit: " + "; ".join(problems))
    state = StateVector.zero(circuit.n_qubits)
    for gate in circuit.gates:
        state = apply_gate(state, gate)
    return state


def overlap(a: StateVector, b: StateVector) -> complex:
    """Inner product <a|b> = sum_i conj(a_i) * b_i."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits")
    return complex(np.vdot(a.amps, b.amps))
