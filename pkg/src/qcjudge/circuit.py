"""
Circuit intermediate representation and gate unitary definitions.

Conventions used by every downstream module:

* Basis labels read ``|q0 q1 ... q_{n-1}>`` and the amplitude index is
  ``i = sum_k q_k * 2**(n-1-k)``, i.e. qubit 0 is the most significant bit.
* Controlled gates take operands controls-first, target-last, and their
  matrices embed the base unitary in the all-controls-one block.
* Angles are plain radians (floats); there is no symbolic angle arithmetic.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np


class GateDefinitionError(ValueError):
    """A gate matrix was requested with the wrong number of parameters."""


class GateKind(Enum):
    """The gate universe the engine can represent and simulate."""

    H = "h"
    X = "x"
    Y = "y"
    Z = "z"
    S = "s"
    SDG = "sdg"
    T = "t"
    TDG = "tdg"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    P = "p"
    U = "u"
    CX = "cx"
    CZ = "cz"
    CH = "ch"
    CRY = "cry"
    CRZ = "crz"
    CP = "cp"
    CCX = "ccx"
    SWAP = "swap"

    @property
    def arity(self) -> int:
        if self in _TWO_QUBIT:
            return 2
        if self is GateKind.CCX:
            return 3
        return 1

    @property
    def param_count(self) -> int:
        if self is GateKind.U:
            return 3
        return 1 if self in _ONE_PARAM else 0


_TWO_QUBIT = frozenset({GateKind.CX, GateKind.CZ, GateKind.CH, GateKind.CRY,
                        GateKind.CRZ, GateKind.CP, GateKind.SWAP})
_ONE_PARAM = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.P,
                        GateKind.CRY, GateKind.CRZ, GateKind.CP})

GATE_NAMES = {kind.value: kind for kind in GateKind}

_SQRT2_INV = 1.0 / math.sqrt(2.0)


def _rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(theta: float) -> np.ndarray:
    return np.array([[cmath.exp(-0.5j * theta), 0], [0, cmath.exp(0.5j * theta)]],
                    dtype=complex)


def _p(lam: float) -> np.ndarray:
    return np.array([[1, 0], [0, cmath.exp(1j * lam)]], dtype=complex)


def _u(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -cmath.exp(1j * lam) * s],
                     [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c]],
                    dtype=complex)


_FIXED_1Q = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV,
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, cmath.exp(0.25j * math.pi)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, cmath.exp(-0.25j * math.pi)]], dtype=complex),
}

_PARAM_1Q = {GateKind.RX: _rx, GateKind.RY: _ry, GateKind.RZ: _rz, GateKind.P: _p}

# Base unitary of each singly-controlled gate; CRY/CRZ/CP take the angle.
_CONTROLLED_BASE = {
    GateKind.CX: lambda params: _FIXED_1Q[GateKind.X],
    GateKind.CZ: lambda params: _FIXED_1Q[GateKind.Z],
    GateKind.CH: lambda params: _FIXED_1Q[GateKind.H],
    GateKind.CRY: lambda params: _ry(params[0]),
    GateKind.CRZ: lambda params: _rz(params[0]),
    GateKind.CP: lambda params: _p(params[0]),
}


def gate_matrix(kind: GateKind, params: Sequence[float] = ()) -> np.ndarray:
    """Return the unitary of ``kind`` as a fresh ``2**arity`` square array.

    Controlled gates are laid out control-first: the upper-left block (all
    controls 0) is the identity and the lower-right block holds the base gate.
    """
    if len(params) != kind.param_count:
        raise GateDefinitionError(
            f"{kind.value} takes {kind.param_count} parameter(s), got {len(params)}")
    if kind in _FIXED_1Q:
        return _FIXED_1Q[kind].copy()
    if kind in _PARAM_1Q:
        return _PARAM_1Q[kind](params[0])
    if kind is GateKind.U:
        return _u(*params)
    if kind in _CONTROLLED_BASE:
        out = np.eye(4, dtype=complex)
        out[2:, 2:] = _CONTROLLED_BASE[kind](params)
        return out
    if kind is GateKind.SWAP:
        return np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
                        dtype=complex)
    if kind is GateKind.CCX:
        out = np.eye(8, dtype=complex)
        out[6:, 6:] = _FIXED_1Q[GateKind.X]
        return out
    raise GateDefinitionError(f"no matrix definition for {kind!r}")


@dataclass(frozen=True)
class GateInstance:
    """One gate application: kind, operand qubits (controls first), angles."""

    kind: GateKind
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))


@dataclass(frozen=True)
class StateInjection:
    """A non-gate state-preparation instruction (``initialize`` and friends).

    Deliberately not a :class:`GateKind`: it has no unitary, cannot be
    simulated or decomposed, and is flagged by every gate-set check. It exists
    in the IR so submissions that rely on direct state injection survive
    parsing and are rejected at the gate-constraint stage instead.
    """

    name: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))


Instruction = Union[GateInstance, StateInjection]


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over ``n_qubits``; order is execution order."""

    n_qubits: int
    gates: tuple[Instruction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))


def validate(circuit: Circuit) -> list[str]:
    """Collect every structural violation; an empty list means well-formed."""
    problems: list[str] = []
    if circuit.n_qubits < 1:
        problems.append(f"n_qubits must be positive, got {circuit.n_qubits}")
    for pos, gate in enumerate(circuit.gates):
        where = f"gate {pos}"
        if isinstance(gate, GateInstance):
            where = f"gate {pos} ({gate.kind.value})"
            if len(gate.qubits) != gate.kind.arity:
                problems.append(f"{where}: expects {gate.kind.arity} qubit(s), "
                                f"got {len(gate.qubits)}")
            if len(gate.params) != gate.kind.param_count:
                problems.append(f"{where}: expects {gate.kind.param_count} "
                                f"parameter(s), got {len(gate.params)}")
            if any(not math.isfinite(p) for p in gate.params):
                problems.append(f"{where}: non-finite parameter")
        else:
            where = f"gate {pos} ({gate.name})"
        if len(set(gate.qubits)) != len(gate.qubits):
            problems.append(f"{where}: duplicate operand qubits {gate.qubits}")
        for q in gate.qubits:
            if not 0 <= q < circuit.n_qubits:
                problems.append(f"{where}: qubit {q} out of range for "
                                f"{circuit.n_qubits}-qubit circuit")
    return problems
