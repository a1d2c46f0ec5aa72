"""
Little-endian statevector simulation for recorded circuits.

Index convention matches the mainstream SDK: qubit k is bit k of the
amplitude index (qubit 0 least significant). The judging engine displays
states big-endian, so comparisons across the two reverse the index bits.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

_ROOT2_INV = 1.0 / math.sqrt(2.0)

_FIXED = {
    "h": np.array([[1, 1], [1, -1]], dtype=complex) * _ROOT2_INV,
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "s": np.array([[1, 0], [0, 1j]], dtype=complex),
    "sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
    "t": np.array([[1, 0], [0, cmath.exp(0.25j * math.pi)]], dtype=complex),
    "tdg": np.array([[1, 0], [0, cmath.exp(-0.25j * math.pi)]], dtype=complex),
    "swap": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
                     dtype=complex),
}


def _rx(t):
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry(t):
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(t):
    return np.diag([cmath.exp(-0.5j * t), cmath.exp(0.5j * t)]).astype(complex)


def _p(t):
    return np.diag([1.0, cmath.exp(1j * t)]).astype(complex)


def _u(t, phi, lam):
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -cmath.exp(1j * lam) * s],
                     [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c]],
                    dtype=complex)


_PARAM = {"rx": _rx, "ry": _ry, "rz": _rz, "p": _p, "u": _u}

_CONTROLLED = {"cx": "x", "cz": "z", "ch": "h", "cry": "ry", "crz": "rz",
               "cp": "p"}


def _matrix(name: str, params) -> np.ndarray:
    # local convention: first operand is the most significant local bit
    if name in _FIXED:
        return _FIXED[name]
    if name in _PARAM:
        return _PARAM[name](*params)
    if name in _CONTROLLED:
        base = _matrix(_CONTROLLED[name], params)
        out = np.eye(4, dtype=complex)
        out[2:, 2:] = base
        return out
    if name == "ccx":
        out = np.eye(8, dtype=complex)
        out[6:, 6:] = _FIXED["x"]
        return out
    raise ValueError(f"cannot simulate instruction {name!r}")


class Statevector:
    """Amplitudes of a recorded circuit applied to |0...0>, little-endian."""

    def __init__(self, circuit):
        n = circuit.num_qubits
        state = np.zeros(2 ** n, dtype=complex)
        state[0] = 1.0
        for inst in circuit.data:
            if inst.name == "initialize":
                state = self._inject(state, n, inst)
                continue
            u = _matrix(inst.name, inst.params)
            state = self._apply(state, n, inst.qubits, u)
        self.data = state
        self.num_qubits = n

    @staticmethod
    def _apply(state, n, qubits, u):
        m = len(qubits)
        psi = state.reshape([2] * n)
        axes = [n - 1 - q for q in qubits]  # qubit k lives on axis n-1-k
        u = u.reshape([2] * (2 * m))
        psi = np.tensordot(u, psi, axes=(list(range(m, 2 * m)), axes))
        psi = np.moveaxis(psi, list(range(m)), axes)
        return np.ascontiguousarray(psi.reshape(-1))

    @staticmethod
    def _inject(state, n, inst):
        if tuple(sorted(inst.qubits)) != tuple(range(n)):
            raise ValueError("initialize is only supported on the full register")
        amps = np.asarray(inst.params[0], dtype=complex).ravel()
        if amps.shape[0] != 2 ** n:
            raise ValueError(f"initialize expects {2 ** n} amplitudes, "
                             f"got {amps.shape[0]}")
        return amps / np.linalg.norm(amps)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.data) ** 2
