"""Instruction recording: Gate objects and the QuantumCircuit builder."""
from __future__ import annotations


_CONTROLLED_NAME = {"ry": "cry", "rz": "crz", "x": "cx", "z": "cz", "h": "ch",
                    "p": "cp", "cx": "ccx"}


class Gate:
    """A named gate with bound parameters; ``control()`` lifts it."""

    def __init__(self, name: str, num_qubits: int, params=()):
        self.name = name
        self.num_qubits = num_qubits
        self.params = list(params)

    def control(self, num_ctrl_qubits: int = 1) -> "Gate":
        name = self.name
        for _ in range(num_ctrl_qubits):
            lifted = _CONTROLLED_NAME.get(name)
            if lifted is None:
                raise ValueError(f"no controlled form of {name!r} is available")
            name = lifted
        return Gate(name, self.num_qubits + num_ctrl_qubits, self.params)

    def __repr__(self):
        return f"Gate({self.name!r}, {self.num_qubits}, {self.params})"


class Instruction:
    """One recorded operation: (name, qubit indices, parameters)."""

    __slots__ = ("name", "qubits", "params")

    def __init__(self, name, qubits, params=()):
        self.name = name
        self.qubits = tuple(int(q) for q in qubits)
        self.params = tuple(params)

    def __repr__(self):
        return f"Instruction({self.name!r}, {self.qubits}, {self.params})"


class QuantumCircuit:
    """Gate-list builder over ``num_qubits`` qubits (qubit 0 first)."""

    def __init__(self, num_qubits: int):
        if not isinstance(num_qubits, int) or num_qubits < 1:
            raise ValueError(f"num_qubits must be a positive int, got {num_qubits!r}")
        self.num_qubits = num_qubits
        self.data: list[Instruction] = []

    def _append(self, name, qubits, params=()):
        for q in qubits:
            if not 0 <= int(q) < self.num_qubits:
                raise ValueError(f"qubit {q} out of range for "
                                 f"{self.num_qubits}-qubit circuit")
        self.data.append(Instruction(name, qubits, params))
        return self

    # fixed single-qubit gates
    def h(self, q): return self._append("h", [q])
    def x(self, q): return self._append("x", [q])
    def y(self, q): return self._append("y", [q])
    def z(self, q): return self._append("z", [q])
    def s(self, q): return self._append("s", [q])
    def sdg(self, q): return self._append("sdg", [q])
    def t(self, q): return self._append("t", [q])
    def tdg(self, q): return self._append("tdg", [q])

    # parametric single-qubit gates (angle first, as in the real SDK)
    def rx(self, theta, q): return self._append("rx", [q], [theta])
    def ry(self, theta, q): return self._append("ry", [q], [theta])
    def rz(self, theta, q): return self._append("rz", [q], [theta])
    def p(self, theta, q): return self._append("p", [q], [theta])
    def u(self, theta, phi, lam, q): return self._append("u", [q], [theta, phi, lam])

    # multi-qubit gates (controls first)
    def cx(self, c, t): return self._append("cx", [c, t])
    def cz(self, a, b): return self._append("cz", [a, b])
    def ch(self, c, t): return self._append("ch", [c, t])
    def cry(self, theta, c, t): return self._append("cry", [c, t], [theta])
    def crz(self, theta, c, t): return self._append("crz", [c, t], [theta])
    def cp(self, theta, c, t): return self._append("cp", [c, t], [theta])
    def swap(self, a, b): return self._append("swap", [a, b])
    def ccx(self, c1, c2, t): return self._append("ccx", [c1, c2, t])

    def initialize(self, state, qubits=None):
        """Direct state injection; recorded verbatim, never exportable as a gate."""
        if qubits is None:
            qubits = list(range(self.num_qubits))
        return self._append("initialize", qubits, [tuple(state)])

    def append(self, gate: Gate, qargs):
        if len(qargs) != gate.num_qubits:
            raise ValueError(f"{gate.name} expects {gate.num_qubits} qubits, "
                             f"got {len(qargs)}")
        return self._append(gate.name, qargs, gate.params)

    def __repr__(self):
        return f"QuantumCircuit({self.num_qubits}, ops={len(self.data)})"
