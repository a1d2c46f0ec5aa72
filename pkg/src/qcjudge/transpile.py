"""
Hardware-constraint analysis: allowed-gate checking, decomposition into a
basis gate set, and dependency-DAG circuit depth.

Depth model: two gates conflict iff they share a qubit; depth is the longest
conflict chain, so disjoint gates stack into one layer. Every instruction
counts as one layer element regardless of arity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import (Circuit, GateInstance, GateKind, Instruction,
                      StateInjection)

ALL = "ALL"
STRICT = "strict"
LENIENT = "lenient"

# Decomposition rules bottom out in this set; public decompose() requires the
# target basis to contain it.
UNIVERSAL_BASIS = frozenset(
    {GateKind.CX, GateKind.RY, GateKind.RZ, GateKind.X, GateKind.H})


class DecompositionError(ValueError):
    """No registered rule lowers the instruction into the requested basis."""


@dataclass(frozen=True)
class GateSetPolicy:
    """Which gate kinds a problem's hardware accepts, and how to check them.

    ``strict`` checks the raw circuit; ``lenient`` accepts a gate when it can
    be decomposed into the allowed set.
    """

    allowed: frozenset[GateKind] | str = ALL
    mode: str = STRICT

    def __post_init__(self):
        if isinstance(self.allowed, str):
            if self.allowed != ALL:
                raise ValueError(f"allowed must be a gate set or {ALL!r}")
        else:
            object.__setattr__(self, "allowed", frozenset(self.allowed))
            if not self.allowed:
                raise ValueError("allowed gate set must be non-empty (or ALL)")
        if self.mode not in (STRICT, LENIENT):
            raise ValueError(f"mode must be {STRICT!r} or {LENIENT!r}")

    def allows(self, kind: GateKind) -> bool:
        return self.allowed == ALL or kind in self.allowed


@dataclass(frozen=True)
class DepthReport:
    depth: int
    limit: int | None
    violated: bool

    def __post_init__(self):
        expected = self.limit is not None and self.depth > self.limit
        if self.violated != expected:
            raise ValueError("violated flag inconsistent with depth/limit")


def _g(kind: GateKind, qubits: tuple[int, ...], *params: float) -> GateInstance:
    return GateInstance(kind, qubits, tuple(params))


def _rule_ccx(q: tuple[int, ...], params: tuple[float, ...]) -> list[GateInstance]:
    # Standard 6-CX Toffoli network with the T gates written as RZ(pi/4).
    c1, c2, t = q
    quarter = math.pi / 4
    return [
        _g(GateKind.H, (t,)),
        _g(GateKind.CX, (c2, t)), _g(GateKind.RZ, (t,), -quarter),
        _g(GateKind.CX, (c1, t)), _g(GateKind.RZ, (t,), quarter),
        _g(GateKind.CX, (c2, t)), _g(GateKind.RZ, (t,), -quarter),
        _g(GateKind.CX, (c1, t)),
        _g(GateKind.RZ, (c2,), quarter), _g(GateKind.RZ, (t,), quarter),
        _g(GateKind.CX, (c1, c2)), _g(GateKind.H, (t,)),
        _g(GateKind.RZ, (c1,), quarter), _g(GateKind.RZ, (c2,), -quarter),
        _g(GateKind.CX, (c1, c2)),
    ]


# kind -> (qubits, params) -> replacement over UNIVERSAL_BASIS, equal to the
# original unitary up to global phase. Additive: register new rules here.
DECOMPOSITION_RULES = {
    GateKind.Y: lambda q, p: [_g(GateKind.RY, q, math.pi)],
    GateKind.Z: lambda q, p: [_g(GateKind.RZ, q, math.pi)],
    GateKind.S: lambda q, p: [_g(GateKind.RZ, q, math.pi / 2)],
    GateKind.SDG: lambda q, p: [_g(GateKind.RZ, q, -math.pi / 2)],
    GateKind.T: lambda q, p: [_g(GateKind.RZ, q, math.pi / 4)],
    GateKind.TDG: lambda q, p: [_g(GateKind.RZ, q, -math.pi / 4)],
    GateKind.RX: lambda q, p: [_g(GateKind.H, q), _g(GateKind.RZ, q, p[0]),
                               _g(GateKind.H, q)],
    GateKind.P: lambda q, p: [_g(GateKind.RZ, q, p[0])],
    GateKind.U: lambda q, p: [_g(GateKind.RZ, q, p[2]), _g(GateKind.RY, q, p[0]),
                              _g(GateKind.RZ, q, p[1])],
    GateKind.CZ: lambda q, p: [_g(GateKind.H, (q[1],)), _g(GateKind.CX, q),
                               _g(GateKind.H, (q[1],))],
    GateKind.CH: lambda q, p: [_g(GateKind.RY, (q[1],), math.pi / 4),
                               _g(GateKind.CX, q),
                               _g(GateKind.RY, (q[1],), -math.pi / 4)],
    GateKind.CRY: lambda q, p: [_g(GateKind.RY, (q[1],), p[0] / 2),
                                _g(GateKind.CX, q),
                                _g(GateKind.RY, (q[1],), -p[0] / 2),
                                _g(GateKind.CX, q)],
    GateKind.CRZ: lambda q, p: [_g(GateKind.RZ, (q[1],), p[0] / 2),
                                _g(GateKind.CX, q),
                                _g(GateKind.RZ, (q[1],), -p[0] / 2),
                                _g(GateKind.CX, q)],
    GateKind.CP: lambda q, p: [_g(GateKind.RZ, (q[0],), p[0] / 2),
                               _g(GateKind.RZ, (q[1],), p[0] / 2),
                               _g(GateKind.CX, q),
                               _g(GateKind.RZ, (q[1],), -p[0] / 2),
                               _g(GateKind.CX, q)],
    GateKind.SWAP: lambda q, p: [_g(GateKind.CX, (q[0], q[1])),
                                 _g(GateKind.CX, (q[1], q[0])),
                                 _g(GateKind.CX, (q[0], q[1]))],
    GateKind.CCX: _rule_ccx,
}


def _expand(gate: Instruction, basis: frozenset[GateKind]) -> list[GateInstance]:
    if isinstance(gate, StateInjection):
        raise DecompositionError(
            f"'{gate.name}' is not a gate and has no decomposition")
    if gate.kind in basis:
        return [gate]
    rule = DECOMPOSITION_RULES.get(gate.kind)
    if rule is None:
        raise DecompositionError(
            f"no decomposition rule for {gate.kind.value} into the given basis")
    out: list[GateInstance] = []
    for replacement in rule(gate.qubits, gate.params):
        out.extend(_expand(replacement, basis))
    return out


def decompose(circuit: Circuit, basis: frozenset[GateKind] | set[GateKind]) -> Circuit:
    """Lower every gate into ``basis``; unitary is preserved up to global phase."""
    basis = frozenset(basis)
    if not basis >= UNIVERSAL_BASIS:
        missing = ", ".join(sorted(k.value for k in UNIVERSAL_BASIS - basis))
        raise ValueError(f"target basis must contain the universal set; missing {missing}")
    gates: list[GateInstance] = []
    for gate in circuit.gates:
        gates.extend(_expand(gate, basis))
    return Circuit(circuit.n_qubits, tuple(gates))


def check_gates(circuit: Circuit, policy: GateSetPolicy) -> list[int]:
    """Positions of instructions the policy rejects; empty list means ok.

    State injections are rejected under every policy, including ALL.
    """
    offending: list[int] = []
    for pos, gate in enumerate(circuit.gates):
        if isinstance(gate, StateInjection):
            offending.append(pos)
            continue
        if policy.allows(gate.kind):
            continue
        if policy.mode == LENIENT and policy.allowed != ALL:
            try:
                _expand(gate, policy.allowed)
                continue
            except DecompositionError:
                pass
        offending.append(pos)
    return offending


def circuit_depth(circuit: Circuit) -> int:
    """Longest chain of qubit-sharing instructions; 0 for an empty circuit."""
    level = [0] * circuit.n_qubits
    depth = 0
    for gate in circuit.gates:
        layer = 1 + max((level[q] for q in gate.qubits), default=0)
        for q in gate.qubits:
            level[q] = layer
        depth = max(depth, layer)
    return depth


def check_depth(circuit: Circuit, limit: int | None = None) -> DepthReport:
    """Measure depth and compare against ``limit`` (inclusive: depth == limit passes)."""
    depth = circuit_depth(circuit)
    return DepthReport(depth, limit, violated=limit is not None and depth > limit)
