"""
Frontend for the engine's restricted OpenQASM 2.0 dialect.

Accepted grammar, in order:

    OPENQASM 2.0;
    include "qelib1.inc";          // optional, at most once, no-op
    qreg <name>[<size>];           // one or more, concatenated in order
    <gate>[(<angle>, ...)] <name>[<i>], ...;
    initialize <name>[<i>], ...;   // state injection, parsed but never allowed

Angle expressions allow numeric literals, ``pi``, unary +/-, the four
arithmetic operators, and parentheses; they are evaluated to radians at parse
time. ``measure``/``creg``/``if``/``reset``/``opaque``/``gate``/``barrier``
are recognized and rejected as unsupported constructs.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .circuit import (GATE_NAMES, Circuit, GateInstance, Instruction,
                      StateInjection, validate)

LEX = "lex"
PARSE = "parse"
SEMANTIC = "semantic"
UNSUPPORTED = "unsupported_construct"

NATIVE_QASM = "native_qasm"
ADAPTER_EXPORT = "adapter_export"

_UNSUPPORTED_KEYWORDS = frozenset(
    {"measure", "creg", "if", "reset", "opaque", "gate", "barrier"})

HEADER = "OPENQASM 2.0;"
ALLOWED_INCLUDE = '"qelib1.inc"'


@dataclass(frozen=True)
class SourceProgram:
    """Submission text plus where it came from."""

    text: str
    origin: str = NATIVE_QASM


class FrontendError(Exception):
    """Parse failure: category in {lex, parse, semantic, unsupported_construct}.

    ``line`` points at the first offending token; ``construct`` names the
    rejected keyword for unsupported_construct errors (the evaluator uses it
    to tell disallowed includes apart from other rejects).
    """

    def __init__(self, category: str, line: int, message: str,
                 construct: str | None = None):
        super().__init__(message)
        self.category = category
        self.line = max(1, line)
        self.message = message
        self.construct = construct

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


_TOKEN_RE = re.compile(r"""
    (?P<ws>[\t\r ]+)
  | (?P<comment>//[^\n]*)
  | (?P<nl>\n)
  | (?P<number>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<sym>->|==|[{}\[\](),;+\-*/])
""", re.VERBOSE)

_EOF = ("eof", "", 0)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    # Unknown characters become "error" tokens so the parser reports problems
    # in document order instead of failing at the lexer's position first.
    tokens: list[tuple[str, str, int]] = []
    line, pos = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            tokens.append(("error", text[pos], line))
            pos += 1
            continue
        kind = m.lastgroup
        if kind == "nl":
            line += 1
        elif kind not in ("ws", "comment"):
            tokens.append((kind, m.group(), line))
        pos = m.end()
    tokens.append(("eof", "", line))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.registers: list[tuple[str, int, int]] = []  # (name, offset, size)
        self.gates: list[Instruction] = []

    # -- token plumbing ---

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if tok[0] == "error":
            raise FrontendError(LEX, tok[2], f"unexpected character {tok[1]!r}")
        if tok[0] != "eof":
            self.i += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> tuple[str, str, int]:
        tok = self.advance()
        if tok[0] != kind or (text is not None and tok[1] != text):
            want = text if text is not None else kind
            raise FrontendError(PARSE, tok[2],
                                f"expected {want!r}, found {tok[1] or 'end of input'!r}")
        return tok

    # -- grammar ---

    def parse_program(self) -> Circuit:
        self.parse_header()
        if self.peek()[1] == "include":
            self.parse_include()
        while self.peek()[1] == "qreg":
            self.parse_qreg()
        if not self.registers:
            tok = self.peek()
            raise FrontendError(SEMANTIC, tok[2], "no quantum register declared")
        while self.peek()[0] != "eof":
            self.parse_statement()
        n_qubits = sum(size for _, _, size in self.registers)
        return Circuit(n_qubits, tuple(self.gates))

    def parse_header(self):
        tok = self.peek()
        if tok[0] != "ident" or tok[1] != "OPENQASM":
            raise FrontendError(PARSE, tok[2], "missing 'OPENQASM 2.0;' header")
        self.advance()
        version = self.expect("number")
        if version[1] != "2.0":
            raise FrontendError(UNSUPPORTED, version[2],
                                f"unsupported OPENQASM version {version[1]}",
                                construct="version")
        self.expect("sym", ";")

    def parse_include(self):
        tok = self.advance()
        target = self.expect("string")
        if target[1] != ALLOWED_INCLUDE:
            raise FrontendError(UNSUPPORTED, tok[2],
                                f"include of {target[1]} is not allowlisted",
                                construct="include")
        self.expect("sym", ";")

    def parse_qreg(self):
        tok = self.advance()
        name = self.expect("ident")
        self.expect("sym", "[")
        size_tok = self.expect("number")
        if not size_tok[1].isdigit() or int(size_tok[1]) < 1:
            raise FrontendError(SEMANTIC, size_tok[2],
                                f"register size must be a positive integer, "
                                f"got {size_tok[1]}")
        self.expect("sym", "]")
        self.expect("sym", ";")
        if any(name[1] == existing for existing, _, _ in self.registers):
            raise FrontendError(SEMANTIC, name[2],
                                f"register {name[1]!r} declared twice")
        offset = sum(size for _, _, size in self.registers)
        self.registers.append((name[1], offset, int(size_tok[1])))

    def parse_statement(self):
        tok = self.peek()
        if tok[0] == "error":
            self.advance()
        if tok[0] != "ident":
            raise FrontendError(PARSE, tok[2],
                                f"expected a gate statement, found {tok[1]!r}")
        name = tok[1]
        if name in _UNSUPPORTED_KEYWORDS:
            raise FrontendError(UNSUPPORTED, tok[2],
                                f"'{name}' is not supported by this dialect",
                                construct=name)
        if name in ("include", "qreg"):
            raise FrontendError(PARSE, tok[2],
                                f"'{name}' must appear before gate statements")
        self.advance()
        if name == "initialize":
            qubits = self.parse_operands(tok[2], arity=None)
            self.gates.append(StateInjection("initialize", tuple(qubits)))
            return
        kind = GATE_NAMES.get(name)
        if kind is None:
            raise FrontendError(SEMANTIC, tok[2], f"unknown gate {name!r}")
        params: list[float] = []
        if self.peek()[1] == "(":
            self.advance()
            params.append(self.parse_expr())
            while self.peek()[1] == ",":
                self.advance()
                params.append(self.parse_expr())
            self.expect("sym", ")")
        if len(params) != kind.param_count:
            raise FrontendError(SEMANTIC, tok[2],
                                f"{name} takes {kind.param_count} parameter(s), "
                                f"got {len(params)}")
        qubits = self.parse_operands(tok[2], arity=kind.arity, gate_name=name)
        self.gates.append(GateInstance(kind, tuple(qubits), tuple(params)))

    def parse_operands(self, line: int, arity: int | None,
                       gate_name: str = "initialize") -> list[int]:
        qubits = [self.parse_operand()]
        while self.peek()[1] == ",":
            self.advance()
            qubits.append(self.parse_operand())
        self.expect("sym", ";")
        if arity is not None and len(qubits) != arity:
            raise FrontendError(SEMANTIC, line,
                                f"{gate_name} expects {arity} operand(s), "
                                f"got {len(qubits)}")
        if len(set(qubits)) != len(qubits):
            raise FrontendError(SEMANTIC, line,
                                f"{gate_name} operands must be distinct qubits")
        return qubits

    def parse_operand(self) -> int:
        name = self.expect("ident")
        for reg, offset, size in self.registers:
            if reg == name[1]:
                break
        else:
            raise FrontendError(SEMANTIC, name[2],
                                f"undeclared register {name[1]!r}")
        self.expect("sym", "[")
        idx_tok = self.expect("number")
        if not idx_tok[1].isdigit():
            raise FrontendError(SEMANTIC, idx_tok[2],
                                f"qubit index must be an integer, got {idx_tok[1]}")
        idx = int(idx_tok[1])
        if idx >= size:
            raise FrontendError(SEMANTIC, idx_tok[2],
                                f"index {idx} out of range for {name[1]}[{size}]")
        self.expect("sym", "]")
        return offset + idx

    # -- angle expressions ---

    def parse_expr(self) -> float:
        value = self.parse_term()
        while self.peek()[1] in ("+", "-"):
            op = self.advance()[1]
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> float:
        value = self.parse_unary()
        while self.peek()[1] in ("*", "/"):
            op = self.advance()
            rhs = self.parse_unary()
            if op[1] == "/":
                if rhs == 0.0:
                    raise FrontendError(SEMANTIC, op[2],
                                        "division by zero in angle expression")
                value = value / rhs
            else:
                value = value * rhs
        return value

    def parse_unary(self) -> float:
        tok = self.peek()
        if tok[1] in ("-", "+"):
            self.advance()
            value = self.parse_unary()
            return -value if tok[1] == "-" else value
        return self.parse_atom()

    def parse_atom(self) -> float:
        tok = self.advance()
        if tok[0] == "number":
            return float(tok[1])
        if tok[0] == "ident" and tok[1] == "pi":
            return math.pi
        if tok[1] == "(":
            value = self.parse_expr()
            self.expect("sym", ")")
            return value
        raise FrontendError(PARSE, tok[2],
                            f"expected a number, 'pi', or '(', found {tok[1]!r}")


def parse(source: SourceProgram | str) -> Circuit:
    """Parse dialect text into a validated :class:`Circuit`.

    Raises :class:`FrontendError` on any lexical, structural, semantic, or
    unsupported-construct failure; a returned circuit always passes
    :func:`qcjudge.circuit.validate`.
    """
    text = source.text if isinstance(source, SourceProgram) else source
    return _Parser(text).parse_program()


def _format_angle(value: float) -> str:
    # repr round-trips doubles exactly, which the parse(emit(c)) == c
    # property depends on.
    return repr(value)


def emit(circuit: Circuit, origin: str = NATIVE_QASM) -> SourceProgram:
    """Serialize a valid circuit to dialect text (single register ``q``)."""
    problems = validate(circuit)
    if problems:
        raise ValueError("cannot emit invalid circuit: " + "; ".join(problems))
    lines = [HEADER, f"include {ALLOWED_INCLUDE};", f"qreg q[{circuit.n_qubits}];"]
    for gate in circuit.gates:
        operands = ",".join(f"q[{q}]" for q in gate.qubits)
        if isinstance(gate, StateInjection):
            lines.append(f"{gate.name} {operands};")
        elif gate.params:
            args = ",".join(_format_angle(p) for p in gate.params)
            lines.append(f"{gate.kind.value}({args}) {operands};")
        else:
            lines.append(f"{gate.kind.value} {operands};")
    return SourceProgram("\n".join(lines) + "\n", origin=origin)
