"""Dialect parsing, emission, round-trip, and error reporting."""
import math

import numpy as np
import pytest

from qcjudge import (Circuit, FrontendError, GateInstance, GateKind,
                     StateInjection, emit, parse)
from qcjudge.qasm import LEX, PARSE, SEMANTIC, UNSUPPORTED, SourceProgram

from oracles import random_circuit


def g(kind, *qubits, params=()):
    return GateInstance(kind, tuple(qubits), tuple(params))


class TestParse:
    def test_single_gate_program(self):
        circuit = parse("OPENQASM 2.0; qreg q[1]; h q[0];")
        assert circuit == Circuit(1, (g(GateKind.H, 0),))

    def test_three_gate_reference_program(self):
        text = "OPENQASM 2.0; qreg q[2]; h q[0]; ch q[0],q[1]; cx q[1],q[0];"
        assert parse(text) == Circuit(2, (g(GateKind.H, 0),
                                          g(GateKind.CH, 0, 1),
                                          g(GateKind.CX, 1, 0)))

    def test_accepts_source_program_wrapper(self):
        source = SourceProgram("OPENQASM 2.0; qreg q[1]; x q[0];")
        assert parse(source) == Circuit(1, (g(GateKind.X, 0),))

    def test_measure_is_unsupported(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[1]; measure q[0] -> c[0];")
        assert info.value.category == UNSUPPORTED
        assert info.value.construct == "measure"

    @pytest.mark.parametrize("stmt,construct", [
        ("creg c[1];", "creg"),
        ("reset q[0];", "reset"),
        ("if (c == 0) x q[0];", "if"),
        ("opaque foo q;", "opaque"),
        ("barrier q[0];", "barrier"),
        ("gate mine a { h a; }", "gate"),
    ])
    def test_other_unsupported_keywords(self, stmt, construct):
        with pytest.raises(FrontendError) as info:
            parse(f"OPENQASM 2.0; qreg q[1]; {stmt}")
        assert info.value.category == UNSUPPORTED
        assert info.value.construct == construct

    def test_allowlisted_include_is_noop(self):
        circuit = parse('OPENQASM 2.0; include "qelib1.inc"; qreg q[1]; x q[0];')
        assert circuit == Circuit(1, (g(GateKind.X, 0),))

    def test_other_include_rejected(self):
        with pytest.raises(FrontendError) as info:
            parse('OPENQASM 2.0; include "mylib.inc"; qreg q[1];')
        assert info.value.category == UNSUPPORTED
        assert info.value.construct == "include"

    def test_missing_header(self):
        with pytest.raises(FrontendError) as info:
            parse("qreg q[1]; x q[0];")
        assert info.value.category == PARSE
        assert "OPENQASM" in info.value.message

    def test_wrong_version(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 3.0; qreg q[1];")
        assert info.value.category == UNSUPPORTED
        assert info.value.construct == "version"

    def test_unknown_gate(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[1]; foo q[0];")
        assert info.value.category == SEMANTIC
        assert "unknown gate" in info.value.message

    def test_arity_mismatch(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[2]; cx q[0];")
        assert info.value.category == SEMANTIC

    def test_param_mismatch(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[1]; ry q[0];")
        assert info.value.category == SEMANTIC
        assert "1 parameter" in info.value.message

    def test_duplicate_operand(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[2]; cx q[0],q[0];")
        assert "distinct" in info.value.message

    def test_index_out_of_register(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[1]; x q[1];")
        assert info.value.category == SEMANTIC
        assert "out of range" in info.value.message

    def test_undeclared_register(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[1]; x r[0];")
        assert "undeclared" in info.value.message

    def test_no_register(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; x q[0];")
        assert "no quantum register" in info.value.message

    def test_registers_concatenate_in_order(self):
        circuit = parse("OPENQASM 2.0; qreg a[2]; qreg b[1]; x b[0]; h a[1];")
        assert circuit == Circuit(3, (g(GateKind.X, 2), g(GateKind.H, 1)))

    def test_duplicate_register_name(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[1]; qreg q[2];")
        assert "declared twice" in info.value.message

    def test_zero_size_register(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[0];")
        assert "positive" in info.value.message

    def test_register_after_gate_rejected(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[1]; x q[0]; qreg r[1];")
        assert info.value.category == PARSE

    def test_initialize_becomes_state_injection(self):
        circuit = parse("OPENQASM 2.0; qreg q[2]; initialize q[0],q[1];")
        assert circuit == Circuit(2, (StateInjection("initialize", (0, 1)),))

    def test_comments_ignored(self):
        circuit = parse("OPENQASM 2.0; // header\nqreg q[1]; // reg\nx q[0];\n")
        assert circuit == Circuit(1, (g(GateKind.X, 0),))

    def test_lex_error_on_garbage(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[1]; x q[0]; @!")
        assert info.value.category == LEX


class TestAngleExpressions:
    @pytest.mark.parametrize("expr,value", [
        ("pi", math.pi),
        ("pi/2", math.pi / 2),
        ("-pi/4", -math.pi / 4),
        ("3*pi/4", 3 * math.pi / 4),
        ("(1+2)*0.5", 1.5),
        ("1e-3", 1e-3),
        ("2.5e2", 250.0),
        ("1-2-3", -4.0),
        ("8/2/2", 2.0),
    ])
    def test_expression_values(self, expr, value):
        circuit = parse(f"OPENQASM 2.0; qreg q[1]; rz({expr}) q[0];")
        assert circuit.gates[0].params[0] == pytest.approx(value, abs=0)

    def test_multi_parameter_gate(self):
        circuit = parse("OPENQASM 2.0; qreg q[1]; u(pi/2, 0, pi) q[0];")
        assert circuit.gates[0].params == pytest.approx(
            (math.pi / 2, 0.0, math.pi))

    def test_division_by_zero(self):
        with pytest.raises(FrontendError) as info:
            parse("OPENQASM 2.0; qreg q[1]; rz(1/0) q[0];")
        assert "division by zero" in info.value.message


class TestErrorLocality:
    def test_line_points_at_first_offending_token(self):
        text = "OPENQASM 2.0;\nqreg q[2];\nh q[0];\nfoo q[1];\n"
        with pytest.raises(FrontendError) as info:
            parse(text)
        assert info.value.line == 4

    def test_error_before_later_lex_garbage(self):
        text = "OPENQASM 2.0;\nqreg q[1];\nmeasure q[0] -> c[0];\n@@@\n"
        with pytest.raises(FrontendError) as info:
            parse(text)
        assert info.value.construct == "measure"
        assert info.value.line == 3


class TestEmit:
    def test_gate_order_preserved(self):
        text = emit(Circuit(1, (g(GateKind.X, 0), g(GateKind.S, 0)))).text
        assert text.index("x q[0];") < text.index("s q[0];")

    def test_empty_circuit(self):
        text = emit(Circuit(2)).text
        assert "qreg q[2];" in text
        assert text.strip().endswith("qreg q[2];")

    def test_invalid_circuit_rejected(self):
        with pytest.raises(ValueError):
            emit(Circuit(1, (g(GateKind.CX, 0, 1),)))

    def test_state_injection_emitted(self):
        text = emit(Circuit(2, (StateInjection("initialize", (0, 1)),))).text
        assert "initialize q[0],q[1];" in text


class TestRoundTrip:
    def test_four_gate_success_circuit(self):
        circuit = Circuit(2, (g(GateKind.RY, 0, params=(2 * math.asin(1 / math.sqrt(3)),)),
                              g(GateKind.X, 0),
                              g(GateKind.CRY, 0, 1, params=(math.pi / 2,)),
                              g(GateKind.X, 0)))
        assert parse(emit(circuit)) == circuit

    def test_random_circuits(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            n = int(rng.integers(1, 5))
            circuit = random_circuit(rng, n, int(rng.integers(0, 10)))
            assert parse(emit(circuit)) == circuit

    def test_determinism(self):
        text = "OPENQASM 2.0; qreg q[2]; ry(pi/7) q[0]; cx q[0],q[1];"
        assert parse(text) == parse(text)
        assert emit(parse(text)).text == emit(parse(text)).text
