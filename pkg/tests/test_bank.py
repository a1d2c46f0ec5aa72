"""Problem bank: schema loading, prompt rendering, bundled-set consistency."""
import numpy as np
import pytest

from qcjudge import (ALL, BankLoadError, Verdict, evaluate, load_bank,
                     load_problem, render_prompt, serialize_problem)
from qcjudge.bank import (constraints_summary, default_bank_path,
                          iter_fixtures, label_to_index, load_reference)
from qcjudge.judge import EXACT_STATE, PHASE_SENSITIVE, SUPPORT_PREDICATE

BANK = default_bank_path()
PROBLEMS = load_bank(BANK)
BY_ID = {p.id: p for p in PROBLEMS}

MINIMAL_SPEC = """\
id: {pid}
statement: |
  Prepare the excited state.
n_qubits: 1
{extra}judge:
  kind: exact_state
  phase_mode: ignored
  reference:
    - ["1", 1.0, 0.0]
"""


def write_problem(root, pid, text):
    pdir = root / pid
    pdir.mkdir(parents=True)
    (pdir / "spec").write_text(text)
    (pdir / "reference.qasm").write_text("OPENQASM 2.0;\nqreg q[1];\nx q[0];\n")
    return pdir


class TestBundledBank:
    def test_ships_at_least_ten_problems(self):
        assert len(PROBLEMS) >= 10

    def test_single_qubit_phase_problem_fields(self):
        problem = BY_ID["QPC001-A1"]
        assert problem.n_qubits == 1
        assert problem.judge.kind == EXACT_STATE
        assert problem.judge.phase_mode == PHASE_SENSITIVE
        np.testing.assert_array_equal(problem.judge.reference.amps, [0, 1j])

    def test_three_way_superposition_problem_fields(self):
        problem = BY_ID["QPC001-A4"]
        assert problem.n_qubits == 2
        assert problem.judge.kind == SUPPORT_PREDICATE
        assert problem.judge.required_zero == {label_to_index("11", 2)}
        assert problem.judge.required_nonzero == {0, 1, 2}
        assert problem.gate_policy.allowed == ALL

    def test_every_reference_is_accepted(self):
        for problem in PROBLEMS:
            report = evaluate(load_reference(BANK, problem.id), problem)
            assert report.verdict is Verdict.AC, (problem.id, report.error_text)

    def test_every_fixture_matches_named_verdict(self):
        checked = 0
        for problem in PROBLEMS:
            for name, source in iter_fixtures(BANK, problem.id):
                expected = Verdict(name.split("_")[-1].upper())
                report = evaluate(source, problem)
                assert report.verdict is expected, (problem.id, name)
                checked += 1
        assert checked >= 4 * len(PROBLEMS)

    def test_every_verdict_class_covered_by_fixtures(self):
        seen = set()
        for problem in PROBLEMS:
            for name, _ in iter_fixtures(BANK, problem.id):
                seen.add(name.split("_")[-1].upper())
        assert seen >= {"WA", "RE", "UME", "UGE", "DLE", "AC"}

    def test_serialize_load_round_trip(self, tmp_path):
        for problem in PROBLEMS:
            pdir = tmp_path / problem.id
            pdir.mkdir()
            (pdir / "spec").write_text(serialize_problem(problem))
            assert load_problem(pdir) == problem


class TestSchemaErrors:
    def test_zero_depth_limit_rejected(self, tmp_path):
        text = MINIMAL_SPEC.format(pid="p1", extra="depth_limit: 0\n")
        write_problem(tmp_path, "p1", text)
        with pytest.raises(BankLoadError, match="depth_limit"):
            load_problem(tmp_path / "p1")

    def test_unknown_field_named(self, tmp_path):
        text = MINIMAL_SPEC.format(pid="p2", extra="flavor: spicy\n")
        write_problem(tmp_path, "p2", text)
        with pytest.raises(BankLoadError, match="flavor"):
            load_problem(tmp_path / "p2")

    def test_id_must_match_directory(self, tmp_path):
        text = MINIMAL_SPEC.format(pid="other", extra="")
        write_problem(tmp_path, "p3", text)
        with pytest.raises(BankLoadError, match="does not match directory"):
            load_problem(tmp_path / "p3")

    def test_unknown_gate_name(self, tmp_path):
        text = MINIMAL_SPEC.format(
            pid="p4", extra="gates:\n  allowed: [warp]\n")
        with pytest.raises(BankLoadError, match="warp"):
            load_problem(write_problem(tmp_path, "p4", text))

    def test_bad_label_width(self, tmp_path):
        text = MINIMAL_SPEC.format(pid="p5", extra="").replace('"1"', '"01"')
        with pytest.raises(BankLoadError, match="reference"):
            load_problem(write_problem(tmp_path, "p5", text))

    def test_missing_spec_file(self, tmp_path):
        (tmp_path / "p6").mkdir()
        with pytest.raises(BankLoadError, match="missing spec"):
            load_problem(tmp_path / "p6")

    def test_empty_bank_rejected(self, tmp_path):
        with pytest.raises(BankLoadError, match="no problems"):
            load_bank(tmp_path)


class TestPrompts:
    def test_phase_sensitive_prompt(self):
        prompt = render_prompt(BY_ID["QPC001-A1"])
        assert ("States with different global phases will be considered "
                "incorrect.") in prompt
        assert "def solve() -> QuantumCircuit:" in prompt
        assert "QuantumCircuit(1)" in prompt
        assert "Generate only the body of the solve() function" in prompt

    def test_phase_ignored_prompt(self):
        prompt = render_prompt(BY_ID["QPC001-A4"])
        assert "Global phase is ignored in judge." in prompt

    def test_unrestricted_policy_emits_no_gate_line(self):
        assert "Allowed gates" not in render_prompt(BY_ID["QPC001-A4"])

    def test_restricted_policy_lists_gates(self):
        prompt = render_prompt(BY_ID["bell-phi-plus"])
        assert "Allowed gates: cx, h." in prompt

    def test_depth_limit_line(self):
        prompt = render_prompt(BY_ID["ghz-3"])
        assert "The circuit depth must not exceed 3." in prompt
        assert "depth" not in render_prompt(BY_ID["QPC001-A4"])

    def test_constraints_summary_compact(self):
        summary = constraints_summary(BY_ID["QPC001-A4"])
        assert "Global phase is ignored" in summary
