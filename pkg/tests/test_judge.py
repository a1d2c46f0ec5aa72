"""State judging: exact references, phase handling, support predicates."""
import cmath
import math

import numpy as np
import pytest

from qcjudge import JudgeSpec, StateVector, judge_state
from qcjudge.judge import EXACT_STATE, PHASE_IGNORED, PHASE_SENSITIVE, SUPPORT_PREDICATE

I_ONE = StateVector.from_amplitudes([0, 1j])
ROOT2 = 1 / math.sqrt(2)


def exact(reference, phase_mode, tolerance=1e-6):
    return JudgeSpec(kind=EXACT_STATE, reference=reference,
                     phase_mode=phase_mode, tolerance=tolerance)


class TestExactState:
    def test_identical_state_matches_sensitive(self):
        result = judge_state(I_ONE, exact(I_ONE, PHASE_SENSITIVE))
        assert result.match

    def test_global_phase_rejected_when_sensitive(self):
        plain_one = StateVector.from_amplitudes([0, 1])
        result = judge_state(plain_one, exact(I_ONE, PHASE_SENSITIVE))
        assert not result.match

    def test_global_phase_accepted_when_ignored(self):
        plain_one = StateVector.from_amplitudes([0, 1])
        result = judge_state(plain_one, exact(I_ONE, PHASE_IGNORED))
        assert result.match

    def test_phase_invariance_when_ignored(self):
        rng = np.random.default_rng(13)
        reference = StateVector.from_amplitudes([ROOT2, 0, 0, ROOT2])
        for _ in range(40):
            phi = rng.uniform(-2 * math.pi, 2 * math.pi)
            rotated = StateVector(2, reference.amps * cmath.exp(1j * phi))
            assert judge_state(rotated, exact(reference, PHASE_IGNORED)).match

    def test_sensitive_threshold_behavior(self):
        # |e^{i phi} - 1| ~ |phi|; the cutoff sits at sqrt(2 * tolerance).
        reference = StateVector.from_amplitudes([ROOT2, ROOT2])
        spec = exact(reference, PHASE_SENSITIVE)
        cutoff = math.sqrt(2 * spec.tolerance)
        accept = StateVector(1, reference.amps * cmath.exp(1j * cutoff / 10))
        reject = StateVector(1, reference.amps * cmath.exp(1j * cutoff * 3))
        assert judge_state(accept, spec).match
        assert not judge_state(reject, spec).match
        assert judge_state(reference, spec).match

    def test_orthogonal_state_rejected_both_modes(self):
        zero = StateVector.from_amplitudes([1, 0])
        for mode in (PHASE_SENSITIVE, PHASE_IGNORED):
            assert not judge_state(zero, exact(I_ONE, mode)).match

    def test_diagnostic_mentions_fidelity(self):
        result = judge_state(I_ONE, exact(I_ONE, PHASE_IGNORED))
        assert "fidelity" in result.diagnostic

    def test_dimension_mismatch_raises(self):
        with pytest.raises(ValueError):
            judge_state(StateVector.zero(2), exact(I_ONE, PHASE_IGNORED))

    def test_non_normalized_output_rejected(self):
        bad = StateVector(1, np.array([0.5, 0.5], dtype=complex))
        with pytest.raises(ValueError, match="unit-norm"):
            judge_state(bad, exact(I_ONE, PHASE_IGNORED))


class TestSupportPredicate:
    SPEC = JudgeSpec(kind=SUPPORT_PREDICATE, required_nonzero=frozenset({0, 1, 2}),
                     required_zero=frozenset({3}))

    def test_three_way_superposition_matches(self):
        third = 1 / math.sqrt(3)
        state = StateVector.from_amplitudes([third, third, third, 0])
        assert judge_state(state, self.SPEC).match

    def test_any_nonzero_values_accepted(self):
        rng = np.random.default_rng(19)
        for _ in range(40):
            amps = np.zeros(4, dtype=complex)
            amps[:3] = rng.normal(size=3) + 1j * rng.normal(size=3)
            amps[:3] += 0.3 * np.sign(amps[:3].real + 1e-9)  # keep clearly nonzero
            state = StateVector.from_amplitudes(amps)
            assert judge_state(state, self.SPEC).match

    def test_required_zero_violation(self):
        state = StateVector.from_amplitudes([0.5, 0.5, 0.5, 0.5])
        result = judge_state(state, self.SPEC)
        assert not result.match
        assert "index 3" in result.diagnostic

    def test_required_nonzero_violation(self):
        state = StateVector.from_amplitudes([ROOT2, ROOT2, 0, 0])
        result = judge_state(state, self.SPEC)
        assert not result.match
        assert "index 2" in result.diagnostic

    def test_overlapping_sets_rejected(self):
        with pytest.raises(ValueError, match="overlap"):
            JudgeSpec(kind=SUPPORT_PREDICATE, required_nonzero=frozenset({0}),
                      required_zero=frozenset({0}))


class TestSpecValidation:
    def test_reference_must_be_normalized(self):
        lopsided = StateVector(1, np.array([1.0, 1.0], dtype=complex))
        with pytest.raises(ValueError, match="unit-norm"):
            JudgeSpec(kind=EXACT_STATE, reference=lopsided)

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="kind"):
            JudgeSpec(kind="fuzzy")

    def test_tolerance_range(self):
        with pytest.raises(ValueError, match="tolerance"):
            JudgeSpec(kind=EXACT_STATE, reference=I_ONE, tolerance=0.0)
