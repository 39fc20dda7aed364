import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_unitary
from xorgate.errors import DimensionMismatch, FormatError, NotUnitary
from xorgate.gate_verify import (
    FORBIDDEN,
    GateReport,
    functional_fidelity,
    leakage,
    pattern_check,
    verify_hamiltonian,
    verify_unitary,
)
from xorgate.pauli import PauliDecomposition, reconstruct
from xorgate.tensor_core import EvolutionConfig, evolution_operator
from xorgate.xor_family import basis_bits, reference_hamiltonian, xor_hamiltonian, xor_unitary

# worst-case fidelity of the reference Hamiltonian run for half the interval;
# from a brute-force minimisation over initial C states on the Bloch sphere
HALF_TIME_FIDELITY = 0.3705904774487393


def reference_gate(scale=1.0):
    return evolution_operator(reconstruct(reference_hamiltonian()) * scale)


def brute_force_fidelity(u, n=400):
    """Minimise P(C = A xor B) over a grid of initial C states."""
    worst = 1.0
    thetas = np.linspace(0, math.pi, n)
    phis = np.linspace(0, 2 * math.pi, 2 * n, endpoint=False)
    for col in range(0, 8, 2):
        a, b, _ = basis_bits(col)
        good = [r for r in range(8) if basis_bits(r)[2] == a ^ b]
        # columns col (C=1) and col+1 (C=0)
        r1, r0 = u[good, col], u[good, col + 1]
        for t in thetas:
            psi = np.cos(t / 2) * r1[:, None] + np.sin(t / 2) * np.exp(1j * phis)[None, :] * r0[:, None]
            worst = min(worst, float(np.min(np.sum(np.abs(psi) ** 2, axis=0))))
    return worst


class TestMask:
    def test_counts(self):
        assert FORBIDDEN.sum() == 32
        assert np.all(FORBIDDEN.sum(axis=0) == 4)

    def test_read_only(self):
        with pytest.raises(ValueError):
            FORBIDDEN[0, 0] = False

    def test_entries(self):
        # input |110> (index 1): A xor B = 0, so rows with C = 1 are forbidden
        assert FORBIDDEN[0, 1] and not FORBIDDEN[1, 1]
        # input |100> (index 3): A xor B = 1
        assert FORBIDDEN[1, 3] and not FORBIDDEN[0, 3]


class TestPattern:
    def test_reference_passes(self):
        ok, err = pattern_check(reference_gate())
        assert ok and err <= 1e-12

    def test_identity_fails(self):
        ok, err = pattern_check(np.eye(8))
        assert not ok and err == 1.0

    def test_rejects_non_unitary(self):
        with pytest.raises(NotUnitary):
            pattern_check(2 * np.eye(8))

    def test_rejects_shape(self):
        with pytest.raises(DimensionMismatch):
            pattern_check(np.eye(4))


class TestFidelity:
    def test_reference(self):
        assert functional_fidelity(reference_gate()) == pytest.approx(1.0, abs=1e-12)

    def test_identity(self):
        assert functional_fidelity(np.eye(8)) == 0.0

    def test_half_time(self):
        assert abs(functional_fidelity(reference_gate(0.5)) - HALF_TIME_FIDELITY) <= 1e-9

    def test_matches_brute_force(self, rng):
        for u in [reference_gate(0.5), reference_gate(0.2), random_unitary(rng)]:
            bf = brute_force_fidelity(u)
            exact = functional_fidelity(u)
            assert exact <= bf + 1e-12
            assert bf - exact <= 1e-4

    def test_pass_iff_unit_fidelity(self, rng):
        gates = [xor_unitary(*abc) for abc in rng.uniform(0, 2 * math.pi, (30, 3))]
        gates += [random_unitary(rng) for _ in range(100)]
        for u in gates:
            ok, _ = pattern_check(u)
            assert ok == (functional_fidelity(u) >= 1 - 1e-9)

    def test_blind_to_final_ab_state(self, rng):
        # mixing A, B while leaving C alone keeps the verdict
        mix = np.kron(random_unitary(rng, 4), np.eye(2))
        u = mix @ reference_gate()
        assert pattern_check(u)[0]
        assert functional_fidelity(u) == pytest.approx(1.0, abs=1e-12)

    def test_blind_to_c_phase(self):
        phase = np.kron(np.eye(4), np.diag([1j, np.exp(0.3j)]))
        assert pattern_check(phase @ reference_gate())[0]

    def test_leakage(self, rng):
        assert leakage(reference_gate()) <= 1e-24
        assert leakage(np.eye(8)) == pytest.approx(0.5)
        u = random_unitary(rng)
        assert leakage(u) == pytest.approx(np.sum(np.abs(u[FORBIDDEN]) ** 2) / 8)

    @given(st.floats(0, 1))
    @settings(max_examples=30, deadline=None)
    def test_bounded(self, s):
        f = functional_fidelity(reference_gate(s))
        assert 0.0 <= f <= 1.0


class TestVerifyHamiltonian:
    def test_reference(self):
        r = verify_hamiltonian(reference_hamiltonian())
        assert r.truth_table_pass and r.two_spin_only
        assert r.fidelity == pytest.approx(1.0, abs=1e-12)
        assert r.weight_profile[2] == pytest.approx(math.sqrt(2) * math.pi / 4)
        assert r.weight_profile[0] == r.weight_profile[1] == r.weight_profile[3] == 0.0

    def test_zero_hamiltonian(self):
        r = verify_hamiltonian(PauliDecomposition({}))
        assert not r.truth_table_pass
        assert r.fidelity == 0.0
        assert r.two_spin_only

    def test_sign_flip_breaks_gate(self):
        terms = dict(reference_hamiltonian().items())
        terms["IYX"] = -terms["IYX"]
        r = verify_hamiltonian(PauliDecomposition(terms))
        assert not r.truth_table_pass
        assert r.two_spin_only

    def test_three_spin_term_flagged(self):
        terms = dict(reference_hamiltonian().items())
        terms["XXX"] = 0.1
        r = verify_hamiltonian(PauliDecomposition(terms))
        assert not r.two_spin_only
        assert r.weight_profile[3] == pytest.approx(0.1)

    def test_interval(self):
        cfg = EvolutionConfig(delta_t=3.0)
        assert verify_hamiltonian(xor_hamiltonian(1.0, 2.0, 3.0, cfg), cfg).truth_table_pass
        assert not verify_hamiltonian(xor_hamiltonian(1.0, 2.0, 3.0), cfg).truth_table_pass


class TestReport:
    def test_text(self):
        text = verify_hamiltonian(reference_hamiltonian()).to_text()
        assert "truth_table=PASS" in text
        assert "fidelity=1.000000000" in text
        assert "two_spin_only=true" in text

    def test_round_trip(self):
        for r in (verify_hamiltonian(reference_hamiltonian()), verify_unitary(np.eye(8))):
            back = GateReport.from_text(r.to_text())
            assert back.truth_table_pass == r.truth_table_pass
            assert back.two_spin_only == r.two_spin_only
            assert back.to_text() == r.to_text()

    def test_malformed(self):
        with pytest.raises(FormatError):
            GateReport.from_text("truth_table=PASS\n")
        with pytest.raises(FormatError):
            GateReport.from_text("nonsense\n")
