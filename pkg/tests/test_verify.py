"""
Unit tests for Rotmerge equivalence checking.
"""

import math

import numpy as np
import pytest

from rotmerge.circuit import Circuit, Gate
from rotmerge.errors import DimensionError, ResourceLimitError
from rotmerge.merge import fast_tmerge
from rotmerge.verify import (
    EquivalenceChecker,
    dense_unitary,
    equivalent_up_to_phase,
    phase_aligned_deviation,
)

from .circuit_factory import random_clifford_t


class TestDenseUnitary:
    """Test cases for the dense simulator."""

    def test_hadamard_then_cnot(self):
        """Test the Bell-state preparation unitary on |00>."""
        unitary = dense_unitary(Circuit(2, gates=[Gate.h(0), Gate.cnot(0, 1)]))
        column = unitary[:, 0]
        expected = np.array([1, 0, 0, 1]) / math.sqrt(2)
        assert np.allclose(column, expected)

    def test_qubit_zero_is_most_significant(self):
        """Test the wire ordering of basis states."""
        unitary = dense_unitary(Circuit(2, gates=[Gate.x(0)]))
        assert unitary[2, 0] == pytest.approx(1)

    def test_cap(self):
        """Test the qubit cap."""
        with pytest.raises(ResourceLimitError, match="cap of 3"):
            dense_unitary(Circuit(4), max_qubits=3)

    def test_phase_aligned_deviation(self):
        """Test that a global phase is ignored."""
        unitary = dense_unitary(random_clifford_t(2, 12, seed=5))
        assert phase_aligned_deviation(unitary, np.exp(0.3j) * unitary) < 1e-12
        assert phase_aligned_deviation(unitary, np.eye(4)) > 1e-3


class TestEquivalenceChecker:
    """Test cases for EquivalenceChecker."""

    def setup_method(self):
        """Set up test fixtures."""
        self.checker = EquivalenceChecker({"seed": 11})

    def test_identical_circuits(self):
        """Test a circuit against itself."""
        circuit = random_clifford_t(3, 30, seed=2)
        report = self.checker.check(circuit, circuit)
        assert report.equivalent
        assert report.method == "dense_unitary"
        assert report.samples == 1
        assert report.max_deviation < 1e-12

    def test_global_phase(self):
        """Test RZ(pi) against Z, which differ by a phase of -i."""
        a = Circuit(1, gates=[Gate.rz(0, "pi")])
        b = Circuit(1, gates=[Gate.z(0)])
        assert self.checker.check(a, b).equivalent

    def test_detects_difference(self):
        """Test T against its inverse."""
        a = Circuit(1, gates=[Gate.t(0)])
        b = Circuit(1, gates=[Gate.tdg(0)])
        report = self.checker.check(a, b)
        assert not report.equivalent
        assert report.max_deviation > 0.1

    def test_dimension_mismatch(self):
        """Test circuits on different qubit counts."""
        with pytest.raises(DimensionError):
            self.checker.check(Circuit(1), Circuit(2))

    def test_parameters(self):
        """Test symbolic angles at sampled values."""
        merged = Circuit(1, gates=[Gate.rz(0, "a+b")])
        split = Circuit(1, gates=[Gate.rz(0, "a"), Gate.rz(0, "b")])
        report = self.checker.check(split, merged)
        assert report.equivalent
        assert report.samples == 5
        assert set(report.assignments[0]) == {"a", "b"}
        assert not self.checker.check(split, Circuit(1, gates=[Gate.rz(0, "a")])).equivalent

    def test_samples_avoid_clifford_points(self):
        """Test that drawn values stay away from multiples of pi/2."""
        checker = EquivalenceChecker({"n_param_samples": 200, "clifford_margin": 0.05})
        for assignment in checker.assignments(["a"], np.random.default_rng(0)):
            quarter = assignment["a"] / (math.pi / 2)
            assert abs(quarter - round(quarter)) * (math.pi / 2) > 0.05

    def test_reproducible(self):
        """Test that the seed fixes the sampled values."""
        circuit = Circuit(1, gates=[Gate.rz(0, "a")])
        first = self.checker.check(circuit, circuit).assignments
        second = EquivalenceChecker({"seed": 11}).check(circuit, circuit).assignments
        assert first == second

    def test_statevector_sampling(self):
        """Test the sampling path above the dense cap."""
        checker = EquivalenceChecker({"dense_max_qubits": 2, "seed": 3})
        circuit = random_clifford_t(5, 60, seed=9)
        report = checker.check(circuit, fast_tmerge(circuit).circuit)
        assert report.method == "statevector_sampling"
        assert report.equivalent
        wrong = circuit.with_gates(list(circuit.gates) + [Gate.t(4)])
        assert not checker.check(circuit, wrong).equivalent

    def test_too_many_qubits(self):
        """Test the sampling cap."""
        checker = EquivalenceChecker({"dense_max_qubits": 1, "sampling_max_qubits": 2})
        with pytest.raises(ResourceLimitError, match="cap 2"):
            checker.check(Circuit(3), Circuit(3))

    def test_report_dict(self):
        """Test the JSON form of a report."""
        data = equivalent_up_to_phase(Circuit(1), Circuit(1, gates=[Gate.h(0), Gate.h(0)])).to_dict()
        assert data["equivalent"] is True
        assert data["method"] == "dense_unitary"
        assert data["seed"] == 2024
        assert data["assignments"] == [{}]


if __name__ == '__main__':
    pytest.main([__file__])
