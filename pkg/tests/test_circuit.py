"""
Unit tests for Rotmerge circuit model.
"""

import pytest

from rotmerge.angle import Angle
from rotmerge.circuit import Circuit, Gate, stats
from rotmerge.errors import UsageError

from .circuit_factory import one_wire_circuit


class TestGate:
    """Test cases for Gate."""

    def test_t_is_stored_as_rz(self):
        """Test T and Tdg normalization."""
        assert Gate.t(0) == Gate.rz(0, Angle.pi_fraction(1, 4))
        assert Gate.tdg(2).angle == Angle.pi_fraction(7, 4)
        assert Gate.t(0).is_rotation

    def test_rz_accepts_text(self):
        """Test angle coercion from text."""
        assert Gate.rz(0, "3pi/4").angle == Angle.pi_fraction(3, 4)

    def test_validation(self):
        """Test arity and qubit checks."""
        with pytest.raises(UsageError, match="unknown gate"):
            Gate("CCX", (0, 1, 2))
        with pytest.raises(UsageError, match="acts on 2"):
            Gate("CNOT", (0,))
        with pytest.raises(UsageError, match="negative"):
            Gate.h(-1)
        with pytest.raises(UsageError, match="distinct"):
            Gate.cnot(1, 1)
        with pytest.raises(UsageError, match="needs an angle"):
            Gate("RZ", (0,))
        with pytest.raises(UsageError, match="takes no angle"):
            Gate("H", (0,), Angle.pi_fraction(1, 4))

    def test_is_clifford(self):
        """Test Clifford classification of rotations."""
        assert Gate.rz(0, "pi/2").is_clifford
        assert not Gate.t(0).is_clifford
        assert not Gate.rz(0, "a").is_clifford
        assert Gate.cz(0, 1).is_clifford

    def test_str(self):
        """Test text form."""
        assert str(Gate.cnot(0, 1)) == "CNOT 0 1"
        assert str(Gate.t(1)) == "RZ(pi/4) 1"


class TestCircuit:
    """Test cases for Circuit."""

    def test_default_names(self):
        """Test generated wire names."""
        assert Circuit(3).qubit_names == ["q0", "q1", "q2"]

    def test_validation(self):
        """Test construction checks."""
        with pytest.raises(UsageError, match="at least one qubit"):
            Circuit(0)
        with pytest.raises(UsageError, match="qubit names"):
            Circuit(2, ["a"])
        with pytest.raises(UsageError, match="uses qubit 2"):
            Circuit(2, gates=[Gate.h(2)])
        with pytest.raises(UsageError):
            Circuit(1).append(Gate.cnot(0, 1))

    def test_one_wire_stats(self):
        """Test gate counts of the one-qubit example."""
        result = one_wire_circuit().stats()
        assert result.t_count == 4
        assert result.non_clifford_rz_count == 4
        assert result.h_count == 2
        assert result.internal_h_count == 2
        assert result.gate_count == 7
        assert result.n == 1

    def test_stats_counts(self):
        """Test counting rules for non-T rotations."""
        circuit = Circuit(
            2,
            gates=[
                Gate.h(0),
                Gate.rz(0, "pi/8"),
                Gate.rz(1, "3pi/4"),
                Gate.rz(1, "pi/2"),
                Gate.h(1),
                Gate.rz(0, "a"),
                Gate.h(0),
            ],
        )
        result = stats(circuit)
        assert result.t_count == 1
        assert result.non_clifford_rz_count == 3
        assert result.h_count == 3
        assert result.internal_h_count == 1
        assert result.to_dict()["t_count"] == 1

    def test_empty_stats(self):
        """Test a circuit without rotations."""
        result = Circuit(1, gates=[Gate.h(0)]).stats()
        assert result.t_count == 0
        assert result.internal_h_count == 0

    def test_helpers(self):
        """Test gate list helpers."""
        circuit = Circuit(2).extend([Gate.h(0), Gate.rz(1, "a+b"), Gate.t(0), Gate.cz(0, 1)])
        assert circuit.rotation_positions() == [1, 2]
        assert [g.kind for g in circuit.clifford_gates()] == ["H", "CZ"]
        assert circuit.symbols == ("a", "b")
        assert len(circuit) == 4
        copy = circuit.with_gates([Gate.x(1)])
        assert copy.qubit_names == circuit.qubit_names
        assert list(copy) == [Gate.x(1)]


if __name__ == '__main__':
    pytest.main([__file__])
