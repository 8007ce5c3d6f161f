"""
Rotmerge Verify Module
Numerical equivalence checks of circuits up to global phase.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional

import numpy as np

from .circuit import Circuit, Gate
from .errors import DimensionError, ResourceLimitError

logger = logging.getLogger(__name__)

_S2 = 1 / math.sqrt(2)
_FIXED = {
    "H": np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "Sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ).reshape(2, 2, 2, 2),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex).reshape(2, 2, 2, 2),
}


def gate_matrix(gate: Gate, assignment: Optional[Mapping[str, float]] = None) -> np.ndarray:
    """2x2 matrix, or 2x2x2x2 tensor for two-qubit gates (output axes first)."""
    if gate.kind == "RZ":
        theta = gate.angle.evaluate(assignment or {})
        return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    return _FIXED[gate.kind]


def apply_gate(
    state: np.ndarray, gate: Gate, assignment: Optional[Mapping[str, float]] = None
) -> np.ndarray:
    """Apply `gate` to a tensor whose leading axes are the qubits, qubit 0 first."""
    matrix = gate_matrix(gate, assignment)
    if len(gate.qubits) == 1:
        (q,) = gate.qubits
        return np.moveaxis(np.tensordot(matrix, state, axes=([1], [q])), 0, q)
    a, b = gate.qubits
    moved = np.tensordot(matrix, state, axes=([2, 3], [a, b]))
    return np.moveaxis(moved, [0, 1], [a, b])


def apply_circuit(
    circuit: Circuit, state: np.ndarray, assignment: Optional[Mapping[str, float]] = None
) -> np.ndarray:
    """Run the circuit on a statevector (or a batch of them as trailing columns)."""
    n = circuit.n_qubits
    dim = 1 << n
    trailing = state.shape[1:]
    tensor = state.reshape((2,) * n + trailing)
    for gate in circuit.gates:
        tensor = apply_gate(tensor, gate, assignment)
    return tensor.reshape((dim,) + trailing)


def dense_unitary(
    circuit: Circuit,
    assignment: Optional[Mapping[str, float]] = None,
    max_qubits: int = 10,
) -> np.ndarray:
    if circuit.n_qubits > max_qubits:
        raise ResourceLimitError(
            f"dense unitary on {circuit.n_qubits} qubits exceeds the cap of {max_qubits}"
        )
    return apply_circuit(circuit, np.eye(1 << circuit.n_qubits, dtype=complex), assignment)


def phase_aligned_deviation(u1: np.ndarray, u2: np.ndarray) -> float:
    """max |u1 - e^{i phi} u2| with phi read off the largest entry of u2."""
    index = np.unravel_index(np.argmax(np.abs(u2)), u2.shape)
    if abs(u1[index]) < 1e-12:
        return float(np.max(np.abs(u1 - u2)) + 1.0)
    ratio = u1[index] / u2[index]
    phase = ratio / abs(ratio)
    return float(np.max(np.abs(u1 - phase * u2)))


@dataclass
class EquivalenceReport:
    """Outcome of an equivalence check."""

    method: str
    equivalent: bool
    max_deviation: float
    samples: int
    seed: Optional[int] = None
    assignments: List[Dict[str, float]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """JSON form printed by the verify command."""
        return {
            "method": self.method,
            "equivalent": self.equivalent,
            "max_deviation": self.max_deviation,
            "samples": self.samples,
            "seed": self.seed,
            "assignments": self.assignments,
        }


class EquivalenceChecker:
    """Compares two circuits at random parameter values, densely or on random statevectors."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = {**self._default_config(), **(config or {})}

    def _default_config(self) -> Dict[str, Any]:
        return {
            "tol": 1e-9,
            "n_param_samples": 5,
            "seed": 2024,
            "dense_max_qubits": 10,
            "sampling_max_qubits": 20,
            "n_statevectors": 8,
            "clifford_margin": 1e-6,
        }

    def _draw(self, rng: np.random.Generator) -> float:
        margin = self.config["clifford_margin"]
        while True:
            value = float(rng.uniform(0.0, 2 * math.pi))
            quarter = value / (math.pi / 2)
            if abs(quarter - round(quarter)) * (math.pi / 2) > margin:
                return value

    def assignments(self, symbols: List[str], rng: np.random.Generator) -> List[Dict[str, float]]:
        if not symbols:
            return [{}]
        return [
            {name: self._draw(rng) for name in symbols}
            for _ in range(int(self.config["n_param_samples"]))
        ]

    def check(self, c1: Circuit, c2: Circuit) -> EquivalenceReport:
        if c1.n_qubits != c2.n_qubits:
            raise DimensionError(f"circuits act on {c1.n_qubits} and {c2.n_qubits} qubits")
        n = c1.n_qubits
        tol = self.config["tol"]
        seed = self.config["seed"]
        rng = np.random.default_rng(seed)
        symbols = sorted(set(c1.symbols) | set(c2.symbols))
        assignments = self.assignments(symbols, rng)
        logger.debug(f"Checking equivalence on {n} qubits, {len(assignments)} samples, seed {seed}")

        if n <= self.config["dense_max_qubits"]:
            method = "dense_unitary"
            deviation = max(
                phase_aligned_deviation(
                    dense_unitary(c1, a, max_qubits=n), dense_unitary(c2, a, max_qubits=n)
                )
                for a in assignments
            )
            equivalent = deviation <= tol
        elif n <= self.config["sampling_max_qubits"]:
            method = "statevector_sampling"
            deviation = max(self._sampled_infidelity(c1, c2, a, rng) for a in assignments)
            equivalent = deviation <= tol
        else:
            raise ResourceLimitError(
                f"no equivalence check for {n} qubits (cap {self.config['sampling_max_qubits']})"
            )

        report = EquivalenceReport(method, equivalent, deviation, len(assignments), seed, assignments)
        logger.debug(f"{method}: equivalent={equivalent}, max deviation {deviation:.3e}")
        return report

    def _sampled_infidelity(
        self, c1: Circuit, c2: Circuit, assignment: Mapping[str, float], rng: np.random.Generator
    ) -> float:
        dim = 1 << c1.n_qubits
        count = int(self.config["n_statevectors"])
        states = rng.normal(size=(dim, count)) + 1j * rng.normal(size=(dim, count))
        states /= np.linalg.norm(states, axis=0)
        out1 = apply_circuit(c1, states, assignment)
        out2 = apply_circuit(c2, states, assignment)
        overlaps = np.abs(np.sum(out1.conj() * out2, axis=0))
        return float(np.max(1.0 - overlaps))


def equivalent_up_to_phase(
    c1: Circuit,
    c2: Circuit,
    tol: float = 1e-9,
    n_param_samples: int = 5,
    seed: int = 2024,
) -> EquivalenceReport:
    checker = EquivalenceChecker({"tol": tol, "n_param_samples": n_param_samples, "seed": seed})
    return checker.check(c1, c2)
