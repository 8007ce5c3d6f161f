"""
Seeded random circuits shared by the test modules.
"""

from typing import List, Optional, Sequence

import numpy as np

from rotmerge.angle import Angle
from rotmerge.circuit import Circuit, Gate
from rotmerge.pauli import PauliProduct

CLIFFORD_1Q = ("H", "S", "Sdg", "X", "Z")
CLIFFORD_2Q = ("CNOT", "CZ")


def _clifford_gate(rng: np.random.Generator, n_qubits: int) -> Gate:
    if n_qubits > 1 and rng.random() < 0.3:
        kind = CLIFFORD_2Q[rng.integers(len(CLIFFORD_2Q))]
        a, b = rng.choice(n_qubits, size=2, replace=False)
        return Gate(kind, (int(a), int(b)))
    kind = CLIFFORD_1Q[rng.integers(len(CLIFFORD_1Q))]
    return Gate(kind, (int(rng.integers(n_qubits)),))


def random_clifford_t(
    n_qubits: int,
    n_gates: int,
    seed: int,
    t_fraction: float = 0.35,
    angles: Optional[Sequence[Angle]] = None,
) -> Circuit:
    """
    Clifford+T circuit. With `angles`, rotations draw from that list instead of T/Tdg.

    Hadamards are made more likely than the other Clifford gates so that
    rotations end up on varied axes.
    """
    rng = np.random.default_rng(seed)
    pool = list(angles) if angles else [Angle.pi_fraction(1, 4), Angle.pi_fraction(7, 4)]
    gates: List[Gate] = []
    for _ in range(n_gates):
        draw = rng.random()
        if draw < t_fraction:
            angle = pool[rng.integers(len(pool))]
            gates.append(Gate.rz(int(rng.integers(n_qubits)), angle))
        elif draw < t_fraction + 0.2:
            gates.append(Gate.h(int(rng.integers(n_qubits))))
        else:
            gates.append(_clifford_gate(rng, n_qubits))
    return Circuit(n_qubits, gates=gates)


def random_parametrized(
    n_qubits: int, n_rotations: int, seed: int, cliffords_per_rotation: int = 3
) -> Circuit:
    """Clifford circuit with RZ(a0), RZ(a1), ... each parameter used exactly once."""
    rng = np.random.default_rng(seed)
    gates: List[Gate] = []
    for k in range(n_rotations):
        for _ in range(int(rng.integers(cliffords_per_rotation + 1))):
            gates.append(_clifford_gate(rng, n_qubits))
        gates.append(Gate.rz(int(rng.integers(n_qubits)), Angle.symbol(f"a{k}")))
    return Circuit(n_qubits, gates=gates)


def random_axes(n_qubits: int, count: int, rng: np.random.Generator) -> List[PauliProduct]:
    """Non-identity Hermitian Pauli products with random signs."""
    axes = []
    limit = 1 << n_qubits
    while len(axes) < count:
        z, x = int(rng.integers(limit)), int(rng.integers(limit))
        if z == 0 and x == 0:
            continue
        axes.append(PauliProduct(n_qubits, z, x, 2 * int(rng.integers(2))))
    return axes


def one_wire_circuit() -> Circuit:
    """One qubit: T H S T T H T."""
    return Circuit(
        1,
        ["a"],
        [Gate.t(0), Gate.h(0), Gate.s(0), Gate.t(0), Gate.t(0), Gate.h(0), Gate.t(0)],
    )
