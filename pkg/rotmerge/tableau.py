"""
Rotmerge Tableau Module
Clifford tableau with O(n) gate prepending.

The tableau encodes a Clifford operator U through its destabilizer rows
U X_i U^dag and stabilizer rows U Z_i U^dag, signs included. Prepending a gate
g (U <- U g^dag) only touches the rows of the qubits g acts on: each new row
is the image of g^dag X_i g (or g^dag Z_i g) written as a product of the old
rows. Feeding every Clifford gate of a circuit through `prepend_gate` leaves
the tableau encoding the inverse of the Clifford prefix, so stabilizer row i
is the Pauli axis of an RZ gate on qubit i at that point of the circuit.
"""

import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import InvariantError, ResourceLimitError, UsageError
from .pauli import PauliProduct

logger = logging.getLogger(__name__)

UNITARY_MAX_QUBITS = 10

CLIFFORD_KINDS = ("H", "S", "Sdg", "X", "Z", "CNOT", "CZ")
TWO_QUBIT_KINDS = ("CNOT", "CZ")

# g^dag P g for each generator P touched by g, as (phase, factors): the image
# is i^phase times the product of the listed old rows, in order. A factor
# ("x", k) is destabilizer row k, ("z", k) stabilizer row k. Qubit slots are
# 0 and 1 (control/target for CNOT). Generators missing from a table are fixed.
_Image = Tuple[int, Tuple[Tuple[str, int], ...]]

_IMAGES: Dict[str, Dict[Tuple[str, int], _Image]] = {
    "H": {("x", 0): (0, (("z", 0),)), ("z", 0): (0, (("x", 0),))},
    # S^dag X S = -Y = i^3 X Z
    "S": {("x", 0): (3, (("x", 0), ("z", 0)))},
    # S X S^dag = Y = i X Z
    "Sdg": {("x", 0): (1, (("x", 0), ("z", 0)))},
    "X": {("z", 0): (2, (("z", 0),))},
    "Z": {("x", 0): (2, (("x", 0),))},
    "CNOT": {
        ("x", 0): (0, (("x", 0), ("x", 1))),
        ("z", 1): (0, (("z", 0), ("z", 1))),
    },
    "CZ": {
        ("x", 0): (0, (("x", 0), ("z", 1))),
        ("x", 1): (0, (("z", 0), ("x", 1))),
    },
}

_QUARTER_TURN_GATES = {1: "S", 2: "Z", 3: "Sdg"}


class CliffordTableau:
    """2n signed Pauli rows describing a Clifford operator on n qubits."""

    def __init__(self, n_qubits: int, check_invariants: bool = False):
        if n_qubits < 1:
            raise UsageError(f"a tableau needs at least one qubit, got {n_qubits}")
        self.n_qubits = n_qubits
        self.check_invariants = check_invariants
        self.destabilizers: List[PauliProduct] = [
            PauliProduct.single(n_qubits, q, "X") for q in range(n_qubits)
        ]
        self.stabilizers: List[PauliProduct] = [
            PauliProduct.single(n_qubits, q, "Z") for q in range(n_qubits)
        ]

    @classmethod
    def identity(cls, n_qubits: int) -> "CliffordTableau":
        """Tableau of the empty circuit."""
        return cls(n_qubits)

    def copy(self) -> "CliffordTableau":
        """Independent copy with the same rows and signs."""
        clone = CliffordTableau.__new__(CliffordTableau)
        clone.n_qubits = self.n_qubits
        clone.check_invariants = self.check_invariants
        clone.destabilizers = list(self.destabilizers)
        clone.stabilizers = list(self.stabilizers)
        return clone

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return (
            self.destabilizers == other.destabilizers and self.stabilizers == other.stabilizers
        )

    def _check_qubit(self, qubit: int) -> None:
        if not 0 <= qubit < self.n_qubits:
            raise UsageError(f"qubit {qubit} out of range for {self.n_qubits} qubits")

    def _row(self, which: str, qubit: int) -> PauliProduct:
        return self.destabilizers[qubit] if which == "x" else self.stabilizers[qubit]

    def prepend_gate(self, kind: str, qubits: Sequence[int]) -> None:
        """U <- U g^dag for the Clifford gate g = kind(qubits)."""
        if kind not in _IMAGES:
            raise UsageError(f"unknown Clifford gate {kind!r}")
        arity = 2 if kind in TWO_QUBIT_KINDS else 1
        if len(qubits) != arity:
            raise UsageError(f"{kind} acts on {arity} qubit(s), got {list(qubits)}")
        for qubit in qubits:
            self._check_qubit(qubit)
        if arity == 2 and qubits[0] == qubits[1]:
            raise UsageError(f"{kind} needs distinct qubits, got {list(qubits)}")

        updates = []
        for (which, slot), (phase, factors) in _IMAGES[kind].items():
            row = PauliProduct(self.n_qubits, 0, 0, phase)
            for factor_which, factor_slot in factors:
                row = row.multiply(self._row(factor_which, qubits[factor_slot]))
            updates.append((which, qubits[slot], row))
        for which, qubit, row in updates:
            if which == "x":
                self.destabilizers[qubit] = row
            else:
                self.stabilizers[qubit] = row

        if self.check_invariants:
            self.validate()

    def prepend_z_rotation(self, quarter_turns: int, qubit: int) -> None:
        """Prepend RZ(k*pi/2)^dag, i.e. identity, S^dag, Z or S depending on k."""
        if quarter_turns not in (0, 1, 2, 3):
            raise UsageError(f"quarter_turns must be in 0..3, got {quarter_turns}")
        self._check_qubit(qubit)
        if quarter_turns:
            self.prepend_gate(_QUARTER_TURN_GATES[quarter_turns], (qubit,))

    def stabilizer_generator(self, qubit: int) -> PauliProduct:
        """U Z_qubit U^dag."""
        self._check_qubit(qubit)
        return self.stabilizers[qubit]

    def destabilizer_generator(self, qubit: int) -> PauliProduct:
        """U X_qubit U^dag."""
        self._check_qubit(qubit)
        return self.destabilizers[qubit]

    def validate(self) -> None:
        """Raise InvariantError unless the rows form a symplectic basis of Hermitian Paulis."""
        rows = self.destabilizers + self.stabilizers
        n = self.n_qubits
        for index, row in enumerate(rows):
            if not row.is_hermitian:
                raise InvariantError(f"tableau row {index} is not Hermitian: {row}")
        for a in range(2 * n):
            for b in range(a + 1, 2 * n):
                expected_anticommute = b == a + n
                if rows[a].commutes(rows[b]) == expected_anticommute:
                    raise InvariantError(f"tableau rows {a} and {b} break the symplectic form")

    def to_unitary(self, max_qubits: int = UNITARY_MAX_QUBITS) -> np.ndarray:
        """
        Dense unitary of the encoded Clifford, fixed up to a global phase.

        U|0> is the joint +1 eigenvector of the stabilizer rows, and
        U|b> = prod_i (U X_i U^dag)^b_i U|0>.
        """
        n = self.n_qubits
        if n > max_qubits:
            raise ResourceLimitError(f"dense tableau on {n} qubits exceeds the cap of {max_qubits}")
        dim = 1 << n
        projector = np.eye(dim, dtype=complex)
        for row in self.stabilizers:
            projector = projector @ ((np.eye(dim) + row.to_dense()) / 2)
        column = int(np.argmax(np.linalg.norm(projector, axis=0)))
        ground = projector[:, column] / np.linalg.norm(projector[:, column])

        destab_dense = [row.to_dense() for row in self.destabilizers]
        unitary = np.zeros((dim, dim), dtype=complex)
        for basis in range(dim):
            state = ground
            # qubit 0 is the most significant bit of the basis index
            for qubit in reversed(range(n)):
                if (basis >> (n - 1 - qubit)) & 1:
                    state = destab_dense[qubit] @ state
            unitary[:, basis] = state
        return unitary

    def dump(self) -> str:
        """One line per generator image, destabilizers first."""
        lines = [f"D{q}: {row}" for q, row in enumerate(self.destabilizers)]
        lines += [f"S{q}: {row}" for q, row in enumerate(self.stabilizers)]
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"CliffordTableau(n_qubits={self.n_qubits})"
