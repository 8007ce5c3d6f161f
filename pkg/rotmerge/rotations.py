"""
Rotmerge Rotations Module
Pauli-rotation normal form of a Clifford+RZ circuit and its commutativity structure.

A circuit is rewritten as R_{P_m}(theta_m) ... R_{P_1}(theta_1) followed by a
single Clifford C, up to global phase. `extract` pushes every Clifford gate
through the tableau so that each non-Clifford RZ becomes a signed Pauli axis.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .angle import Angle
from .circuit import Circuit, Gate
from .errors import BudgetExceededError, InvariantError, UsageError
from .gf2 import RankVector, XorBasis, pack_columns
from .pauli import PauliProduct
from .tableau import UNITARY_MAX_QUBITS, CliffordTableau

logger = logging.getLogger(__name__)

# any angle that is not a multiple of pi/2 gives the same matrix
DUMMY_ANGLE = Angle.pi_fraction(1, 4)

RANK_POLL_INTERVAL = 256


@dataclass
class RotationSequence:
    """
    Axes and angles of the rotation part, in application order.

    `final_clifford` is the tableau left after extraction. It tracks the
    inverse of the Clifford part, so the circuit equals
    final_clifford^dag * R_{P_m} ... R_{P_1} up to global phase.
    """

    n_qubits: int
    axes: List[PauliProduct] = field(default_factory=list)
    angles: List[Angle] = field(default_factory=list)
    final_clifford: Optional[CliffordTableau] = None
    source_positions: List[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.axes) != len(self.angles):
            raise UsageError(f"{len(self.axes)} axes but {len(self.angles)} angles")
        for index, axis in enumerate(self.axes):
            if axis.n_qubits != self.n_qubits:
                raise UsageError(f"axis {index} acts on {axis.n_qubits} qubits, not {self.n_qubits}")
            if not axis.is_hermitian:
                raise InvariantError(f"axis {index} is not Hermitian: {axis}")
            if axis.is_identity:
                raise InvariantError(f"axis {index} is the identity")

    @classmethod
    def from_axes(
        cls, axes: Sequence[PauliProduct], angles: Optional[Sequence[Angle]] = None
    ) -> "RotationSequence":
        """Build a bare sequence, e.g. for fuzzing. Angles default to pi/4."""
        if not axes:
            raise UsageError("from_axes needs at least one axis to know the qubit count")
        angles = list(angles) if angles is not None else [DUMMY_ANGLE] * len(axes)
        return cls(axes[0].n_qubits, list(axes), angles, None, list(range(len(axes))))

    @property
    def m(self) -> int:
        return len(self.axes)

    def __len__(self) -> int:
        return len(self.axes)

    def to_unitary(self, assignment: Optional[Mapping[str, float]] = None) -> np.ndarray:
        """Dense final_clifford^dag * R_{P_m}(theta_m) ... R_{P_1}(theta_1)."""
        if self.final_clifford is None:
            raise UsageError("sequence has no final Clifford")
        if self.n_qubits > UNITARY_MAX_QUBITS:
            raise UsageError(f"dense rebuild is capped at {UNITARY_MAX_QUBITS} qubits")
        dim = 1 << self.n_qubits
        unitary = np.eye(dim, dtype=complex)
        for axis, angle in zip(self.axes, self.angles):
            theta = angle.evaluate(assignment or {})
            rotation = np.cos(theta / 2) * np.eye(dim) - 1j * np.sin(theta / 2) * axis.to_dense()
            unitary = rotation @ unitary
        return self.final_clifford.to_unitary().conj().T @ unitary


def extract(circuit: Circuit, check_invariants: bool = False) -> RotationSequence:
    """
    Single pass over the gates: Clifford gates and RZ by multiples of pi/2 are
    prepended to a working tableau, any other RZ on qubit q records the
    tableau's q-th stabilizer generator as its axis.
    """
    tableau = CliffordTableau(circuit.n_qubits, check_invariants=check_invariants)
    axes: List[PauliProduct] = []
    angles: List[Angle] = []
    positions: List[int] = []
    for position, gate in enumerate(circuit.gates):
        if gate.kind != "RZ":
            tableau.prepend_gate(gate.kind, gate.qubits)
        elif gate.angle.is_half_pi_multiple():
            tableau.prepend_z_rotation(gate.angle.quarter_turns(), gate.qubit)
        else:
            axes.append(tableau.stabilizer_generator(gate.qubit))
            angles.append(gate.angle)
            positions.append(position)
    logger.debug(
        f"Extracted {len(axes)} rotations from {len(circuit)} gates on {circuit.n_qubits} qubits"
    )
    return RotationSequence(circuit.n_qubits, axes, angles, tableau, positions)


def _mask_matrix(masks: Sequence[int], n_qubits: int) -> np.ndarray:
    """Rows of 0/1 bits, row r holding masks[r] with qubit k in column k."""
    n_bytes = (n_qubits + 7) // 8
    raw = b"".join(mask.to_bytes(n_bytes, "little") for mask in masks)
    packed = np.frombuffer(raw, dtype=np.uint8).reshape(len(masks), n_bytes)
    return np.unpackbits(packed, axis=1, bitorder="little")[:, :n_qubits]


def _set_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def commutativity_columns(seq: RotationSequence) -> Iterator[int]:
    """
    Packed columns of the commutativity matrix, one at a time.

    Bit i of the rotation slices for qubit k says whether axis i has Z (or X)
    on k. Column j is the XOR of the X-slices over the Z-support of axis j and
    the Z-slices over its X-support, cut to the bits below j.
    """
    if seq.m == 0:
        return
    z_slices = pack_columns(_mask_matrix([axis.z for axis in seq.axes], seq.n_qubits))
    x_slices = pack_columns(_mask_matrix([axis.x for axis in seq.axes], seq.n_qubits))
    for j, axis in enumerate(seq.axes):
        column = 0
        for k in _set_bits(axis.x):
            column ^= z_slices[k]
        for k in _set_bits(axis.z):
            column ^= x_slices[k]
        yield column & ((1 << j) - 1)


@dataclass(frozen=True)
class CommutativityMatrix:
    """
    Strictly upper triangular GF(2) matrix kept as packed columns.

    Bit i of columns[j] is 1 iff i < j and axes i, j anticommute.
    """

    columns: Tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.columns)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return (self.columns[j] >> i) & 1

    def rank(self) -> int:
        """GF(2) rank of the columns."""
        basis = XorBasis()
        for column in self.columns:
            basis.insert(column)
        return len(basis)

    def to_array(self) -> np.ndarray:
        """Dense 0/1 copy, row i and column j as in the matrix."""
        bits = np.zeros((self.m, self.m), dtype=np.uint8)
        for j, column in enumerate(self.columns):
            for i in _set_bits(column):
                bits[i, j] = 1
        return bits

    def to_pbm(self) -> str:
        """Plain ASCII bitmap (P1), one matrix row per line."""
        lines = ["P1", f"{self.m} {self.m}"]
        lines.extend(
            " ".join(str((column >> i) & 1) for column in self.columns) for i in range(self.m)
        )
        return "\n".join(lines) + "\n"


def commutativity_matrix(seq: RotationSequence) -> CommutativityMatrix:
    """All columns of the commutativity matrix of `seq`."""
    return CommutativityMatrix(tuple(commutativity_columns(seq)))


def padded_circuit(circuit: Circuit) -> Circuit:
    """The circuit with a non-Clifford RZ on every qubit at both ends."""
    pad = [Gate.rz(q, DUMMY_ANGLE) for q in range(circuit.n_qubits)]
    return circuit.with_gates(pad + list(circuit.gates) + pad)


def extended_commutativity_matrix(circuit: Circuit) -> CommutativityMatrix:
    """Commutativity matrix of the padded circuit."""
    return commutativity_matrix(extract(padded_circuit(circuit)))


def _elimination_rank_vector(seq: RotationSequence, deadline: Optional[float]) -> RankVector:
    """Insert the columns into a reduced basis as they are built."""
    basis = XorBasis()
    bits: List[int] = []
    for j, column in enumerate(commutativity_columns(seq)):
        polled = deadline is not None and j % RANK_POLL_INTERVAL == 0
        if polled and time.perf_counter() > deadline:
            raise BudgetExceededError(
                f"time budget exceeded in the rank vector at column {j} of {seq.m}"
            )
        bits.append(1 if basis.insert(column) else 0)
    return RankVector.from_bits(bits)


RANK_VECTOR_BACKENDS: Dict[str, Callable[[RotationSequence, Optional[float]], RankVector]] = {
    "elimination": _elimination_rank_vector,
}


def rank_vector(
    seq: RotationSequence, backend: str = "elimination", deadline: Optional[float] = None
) -> RankVector:
    """
    Column rank profile of the commutativity matrix.

    Columns are inserted one at a time into a reduced basis, so v[i] == 1
    exactly when column i raises the rank. With a `deadline` (a
    time.perf_counter() value) the column loop raises BudgetExceededError
    once it is passed.
    """
    if backend not in RANK_VECTOR_BACKENDS:
        raise UsageError(
            f"unknown rank vector backend {backend!r}; choose from {sorted(RANK_VECTOR_BACKENDS)}"
        )
    vector = RANK_VECTOR_BACKENDS[backend](seq, deadline)
    logger.debug(f"Rank vector ({backend}): m={vector.m}, h={vector.h}")
    return vector
