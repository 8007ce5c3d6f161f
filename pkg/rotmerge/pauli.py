"""
Rotmerge Pauli Module
Bit-packed symplectic Pauli operators with exact phase tracking.

A Pauli operator on n qubits is stored as two Python integers used as bit
vectors, `z` and `x`, where bit k describes qubit k, and a phase exponent so
that the operator is i^phase times the tensor product of the single-qubit
matrices selected by (z_k, x_k):

    (0, 0) -> I,  (0, 1) -> X,  (1, 1) -> Y,  (1, 0) -> Z
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DimensionError, ResourceLimitError, UsageError

DENSE_MAX_QUBITS = 12

_SYMBOLS = {(0, 0): "I", (0, 1): "X", (1, 1): "Y", (1, 0): "Z"}
_BITS = {symbol: bits for bits, symbol in _SYMBOLS.items()}

_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True)
class PauliProduct:
    """Signed Pauli operator i^phase * P over n_qubits qubits."""

    n_qubits: int
    z: int
    x: int
    phase: int = 0

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise UsageError(f"Pauli operators need at least one qubit, got {self.n_qubits}")
        limit = 1 << self.n_qubits
        if not (0 <= self.z < limit and 0 <= self.x < limit):
            raise UsageError(f"mask wider than {self.n_qubits} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliProduct":
        """The identity on `n_qubits` qubits."""
        return cls(n_qubits, 0, 0, 0)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, symbol: str) -> "PauliProduct":
        """Pauli `symbol` on `qubit` and identity elsewhere."""
        if not 0 <= qubit < n_qubits:
            raise UsageError(f"qubit {qubit} out of range for {n_qubits} qubits")
        z_bit, x_bit = _BITS[symbol]
        return cls(n_qubits, z_bit << qubit, x_bit << qubit, 0)

    @classmethod
    def from_label(cls, label: str) -> "PauliProduct":
        """
        Parse the diagnostic text form, e.g. "-ZIX" or "+iY".

        Character k of the string is qubit k.
        """
        text = label.strip()
        phase = 0
        if text.startswith("-"):
            phase = 2
            text = text[1:]
        elif text.startswith("+"):
            text = text[1:]
        if text.startswith("i"):
            phase += 1
            text = text[1:]
        if not text or any(ch not in _BITS for ch in text):
            raise UsageError(f"invalid Pauli label: {label!r}")
        z = x = 0
        for qubit, ch in enumerate(text):
            z_bit, x_bit = _BITS[ch]
            z |= z_bit << qubit
            x |= x_bit << qubit
        return cls(len(text), z, x, phase)

    @property
    def key(self) -> Tuple[int, int]:
        """Signless identity of the operator, used as a dictionary key."""
        return (self.z, self.x)

    @property
    def is_hermitian(self) -> bool:
        """True for the phases +1 and -1."""
        return self.phase % 2 == 0

    @property
    def is_identity(self) -> bool:
        return self.z == 0 and self.x == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian operators."""
        if not self.is_hermitian:
            raise UsageError(f"{self} is not Hermitian and has no real sign")
        return 1 if self.phase == 0 else -1

    def symbol(self, qubit: int) -> str:
        """"I", "X", "Y" or "Z" on `qubit`."""
        return _SYMBOLS[((self.z >> qubit) & 1, (self.x >> qubit) & 1)]

    def _check_dims(self, other: "PauliProduct") -> None:
        if self.n_qubits != other.n_qubits:
            raise DimensionError(
                f"Pauli operators act on {self.n_qubits} and {other.n_qubits} qubits"
            )

    def commutes(self, other: "PauliProduct") -> bool:
        """True iff the symplectic inner product vanishes. Phases are irrelevant."""
        self._check_dims(other)
        return ((self.z & other.x) ^ (self.x & other.z)).bit_count() % 2 == 0

    def multiply(self, other: "PauliProduct") -> "PauliProduct":
        """
        Exact matrix product self * other.

        Writing each factor as i^(z.x) X^x Z^z, moving Z^z1 past X^x2 costs
        (-1)^(z1.x2) and the result is renormalized by i^-(z3.x3).
        """
        self._check_dims(other)
        z = self.z ^ other.z
        x = self.x ^ other.x
        phase = (
            self.phase
            + other.phase
            + (self.z & self.x).bit_count()
            + (other.z & other.x).bit_count()
            + 2 * (self.z & other.x).bit_count()
            - (z & x).bit_count()
        )
        return PauliProduct(self.n_qubits, z, x, phase)

    def __mul__(self, other: "PauliProduct") -> "PauliProduct":
        return self.multiply(other)

    def __neg__(self) -> "PauliProduct":
        """The same operator times -1."""
        return PauliProduct(self.n_qubits, self.z, self.x, self.phase + 2)

    def with_phase(self, phase: int) -> "PauliProduct":
        """Same masks with phase i^`phase`."""
        return PauliProduct(self.n_qubits, self.z, self.x, phase)

    def equal_up_to_sign(self, other: "PauliProduct") -> bool:
        """True iff the operators agree up to a phase."""
        self._check_dims(other)
        return self.z == other.z and self.x == other.x

    def sign_ratio(self, other: "PauliProduct") -> int:
        """+1 if both operators are equal, -1 if they differ by a factor -1."""
        if not self.equal_up_to_sign(other):
            raise UsageError(f"sign_ratio needs equal Pauli products, got {self} and {other}")
        delta = (self.phase - other.phase) % 4
        if delta == 0:
            return 1
        if delta == 2:
            return -1
        raise UsageError(f"{self} and {other} differ by a factor of i")

    def to_dense(self, max_qubits: int = DENSE_MAX_QUBITS) -> np.ndarray:
        """Kronecker product with qubit 0 as the leftmost factor, times i^phase."""
        if self.n_qubits > max_qubits:
            raise ResourceLimitError(
                f"dense Pauli on {self.n_qubits} qubits exceeds the cap of {max_qubits}"
            )
        matrix = np.array([[1j**self.phase]], dtype=complex)
        for qubit in range(self.n_qubits):
            matrix = np.kron(matrix, _MATRICES[self.symbol(qubit)])
        return matrix

    def label(self) -> str:
        """Phase prefix and one letter per qubit, e.g. "-ZIX"."""
        body = "".join(self.symbol(q) for q in range(self.n_qubits))
        return _PHASE_PREFIX[self.phase] + body

    def __str__(self) -> str:
        return self.label()


def commutes(p: PauliProduct, q: PauliProduct) -> bool:
    """True iff p and q commute."""
    return p.commutes(q)


def multiply(p: PauliProduct, q: PauliProduct) -> PauliProduct:
    """The product p * q with its exact phase."""
    return p.multiply(q)


def equal_up_to_sign(p: PauliProduct, q: PauliProduct) -> bool:
    return p.equal_up_to_sign(q)


def sign_ratio(p: PauliProduct, q: PauliProduct) -> int:
    """+1 or -1 such that p == sign * q."""
    return p.sign_ratio(q)


def to_dense(p: PauliProduct, max_qubits: int = DENSE_MAX_QUBITS) -> np.ndarray:
    return p.to_dense(max_qubits)
