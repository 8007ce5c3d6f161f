"""
Rotmerge GF(2) Module
Rank and column rank profile of binary matrices, with columns packed into Python ints.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Tuple

import numpy as np


def to_gf2(matrix: np.ndarray) -> np.ndarray:
    """The matrix as uint8 entries reduced mod 2."""
    return np.array(matrix, dtype=np.uint8) % 2


def pack_columns(matrix: np.ndarray) -> List[int]:
    """Column j of `matrix` as an int whose bit i is matrix[i, j]."""
    mat = to_gf2(matrix)
    if mat.ndim != 2:
        raise ValueError(f"expected a 2-D bit matrix, got shape {mat.shape}")
    if mat.shape[0] == 0:
        return [0] * mat.shape[1]
    packed = np.packbits(mat, axis=0, bitorder="little")
    return [int.from_bytes(packed[:, j].tobytes(), "little") for j in range(mat.shape[1])]


@dataclass
class XorBasis:
    """
    Reduced GF(2) basis, one vector per leading bit.

    `insert` reduces a vector against the basis and keeps it when something
    is left, so the basis size is the rank of everything inserted so far.
    """

    vectors: Dict[int, int] = field(default_factory=dict)

    def reduce(self, vector: int) -> int:
        """What is left of `vector` after clearing every leading bit the basis holds."""
        while vector:
            lead = vector.bit_length() - 1
            basis_vector = self.vectors.get(lead)
            if basis_vector is None:
                return vector
            vector ^= basis_vector
        return 0

    def insert(self, vector: int) -> bool:
        """Add `vector`; True when it was independent of the basis."""
        residue = self.reduce(vector)
        if residue == 0:
            return False
        self.vectors[residue.bit_length() - 1] = residue
        return True

    def __contains__(self, vector: int) -> bool:
        return self.reduce(vector) == 0

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class RankVector:
    """
    Column rank profile: bits[i] == 1 iff column i is independent of columns 0..i-1.
    """

    bits: Tuple[int, ...]
    pivot_indices: Tuple[int, ...]

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "RankVector":
        bits = tuple(int(b) for b in bits)
        return cls(bits, tuple(i for i, b in enumerate(bits) if b))

    @property
    def h(self) -> int:
        return len(self.pivot_indices)

    @property
    def m(self) -> int:
        return len(self.bits)

    def __getitem__(self, index: int) -> int:
        return self.bits[index]

    def __len__(self) -> int:
        return len(self.bits)

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "h": self.h, "v": list(self.bits), "pivots": list(self.pivot_indices)}


def rank_profile_of_columns(columns: Iterable[int]) -> RankVector:
    """Rank vector of packed columns, in order."""
    basis = XorBasis()
    return RankVector.from_bits(1 if basis.insert(column) else 0 for column in columns)


def gf2_rank_profile(matrix: np.ndarray) -> RankVector:
    """Rank vector of a dense 0/1 matrix."""
    return rank_profile_of_columns(pack_columns(matrix))


def gf2_rank(matrix: np.ndarray) -> int:
    """GF(2) rank of a dense 0/1 matrix."""
    basis = XorBasis()
    for column in pack_columns(matrix):
        basis.insert(column)
    return len(basis)

