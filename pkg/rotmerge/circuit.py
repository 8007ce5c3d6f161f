"""
Rotmerge Circuit Module
Clifford+RZ circuit data model and gate statistics.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from .angle import Angle, AngleLike, as_angle
from .errors import UsageError

GATE_KINDS = ("H", "X", "Z", "S", "Sdg", "T", "Tdg", "CNOT", "CZ", "RZ")
CLIFFORD_GATE_KINDS = ("H", "X", "Z", "S", "Sdg", "CNOT", "CZ")
TWO_QUBIT_GATE_KINDS = ("CNOT", "CZ")

T_ANGLE = Angle.pi_fraction(1, 4)
TDG_ANGLE = Angle.pi_fraction(7, 4)


@dataclass(frozen=True)
class Gate:
    """
    One gate of a circuit.

    T and Tdg are stored as RZ(pi/4) and RZ(7pi/4); `angle` is only set on RZ.
    For CNOT the qubits are (control, target).
    """

    kind: str
    qubits: Tuple[int, ...]
    angle: Optional[Angle] = None

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise UsageError(f"unknown gate kind {self.kind!r}")
        qubits = tuple(int(q) for q in self.qubits)
        arity = 2 if self.kind in TWO_QUBIT_GATE_KINDS else 1
        if len(qubits) != arity:
            raise UsageError(f"{self.kind} acts on {arity} qubit(s), got {list(qubits)}")
        if any(q < 0 for q in qubits):
            raise UsageError(f"negative qubit index in {list(qubits)}")
        if arity == 2 and qubits[0] == qubits[1]:
            raise UsageError(f"{self.kind} needs distinct qubits, got {list(qubits)}")
        object.__setattr__(self, "qubits", qubits)

        if self.kind == "T":
            object.__setattr__(self, "kind", "RZ")
            object.__setattr__(self, "angle", T_ANGLE)
        elif self.kind == "Tdg":
            object.__setattr__(self, "kind", "RZ")
            object.__setattr__(self, "angle", TDG_ANGLE)
        elif self.kind == "RZ":
            if self.angle is None:
                raise UsageError("RZ needs an angle")
            object.__setattr__(self, "angle", as_angle(self.angle))
        elif self.angle is not None:
            raise UsageError(f"{self.kind} takes no angle")

    @classmethod
    def h(cls, qubit: int) -> "Gate":
        return cls("H", (qubit,))

    @classmethod
    def x(cls, qubit: int) -> "Gate":
        return cls("X", (qubit,))

    @classmethod
    def z(cls, qubit: int) -> "Gate":
        return cls("Z", (qubit,))

    @classmethod
    def s(cls, qubit: int) -> "Gate":
        return cls("S", (qubit,))

    @classmethod
    def sdg(cls, qubit: int) -> "Gate":
        return cls("Sdg", (qubit,))

    @classmethod
    def t(cls, qubit: int) -> "Gate":
        return cls("T", (qubit,))

    @classmethod
    def tdg(cls, qubit: int) -> "Gate":
        return cls("Tdg", (qubit,))

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls("CNOT", (control, target))

    @classmethod
    def cz(cls, a: int, b: int) -> "Gate":
        return cls("CZ", (a, b))

    @classmethod
    def rz(cls, qubit: int, angle: AngleLike) -> "Gate":
        return cls("RZ", (qubit,), as_angle(angle))

    @property
    def is_rotation(self) -> bool:
        return self.kind == "RZ"

    @property
    def is_clifford(self) -> bool:
        """True for Clifford gates and for RZ by a provable multiple of pi/2."""
        if self.kind == "RZ":
            return self.angle.is_half_pi_multiple()
        return True

    @property
    def qubit(self) -> int:
        return self.qubits[0]

    def __str__(self) -> str:
        args = " ".join(str(q) for q in self.qubits)
        if self.kind == "RZ":
            return f"RZ({self.angle}) {args}"
        return f"{self.kind} {args}"


@dataclass
class CircuitStats:
    """Gate counts reported by `Circuit.stats`."""

    gate_count: int = 0
    n: int = 0
    t_count: int = 0
    non_clifford_rz_count: int = 0
    h_count: int = 0
    internal_h_count: int = 0

    def to_dict(self) -> Dict[str, Any]:
        """Gate counts as JSON."""
        return asdict(self)


@dataclass
class Circuit:
    """Ordered gate list over `n_qubits` named wires. List order is execution order."""

    n_qubits: int
    qubit_names: List[str] = field(default_factory=list)
    gates: List[Gate] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise UsageError(f"a circuit needs at least one qubit, got {self.n_qubits}")
        if not self.qubit_names:
            self.qubit_names = [f"q{i}" for i in range(self.n_qubits)]
        if len(self.qubit_names) != self.n_qubits:
            raise UsageError(
                f"{len(self.qubit_names)} qubit names given for {self.n_qubits} qubits"
            )
        self.gates = list(self.gates)
        for gate in self.gates:
            self._check_gate(gate)

    def _check_gate(self, gate: Gate) -> None:
        for qubit in gate.qubits:
            if qubit >= self.n_qubits:
                raise UsageError(f"gate {gate} uses qubit {qubit} of a {self.n_qubits}-qubit circuit")

    def append(self, gate: Gate) -> "Circuit":
        """Add a gate at the end, checking its qubits."""
        self._check_gate(gate)
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        """Append several gates."""
        for gate in gates:
            self.append(gate)
        return self

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        """A new circuit on the same wires with a different gate list."""
        return Circuit(self.n_qubits, list(self.qubit_names), list(gates))

    def clifford_gates(self) -> List[Gate]:
        """Every gate except RZ."""
        return [gate for gate in self.gates if gate.kind != "RZ"]

    def rotation_positions(self) -> List[int]:
        """Gate indices of the RZ gates."""
        return [i for i, gate in enumerate(self.gates) if gate.kind == "RZ"]

    @property
    def symbols(self) -> Tuple[str, ...]:
        names = set()
        for gate in self.gates:
            if gate.kind == "RZ":
                names.update(gate.angle.symbols)
        return tuple(sorted(names))

    def stats(self) -> CircuitStats:
        """
        Count gates, T gates and Hadamards.

        The T-count counts RZ gates by odd multiples of pi/4; internal
        Hadamards lie strictly between the first and the last non-Clifford RZ.
        """
        result = CircuitStats(gate_count=len(self.gates), n=self.n_qubits)
        non_clifford = []
        for index, gate in enumerate(self.gates):
            if gate.kind == "H":
                result.h_count += 1
            elif gate.kind == "RZ":
                if gate.angle.is_odd_quarter_pi():
                    result.t_count += 1
                if not gate.angle.is_half_pi_multiple():
                    non_clifford.append(index)
        result.non_clifford_rz_count = len(non_clifford)
        if non_clifford:
            first, last = non_clifford[0], non_clifford[-1]
            result.internal_h_count = sum(
                1 for gate in self.gates[first + 1 : last] if gate.kind == "H"
            )
        return result

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def stats(circuit: Circuit) -> CircuitStats:
    """Gate counts of `circuit`."""
    return circuit.stats()
