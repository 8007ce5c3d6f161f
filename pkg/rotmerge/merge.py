"""
Rotmerge Merge Module
Rotation-merging passes that lower the number of non-Clifford RZ gates.

All passes stream the circuit once through a Clifford tableau, turning each
non-Clifford RZ into a signed Pauli axis, and merge it with an earlier
rotation on the same axis when nothing anticommuting sits in between:

- tmerge: scans every earlier live rotation, most recent first.
- bbmerge: looks up one candidate per axis and only tests the pivot columns
  of the rank vector between the two rotations.
- fasttmerge: bbmerge, but a folded pivot hands over to a scan of the live
  rotations after it.

A merged angle that becomes a multiple of pi/2 is folded into the tableau,
which changes the axes of every later rotation.
"""

import logging
import time
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

from .angle import Angle
from .circuit import Circuit, Gate
from .errors import BudgetExceededError, InvariantError, UsageError
from .pauli import PauliProduct
from .gf2 import RankVector
from .rotations import RotationSequence, extract, rank_vector
from .tableau import CliffordTableau

logger = logging.getLogger(__name__)

METHODS = ("tmerge", "bbmerge", "fasttmerge")

# passes that prune with the rank vector
RANKED_METHODS = ("bbmerge", "fasttmerge")

_RESIDUE_GATES = {1: "S", 2: "Z", 3: "Sdg"}

Merge = Tuple[int, int, int]


@dataclass
class MergeOutcome:
    """Result of one pass. `merges` holds (earlier index, later index, sign) in rotation numbering."""

    pass_name: str
    circuit: Circuit
    merges: List[Merge] = field(default_factory=list)
    checks: int = 0
    t_count_before: int = 0
    t_count_after: int = 0
    rz_count_after: int = 0
    residues: int = 0
    h: Optional[int] = None
    wall_time_ms: float = 0.0
    angles: List[Angle] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """JSON summary of the pass."""
        return {
            "pass": self.pass_name,
            "t_count_before": self.t_count_before,
            "t_count_after": self.t_count_after,
            "rz_count_after": self.rz_count_after,
            "checks": self.checks,
            "residues": self.residues,
            "h": self.h,
            "merges": [{"i": i, "j": j, "sign": sign} for i, j, sign in self.merges],
            "wall_time_ms": round(self.wall_time_ms, 3),
        }


class _MergeState:
    """Working data of a pass: tableau, rotation axes and angles, counters."""

    def __init__(self, n_qubits: int, check_invariants: bool):
        self.tableau = CliffordTableau(n_qubits, check_invariants=check_invariants)
        self.check_invariants = check_invariants
        self.axes: List[PauliProduct] = []
        self.angles: List[Angle] = []
        self.qubits: List[int] = []
        self.positions: List[int] = []
        self.merges: List[Merge] = []
        self.checks = 0
        self.residues = 0

    def add_rotation(self, gate: Gate, position: int) -> int:
        axis = self.tableau.stabilizer_generator(gate.qubit)
        if self.check_invariants and not axis.is_hermitian:
            raise InvariantError(f"rotation axis {axis} is not Hermitian")
        self.axes.append(axis)
        self.angles.append(gate.angle)
        self.qubits.append(gate.qubit)
        self.positions.append(position)
        return len(self.axes) - 1

    def commutes(self, axis: PauliProduct, k: int) -> bool:
        self.checks += 1
        return axis.commutes(self.axes[k])

    def is_folded(self, k: int) -> bool:
        return self.angles[k].is_half_pi_multiple()

    def merge(self, j: int, t: int) -> bool:
        """Move the angle of j onto t. Returns True when t became Clifford and was folded."""
        sign = self.axes[t].sign_ratio(self.axes[j])
        self.angles[t] = self.angles[t] + self.angles[j].scaled(sign)
        self.angles[j] = Angle.zero()
        self.merges.append((j, t, sign))
        if self.angles[t].is_half_pi_multiple():
            turns = self.angles[t].quarter_turns()
            self.tableau.prepend_z_rotation(turns, self.qubits[t])
            if turns:
                self.residues += 1
            return True
        return False


class RotationMerger:
    """Runs the merging passes on Clifford+RZ circuits."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = {**self._default_config(), **(config or {})}
        self._deadline: Optional[float] = None

    def _default_config(self) -> Dict[str, Any]:
        """Default merging configuration."""
        return {
            "rank_backend": "elimination",
            "check_invariants": False,
            "time_budget_s": None,
            "budget_poll_interval": 1024,
        }

    def run(
        self, method: str, circuit: Circuit, vector: Optional[RankVector] = None
    ) -> MergeOutcome:
        """
        Run the pass named `method`.

        `vector` is the rank vector of `circuit`, reused by bbmerge and
        fasttmerge instead of computing it again. tmerge ignores it.
        """
        if method == "tmerge":
            return self.tmerge(circuit)
        if method == "bbmerge":
            return self.bbmerge(circuit, vector)
        if method == "fasttmerge":
            return self.fast_tmerge(circuit, vector)
        raise UsageError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")

    def _stream(self, circuit: Circuit, state: _MergeState) -> Iterator[int]:
        """Feed Clifford content to the tableau and yield the index of each new rotation."""
        poll = max(1, int(self.config["budget_poll_interval"]))
        for position, gate in enumerate(circuit.gates):
            if self._deadline is not None and position % poll == 0:
                if time.perf_counter() > self._deadline:
                    raise BudgetExceededError(
                        f"time budget of {self.config['time_budget_s']}s exceeded at gate {position}"
                    )
            if gate.kind != "RZ":
                state.tableau.prepend_gate(gate.kind, gate.qubits)
            elif gate.angle.is_half_pi_multiple():
                state.tableau.prepend_z_rotation(gate.angle.quarter_turns(), gate.qubit)
            else:
                yield state.add_rotation(gate, position)

    def _begin(self, name: str, circuit: Circuit) -> Tuple[_MergeState, float]:
        logger.debug(f"{name}: {circuit.n_qubits} qubits, {len(circuit)} gates")
        started = time.perf_counter()
        budget = self.config["time_budget_s"]
        self._deadline = started + budget if budget else None
        return _MergeState(circuit.n_qubits, bool(self.config["check_invariants"])), started

    def _finish(
        self,
        name: str,
        circuit: Circuit,
        state: _MergeState,
        started: float,
        h: Optional[int] = None,
    ) -> MergeOutcome:
        optimized = rebuild_circuit(circuit, state.positions, state.angles)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        self._deadline = None
        before, after = circuit.stats(), optimized.stats()
        outcome = MergeOutcome(
            pass_name=name,
            circuit=optimized,
            merges=state.merges,
            checks=state.checks,
            t_count_before=before.t_count,
            t_count_after=after.t_count,
            rz_count_after=after.non_clifford_rz_count,
            residues=state.residues,
            h=h,
            wall_time_ms=elapsed_ms,
            angles=state.angles,
        )
        logger.debug(
            f"{name}: T-count {before.t_count} -> {after.t_count}, "
            f"{len(state.merges)} merges, {state.checks} checks, {elapsed_ms:.1f} ms"
        )
        return outcome

    def tmerge(self, circuit: Circuit) -> MergeOutcome:
        """Baseline: compare each new rotation against all earlier live ones until one blocks."""
        state, started = self._begin("tmerge", circuit)
        live: List[int] = []
        for t in self._stream(circuit, state):
            axis = state.axes[t]
            folded = False
            for slot in range(len(live) - 1, -1, -1):
                j = live[slot]
                state.checks += 1
                if axis.equal_up_to_sign(state.axes[j]):
                    del live[slot]
                    folded = state.merge(j, t)
                    break
                if not axis.commutes(state.axes[j]):
                    break
            if not folded:
                live.append(t)
        return self._finish("tmerge", circuit, state, started)

    def _rank_pivots(self, circuit: Circuit, vector: Optional[RankVector]) -> List[int]:
        """Pivot indices of the rank vector, computed under the pass's deadline when not given."""
        if vector is None:
            vector = rank_vector(
                extract(circuit), backend=self.config["rank_backend"], deadline=self._deadline
            )
        return list(vector.pivot_indices)

    def _check_vector(self, state: _MergeState, vector: Optional[RankVector]) -> None:
        if vector is not None and vector.m != len(state.axes):
            raise UsageError(
                f"rank vector covers {vector.m} rotations but the circuit has {len(state.axes)}"
            )

    def bbmerge(self, circuit: Circuit, vector: Optional[RankVector] = None) -> MergeOutcome:
        """One candidate per axis; only rank-vector pivots between the pair are tested."""
        state, started = self._begin("bbmerge", circuit)
        pivots = self._rank_pivots(circuit, vector)
        candidates: Dict[Tuple[int, int], List[int]] = {}
        for t in self._stream(circuit, state):
            axis = state.axes[t]
            listed = candidates.setdefault(axis.key, [])
            listed.append(t)
            if len(listed) < 2:
                continue
            j = listed[-2]
            blocked = False
            for k in pivots[bisect_right(pivots, j) : bisect_left(pivots, t)]:
                if not state.commutes(axis, k):
                    blocked = True
                    break
            if blocked:
                continue
            del listed[-2]
            if state.merge(j, t):
                listed.pop()
        self._check_vector(state, vector)
        return self._finish("bbmerge", circuit, state, started, h=len(pivots))

    def fast_tmerge(self, circuit: Circuit, vector: Optional[RankVector] = None) -> MergeOutcome:
        """
        bbmerge, except that a blocking pivot whose rotation was already folded
        defers to a scan of the live rotations after it.

        Pivots before the first anticommuting one all commute with the axis,
        and by the rank-vector property so does every rotation up to that
        pivot. Every live rotation between a folded pivot and t is tested.
        """
        state, started = self._begin("fasttmerge", circuit)
        pivots = self._rank_pivots(circuit, vector)
        candidates: Dict[Tuple[int, int], List[int]] = {}
        for t in self._stream(circuit, state):
            axis = state.axes[t]
            listed = candidates.setdefault(axis.key, [])
            listed.append(t)
            if len(listed) < 2:
                continue
            j = listed[-2]
            blocked = False
            for k in pivots[bisect_right(pivots, j) : bisect_left(pivots, t)]:
                if state.commutes(axis, k):
                    continue
                if state.is_folded(k):
                    blocked = any(
                        not state.is_folded(l) and not state.commutes(axis, l)
                        for l in range(k + 1, t)
                    )
                else:
                    blocked = True
                break
            if blocked:
                continue
            del listed[-2]
            if state.merge(j, t):
                listed.pop()
        self._check_vector(state, vector)
        return self._finish("fasttmerge", circuit, state, started, h=len(pivots))


def rebuild_circuit(circuit: Circuit, positions: List[int], angles: List[Angle]) -> Circuit:
    """
    Copy the circuit, giving rotation t at gate index positions[t] the angle angles[t].

    Zero angles are dropped, multiples of pi/2 become S, Z or Sdg in place and
    every other gate is kept as is.
    """
    replaced = dict(zip(positions, angles))
    gates: List[Gate] = []
    for position, gate in enumerate(circuit.gates):
        if position not in replaced:
            gates.append(gate)
            continue
        angle = replaced[position]
        if angle.is_half_pi_multiple():
            turns = angle.quarter_turns()
            if turns:
                gates.append(Gate(_RESIDUE_GATES[turns], gate.qubits))
        else:
            gates.append(Gate.rz(gate.qubit, angle))
    return circuit.with_gates(gates)


def naive_merge_pairs(seq: RotationSequence) -> List[Merge]:
    """
    Brute-force merging without folding Clifford results.

    Repeatedly merges the leftmost pair (i, j) of live rotations with equal
    axes up to sign and no anticommuting live rotation strictly between them,
    until no such pair remains. The merged rotation stays at j; it disappears
    when its angle becomes zero.
    """
    live = list(range(seq.m))
    angles = list(seq.angles)
    applied: List[Merge] = []
    while True:
        pair = _leftmost_pair(seq.axes, live)
        if pair is None:
            return applied
        a, b = pair
        i, j = live[a], live[b]
        sign = seq.axes[j].sign_ratio(seq.axes[i])
        angles[j] = angles[j] + angles[i].scaled(sign)
        applied.append((i, j, sign))
        del live[a]
        if angles[j].is_zero():
            live.remove(j)


def _leftmost_pair(axes: List[PauliProduct], live: List[int]) -> Optional[Tuple[int, int]]:
    for a, i in enumerate(live):
        for b in range(a + 1, len(live)):
            other = axes[live[b]]
            if axes[i].equal_up_to_sign(other):
                return a, b
            if not axes[i].commutes(other):
                break
    return None


def tmerge(circuit: Circuit, config: Optional[Dict[str, Any]] = None) -> MergeOutcome:
    """Run tmerge with a fresh merger."""
    return RotationMerger(config).tmerge(circuit)


def bbmerge(circuit: Circuit, config: Optional[Dict[str, Any]] = None) -> MergeOutcome:
    """Run bbmerge with a fresh merger."""
    return RotationMerger(config).bbmerge(circuit)


def fast_tmerge(circuit: Circuit, config: Optional[Dict[str, Any]] = None) -> MergeOutcome:
    """Run fasttmerge with a fresh merger."""
    return RotationMerger(config).fast_tmerge(circuit)
