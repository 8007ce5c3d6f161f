"""
Rotmerge Formats Module
Readers and writers for the `.qc` benchmark dialect and an OpenQASM 2 subset.
"""

import itertools
import logging
import re
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

from pyparsing import (
    CharsNotIn,
    DelimitedList,
    Group,
    Keyword,
    Opt,
    ParseException,
    QuotedString,
    Regex,
    Suppress,
    Word,
    alphanums,
    alphas,
    nums,
)

from .angle import Angle, parse_angle
from .circuit import Circuit, Gate
from .errors import CircuitParseError, UnrepresentableAngleError, UnsupportedGateError, UsageError

logger = logging.getLogger(__name__)

FORMATS = ("qc", "qasm")
EXTENSIONS = {".qc": "qc", ".qasm": "qasm"}


# .qc

_QC_SINGLE = {
    "H": "H",
    "X": "X",
    "Z": "Z",
    "S": "S",
    "P": "S",
    "S*": "Sdg",
    "P*": "Sdg",
    "T": "T",
    "T*": "Tdg",
}

# RZ angle in units of pi/4 -> .qc mnemonics, in circuit order
_QC_QUARTERS = {
    0: (),
    1: ("T",),
    2: ("S",),
    3: ("S", "T"),
    4: ("Z",),
    5: ("Z", "T"),
    6: ("S*",),
    7: ("T*",),
}


def _qc_lines(text: str) -> Iterator[Tuple[int, str]]:
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line_no, line


def _split_names(rest: str) -> List[str]:
    return [name for name in re.split(r"[\s,]+", rest.strip()) if name]


def parse_qc(text: str) -> Circuit:
    """
    Parse the `.qc` dialect.

    Header lines `.v`, `.i`, `.o` come before `BEGIN`; one gate per line up to
    `END`. `tof a b` and `cnot a b` are CNOT with control a, `Z a b` is CZ and
    `Y q` becomes `Z q` then `X q`. Toffoli and larger gates are rejected.
    """
    names: List[str] = []
    index: Dict[str, int] = {}
    gates: List[Gate] = []
    state = "header"

    def wire(name: str, line_no: int) -> int:
        if name not in index:
            raise CircuitParseError(f"undeclared wire {name!r}", line_no)
        return index[name]

    for line_no, line in _qc_lines(text):
        head, _, rest = line.replace("\t", " ").partition(" ")
        if state == "header":
            if head == ".v":
                names = _split_names(rest)
                if len(set(names)) != len(names):
                    raise CircuitParseError("duplicate wire name in .v", line_no)
                index = {name: i for i, name in enumerate(names)}
            elif head in (".i", ".o"):
                for name in _split_names(rest):
                    if name not in index:
                        logger.warning(f"line {line_no}: {head} lists undeclared wire {name!r}")
            elif head == "BEGIN":
                if rest.strip():
                    raise UnsupportedGateError("named subcircuits are not supported", line_no)
                if not names:
                    raise CircuitParseError("BEGIN before any .v declaration", line_no)
                state = "body"
            else:
                raise CircuitParseError(f"unexpected header line {line!r}", line_no)
            continue

        if state == "done":
            logger.warning(f"line {line_no}: ignoring content after END")
            break

        if head == "END":
            state = "done"
            continue

        args = [wire(name, line_no) for name in _split_names(rest)]
        if not args:
            raise CircuitParseError(f"gate {head!r} without operands", line_no)
        try:
            if head in ("tof", "cnot", "X") and len(args) == 2:
                gates.append(Gate.cnot(args[0], args[1]))
            elif head == "tof" and len(args) == 1:
                gates.append(Gate.x(args[0]))
            elif head == "Z" and len(args) == 2:
                gates.append(Gate.cz(args[0], args[1]))
            elif head == "Y" and len(args) == 1:
                gates.extend([Gate.z(args[0]), Gate.x(args[0])])
            elif head in _QC_SINGLE and len(args) == 1:
                gates.append(Gate(_QC_SINGLE[head], (args[0],)))
            elif head in ("tof", "cnot", "X", "Z") or head in _QC_SINGLE:
                raise UnsupportedGateError(
                    f"{head} on {len(args)} wires is outside the Clifford+RZ gate set", line_no
                )
            else:
                raise UnsupportedGateError(f"unknown gate {head!r}", line_no)
        except UsageError as e:
            raise CircuitParseError(str(e), line_no) from e

    if state == "header":
        raise CircuitParseError("missing BEGIN")
    if state == "body":
        raise CircuitParseError("missing END")
    return Circuit(len(names), names, gates)


def _qc_mnemonics(gate: Gate) -> Tuple[str, ...]:
    if gate.kind == "RZ":
        quarters = gate.angle.const * 4
        if not gate.angle.is_constant or quarters.denominator != 1:
            raise UnrepresentableAngleError(
                f"RZ({gate.angle}) is not a multiple of pi/4 and has no .qc form"
            )
        return _QC_QUARTERS[quarters.numerator]
    return {
        "H": ("H",),
        "X": ("X",),
        "Z": ("Z",),
        "S": ("S",),
        "Sdg": ("S*",),
        "CNOT": ("tof",),
        "CZ": ("Z",),
    }[gate.kind]


def write_qc(circuit: Circuit) -> str:
    """.qc text with wires named by the circuit's wire names."""
    names = circuit.qubit_names
    lines = [".v " + " ".join(names), ".i " + " ".join(names), ".o " + " ".join(names), "", "BEGIN"]
    for gate in circuit.gates:
        operands = " ".join(names[q] for q in gate.qubits)
        for mnemonic in _qc_mnemonics(gate):
            lines.append(f"{mnemonic} {operands}")
    lines.append("END")
    return "\n".join(lines) + "\n"


# OpenQASM 2

_QASM_GATES = {
    "h": "H",
    "x": "X",
    "z": "Z",
    "s": "S",
    "sdg": "Sdg",
    "t": "T",
    "tdg": "Tdg",
    "cx": "CNOT",
    "CX": "CNOT",
    "cz": "CZ",
    "rz": "RZ",
    # equal to rz up to a global phase
    "u1": "RZ",
    "p": "RZ",
}
_QASM_UNSUPPORTED = ("measure", "reset", "if", "creg", "opaque", "gate", "U")

_IDENT = Word(alphas + "_", alphanums + "_")
_INT = Word(nums).set_parse_action(lambda tokens: int(tokens[0]))
_QARG = Group(_IDENT("reg") + Opt(Suppress("[") + _INT("index") + Suppress("]")))
_VERSION = Keyword("OPENQASM") + Regex(r"\d+(\.\d+)?")("version")
_INCLUDE = Keyword("include") + QuotedString('"')("file")
_QREG = Keyword("qreg") + _IDENT("name") + Suppress("[") + _INT("size") + Suppress("]")
_GATE_CALL = (
    _IDENT("gate")
    + Opt(Suppress("(") + CharsNotIn(")")("param") + Suppress(")"))
    + Group(DelimitedList(_QARG))("args")
)
QASM_STATEMENT = _VERSION | _INCLUDE | _QREG | _GATE_CALL

_LEADING_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _qasm_statements(text: str) -> Iterator[Tuple[int, str]]:
    """Yield (line number, statement) pairs with `//` comments removed."""
    cleaned = "\n".join(line.split("//", 1)[0] for line in text.splitlines())
    start = 0
    for match in re.finditer(";", cleaned):
        chunk = cleaned[start : match.start()]
        stripped = chunk.strip()
        if stripped:
            offset = start + (len(chunk) - len(chunk.lstrip()))
            yield cleaned.count("\n", 0, offset) + 1, stripped
        start = match.end()
    tail = cleaned[start:].strip()
    if tail:
        raise CircuitParseError(
            f"statement {tail!r} is missing a ';'", cleaned.count("\n", 0, start) + 1
        )


def _fresh_namer(prefix: str = "_r") -> Callable[[], str]:
    counter = itertools.count()
    return lambda: f"{prefix}{next(counter)}"


def parse_qasm(text: str) -> Circuit:
    """
    Parse an OpenQASM 2 program over one quantum register.

    Supported gates: h x z s sdg t tdg cx cz rz(expr), plus y (as z then x)
    and u1/p (as rz). Numeric rz arguments are snapped to dyadic multiples of
    pi or become fresh `_r<k>` parameters. `barrier` is skipped.
    """
    register: Optional[Tuple[str, int]] = None
    gates: List[Gate] = []
    namer = _fresh_namer()

    for line_no, statement in _qasm_statements(text):
        word_match = _LEADING_WORD.match(statement)
        word = word_match.group(0) if word_match else ""
        if word in _QASM_UNSUPPORTED:
            raise UnsupportedGateError(f"{word!r} statements are not supported", line_no)
        if word == "barrier":
            logger.warning(f"line {line_no}: ignoring barrier")
            continue

        try:
            tokens = QASM_STATEMENT.parse_string(statement, parse_all=True)
        except ParseException as e:
            raise CircuitParseError(f"invalid statement {statement!r}: {e.msg}", line_no) from e

        if tokens[0] == "OPENQASM":
            if not tokens["version"].startswith("2"):
                raise UnsupportedGateError(f"OpenQASM {tokens['version']} is not supported", line_no)
            continue
        if tokens[0] == "include":
            continue
        if tokens[0] == "qreg":
            if register is not None:
                raise UnsupportedGateError("only one quantum register is supported", line_no)
            if tokens["size"] < 1:
                raise CircuitParseError("empty quantum register", line_no)
            register = (tokens["name"], tokens["size"])
            continue

        if register is None:
            raise CircuitParseError("gate before qreg declaration", line_no)
        gates.extend(_qasm_gate(tokens, register, namer, line_no))

    if register is None:
        raise CircuitParseError("no qreg declaration")
    name, size = register
    return Circuit(size, [f"{name}{i}" for i in range(size)], gates)


def _qasm_gate(
    tokens, register: Tuple[str, int], namer: Callable[[], str], line_no: int
) -> List[Gate]:
    name = tokens["gate"]
    reg_name, size = register
    qubits: List[Optional[int]] = []
    for arg in tokens["args"]:
        if arg["reg"] != reg_name:
            raise CircuitParseError(f"unknown register {arg['reg']!r}", line_no)
        index = arg.get("index")
        if index is not None and index >= size:
            raise CircuitParseError(f"{reg_name}[{index}] out of range", line_no)
        qubits.append(index)

    if name == "y":
        kinds = [("Z", None), ("X", None)]
    elif name in _QASM_GATES:
        kinds = [(_QASM_GATES[name], None)]
    else:
        raise UnsupportedGateError(f"unknown gate {name!r}", line_no)

    param = tokens.get("param")
    if kinds[0][0] == "RZ":
        if param is None:
            raise CircuitParseError(f"{name} needs an angle", line_no)
        angle = parse_angle(param, allow_radians=True, namer=namer)
        kinds = [("RZ", angle)]
    elif param is not None:
        raise CircuitParseError(f"{name} takes no parameters", line_no)

    arity = 2 if kinds[0][0] in ("CNOT", "CZ") else 1
    if len(qubits) != arity:
        raise CircuitParseError(f"{name} takes {arity} qubit argument(s)", line_no)
    if arity == 1 and qubits[0] is None:
        targets = [(q,) for q in range(size)]
    elif None in qubits:
        raise UnsupportedGateError(f"register broadcast of {name} is not supported", line_no)
    else:
        targets = [tuple(qubits)]

    result = []
    try:
        for target in targets:
            for kind, angle in kinds:
                result.append(Gate(kind, target, angle))
    except UsageError as e:
        raise CircuitParseError(str(e), line_no) from e
    return result


def _qasm_line(gate: Gate) -> str:
    args = ", ".join(f"q[{q}]" for q in gate.qubits)
    if gate.kind == "RZ":
        if gate.angle == Angle.pi_fraction(1, 4):
            return f"t {args};"
        if gate.angle == Angle.pi_fraction(7, 4):
            return f"tdg {args};"
        return f"rz({gate.angle.to_qasm()}) {args};"
    mnemonic = {"H": "h", "X": "x", "Z": "z", "S": "s", "Sdg": "sdg", "CNOT": "cx", "CZ": "cz"}
    return f"{mnemonic[gate.kind]} {args};"


def write_qasm(circuit: Circuit) -> str:
    """OPENQASM 2.0 text on a single register q."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circuit.n_qubits}];"]
    lines.extend(_qasm_line(gate) for gate in circuit.gates)
    return "\n".join(lines) + "\n"


# Files

_READERS = {"qc": parse_qc, "qasm": parse_qasm}
_WRITERS = {"qc": write_qc, "qasm": write_qasm}


def detect_format(path: Union[str, Path], fmt: str = "auto") -> str:
    """"qc" or "qasm", from `fmt` or else the file extension."""
    if fmt != "auto":
        if fmt not in FORMATS:
            raise UsageError(f"unknown circuit format {fmt!r}")
        return fmt
    suffix = Path(path).suffix.lower()
    if suffix not in EXTENSIONS:
        raise UsageError(f"cannot infer circuit format of {path}; pass --format")
    return EXTENSIONS[suffix]


def load_circuit(path: Union[str, Path], fmt: str = "auto") -> Circuit:
    """Read and parse a circuit file."""
    fmt = detect_format(path, fmt)
    text = Path(path).read_text(encoding="utf-8")
    circuit = _READERS[fmt](text)
    logger.debug(f"Loaded {path}: {circuit.n_qubits} qubits, {len(circuit)} gates")
    return circuit


def dump_circuit(circuit: Circuit, fmt: str) -> str:
    """Serialize to "qc" or "qasm" text."""
    if fmt not in _WRITERS:
        raise UsageError(f"unknown circuit format {fmt!r}")
    return _WRITERS[fmt](circuit)


def save_circuit(circuit: Circuit, path: Union[str, Path], fmt: str = "auto") -> None:
    """Write a circuit file, format taken from the extension unless given."""
    fmt = detect_format(path, fmt)
    Path(path).write_text(dump_circuit(circuit, fmt), encoding="utf-8")
    logger.debug(f"Wrote {path} ({fmt})")
