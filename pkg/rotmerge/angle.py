"""
Rotmerge Angle Module
Exact rotation angles: a rational multiple of pi plus a signed sum of parameter symbols.

Predicates only answer True when the property holds for every valuation of
the parameters, so any angle with a parameter is treated as a black box.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Optional, Tuple, Union

from pyparsing import Opt, ParseException, Regex, ZeroOrMore, one_of

from .errors import AngleArithmeticError, CircuitParseError, MissingParameterError, UsageError

SNAP_MAX_DEPTH = 20
SNAP_TOL = 1e-9
MAX_DENOMINATOR_BITS = 64

Params = Tuple[Tuple[str, int], ...]


def _normalize_params(coefficients: Mapping[str, int]) -> Params:
    return tuple(sorted((name, coeff) for name, coeff in coefficients.items() if coeff != 0))


@dataclass(frozen=True)
class Angle:
    """
    const * pi + sum(coeff * symbol), with const kept reduced in [0, 2).

    `params` is a sorted tuple of (symbol, nonzero integer coefficient).
    """

    const: Fraction = Fraction(0)
    params: Params = ()

    def __post_init__(self) -> None:
        const = Fraction(self.const) % 2
        if const.denominator.bit_length() > MAX_DENOMINATOR_BITS:
            raise AngleArithmeticError(f"angle denominator {const.denominator} is too wide")
        object.__setattr__(self, "const", const)
        object.__setattr__(self, "params", _normalize_params(dict(self.params)))

    @classmethod
    def zero(cls) -> "Angle":
        """The zero angle."""
        return cls()

    @classmethod
    def pi_fraction(cls, numerator: int, denominator: int = 1) -> "Angle":
        """numerator/denominator * pi."""
        return cls(Fraction(numerator, denominator))

    @classmethod
    def symbol(cls, name: str, coeff: int = 1) -> "Angle":
        """coeff * name, a parameter in radians."""
        return cls(Fraction(0), ((name, coeff),))

    @classmethod
    def from_radians(
        cls, radians: float, namer: Optional[Callable[[], str]] = None
    ) -> "Angle":
        """
        Snap a float to the nearest k*pi/2^d (d <= SNAP_MAX_DEPTH) within SNAP_TOL.

        When nothing is close enough the value becomes a fresh opaque symbol
        drawn from `namer`; without a namer that is an error.
        """
        for depth in range(SNAP_MAX_DEPTH + 1):
            scale = 1 << depth
            k = round(radians * scale / math.pi)
            if abs(k * math.pi / scale - radians) <= SNAP_TOL:
                return cls(Fraction(k, scale))
        if namer is None:
            raise UsageError(f"{radians!r} rad is not a dyadic multiple of pi")
        return cls.symbol(namer())

    @classmethod
    def parse(
        cls, text: str, allow_radians: bool = False, namer: Optional[Callable[[], str]] = None
    ) -> "Angle":
        return parse_angle(text, allow_radians=allow_radians, namer=namer)

    @property
    def const_num(self) -> int:
        return self.const.numerator

    @property
    def const_den(self) -> int:
        return self.const.denominator

    @property
    def is_constant(self) -> bool:
        return not self.params

    @property
    def symbols(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.params)

    def add(self, other: "Angle") -> "Angle":
        """Exact sum, constants mod 2*pi."""
        merged: Dict[str, int] = dict(self.params)
        for name, coeff in other.params:
            merged[name] = merged.get(name, 0) + coeff
        return Angle(self.const + other.const, _normalize_params(merged))

    def negate(self) -> "Angle":
        """The opposite angle."""
        return Angle(-self.const, tuple((name, -coeff) for name, coeff in self.params))

    def scaled(self, sign: int) -> "Angle":
        """self for a positive sign, -self otherwise."""
        return self if sign > 0 else self.negate()

    def __add__(self, other: "Angle") -> "Angle":
        return self.add(other)

    def __neg__(self) -> "Angle":
        return self.negate()

    def __sub__(self, other: "Angle") -> "Angle":
        return self.add(other.negate())

    def is_zero(self) -> bool:
        """Provably zero mod 2*pi."""
        return self.is_constant and self.const == 0

    def is_half_pi_multiple(self) -> bool:
        """Provably a multiple of pi/2, i.e. a Clifford rotation."""
        return self.is_constant and (self.const * 2).denominator == 1

    def is_pi_mod_2pi(self) -> bool:
        return self.is_constant and self.const == 1

    def is_odd_quarter_pi(self) -> bool:
        """Provably an odd multiple of pi/4, i.e. a T-like rotation."""
        quarters = self.const * 4
        return self.is_constant and quarters.denominator == 1 and quarters.numerator % 2 == 1

    def quarter_turns(self) -> int:
        """k such that the angle equals k*pi/2 mod 2*pi."""
        if not self.is_half_pi_multiple():
            raise UsageError(f"{self} is not a provable multiple of pi/2")
        return int(self.const * 2) % 4

    def evaluate(self, assignment: Mapping[str, float]) -> float:
        """Numeric value in radians, reduced to [0, 2*pi)."""
        total = float(self.const) * math.pi
        for name, coeff in self.params:
            if name not in assignment:
                raise MissingParameterError(name)
            total += coeff * assignment[name]
        return total % (2 * math.pi)

    def _const_text(self, times: str) -> str:
        num, den = self.const_num, self.const_den
        head = "pi" if num == 1 else f"{num}{times}pi"
        return head if den == 1 else f"{head}/{den}"

    def _render(self, times: str) -> str:
        parts = []
        for name, coeff in self.params:
            magnitude = abs(coeff)
            term = name if magnitude == 1 else f"{magnitude}*{name}"
            parts.append(("-" if coeff < 0 else "+") + term)
        if self.const != 0 or not parts:
            parts.append("+" + (self._const_text(times) if self.const != 0 else "0"))
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def to_qasm(self) -> str:
        """QASM expression with explicit multiplication."""
        return self._render("*")

    def __str__(self) -> str:
        return self._render("")


def add(a: Angle, b: Angle) -> Angle:
    """a + b."""
    return a.add(b)


def negate(a: Angle) -> Angle:
    """-a."""
    return a.negate()


def is_zero(a: Angle) -> bool:
    return a.is_zero()


def is_half_pi_multiple(a: Angle) -> bool:
    return a.is_half_pi_multiple()


def is_pi_mod_2pi(a: Angle) -> bool:
    return a.is_pi_mod_2pi()


def quarter_turns(a: Angle) -> int:
    return a.quarter_turns()


def evaluate(a: Angle, assignment: Mapping[str, float]) -> float:
    """The value of `a` in radians under `assignment`."""
    return a.evaluate(assignment)


# Grammar: optional sign, then signed terms. A term is a multiple of pi
# ("pi", "3pi", "3*pi/4", "0.5*pi"), a symbol with an optional integer
# coefficient ("a1", "2*a1"), or a plain number in radians.


@dataclass(frozen=True)
class _Term:
    kind: str
    const: Fraction = Fraction(0)
    name: str = ""
    coeff: int = 1
    radians: float = 0.0


def _pi_term(text: str, loc: int, tokens) -> _Term:
    num = tokens.get("num")
    den = tokens.get("den")
    value = Fraction(num) if num else Fraction(1)
    if den:
        if int(den) == 0:
            raise ParseException(text, loc, "division by zero")
        value /= int(den)
    return _Term("pi", const=value)


def _symbol_term(tokens) -> _Term:
    coeff = tokens.get("coeff")
    return _Term("symbol", name=tokens["name"], coeff=int(coeff) if coeff else 1)


def _number_term(tokens) -> _Term:
    return _Term("radians", radians=float(tokens[0]))


_PI_TERM = Regex(
    r"(?:(?P<num>\d+(?:\.\d+)?)\s*\*?\s*)?pi(?![A-Za-z0-9_])(?:\s*/\s*(?P<den>\d+))?"
).set_parse_action(_pi_term)
_SYMBOL_TERM = Regex(r"(?:(?P<coeff>\d+)\s*\*\s*)?(?P<name>[A-Za-z_][A-Za-z0-9_]*)").set_parse_action(
    _symbol_term
)
_NUMBER_TERM = Regex(r"(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?").set_parse_action(_number_term)
_TERM = _PI_TERM | _SYMBOL_TERM | _NUMBER_TERM
_SIGN = one_of("+ -")
ANGLE_EXPR = Opt(_SIGN) + _TERM + ZeroOrMore(_SIGN + _TERM)


def parse_angle(
    text: str, allow_radians: bool = False, namer: Optional[Callable[[], str]] = None
) -> Angle:
    """
    Parse `pi/4`, `-3pi/2`, `a17`, `a3+pi/4` and friends.

    Plain numbers are radians and are only accepted with `allow_radians`;
    their sum is snapped through `Angle.from_radians`.
    """
    try:
        tokens = ANGLE_EXPR.parse_string(text.strip(), parse_all=True)
    except ParseException as e:
        raise CircuitParseError(f"invalid angle {text!r}: {e.msg}") from e

    sign = 1
    const = Fraction(0)
    radians = 0.0
    saw_radians = False
    coefficients: Dict[str, int] = {}
    for token in tokens:
        if isinstance(token, str):
            sign = -1 if token == "-" else 1
            continue
        term: _Term = token
        if term.kind == "pi":
            const += sign * term.const
        elif term.kind == "symbol":
            coefficients[term.name] = coefficients.get(term.name, 0) + sign * term.coeff
        else:
            saw_radians = True
            radians += sign * term.radians
        sign = 1

    angle = Angle(const, _normalize_params(coefficients))
    if saw_radians:
        if not allow_radians:
            raise CircuitParseError(f"angle {text!r} mixes in a bare number; write it in pi units")
        angle = angle + Angle.from_radians(radians, namer)
    return angle


AngleLike = Union[Angle, str]


def as_angle(value: AngleLike) -> Angle:
    return value if isinstance(value, Angle) else parse_angle(value)
