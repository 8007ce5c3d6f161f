"""
Unit tests for Rotmerge exact angles.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from rotmerge.angle import Angle, add, parse_angle
from rotmerge.errors import AngleArithmeticError, CircuitParseError, MissingParameterError, UsageError


class TestAngle:
    """Test cases for Angle arithmetic and predicates."""

    def test_reduced_mod_two_pi(self):
        """Test normalization of the constant part."""
        assert Angle.pi_fraction(9, 4) == Angle.pi_fraction(1, 4)
        assert Angle.pi_fraction(-1, 4) == Angle.pi_fraction(7, 4)
        assert Angle.pi_fraction(2).is_zero()

    def test_add_and_negate(self):
        """Test exact addition."""
        t = Angle.pi_fraction(1, 4)
        assert (t + t) == Angle.pi_fraction(1, 2)
        assert (t - t).is_zero()
        assert (-t) == Angle.pi_fraction(7, 4)
        assert t.scaled(-1) == -t
        assert t.scaled(1) is t

    def test_symbols_cancel(self):
        """Test that opposite parameter terms cancel out."""
        a = Angle.symbol("a")
        assert (a - a).is_zero()
        mixed = a + Angle.pi_fraction(1, 4)
        assert mixed.symbols == ("a",)
        assert not mixed.is_constant

    def test_predicates(self):
        """Test the Clifford and T predicates."""
        assert Angle.pi_fraction(3, 2).is_half_pi_multiple()
        assert not Angle.pi_fraction(1, 4).is_half_pi_multiple()
        assert Angle.pi_fraction(3, 4).is_odd_quarter_pi()
        assert not Angle.pi_fraction(1, 2).is_odd_quarter_pi()
        assert not Angle.pi_fraction(1, 8).is_odd_quarter_pi()
        assert Angle.pi_fraction(1).is_pi_mod_2pi()
        # parameters are never provably Clifford
        assert not Angle.symbol("a").is_half_pi_multiple()
        assert not Angle.symbol("a").is_zero()

    def test_quarter_turns(self):
        """Test conversion to multiples of pi/2."""
        assert Angle.pi_fraction(1, 2).quarter_turns() == 1
        assert Angle.pi_fraction(1).quarter_turns() == 2
        assert Angle.pi_fraction(3, 2).quarter_turns() == 3
        assert Angle.zero().quarter_turns() == 0
        with pytest.raises(UsageError):
            Angle.pi_fraction(1, 4).quarter_turns()

    def test_evaluate(self):
        """Test numeric evaluation."""
        angle = Angle.symbol("a", 2) + Angle.pi_fraction(1, 2)
        assert math.isclose(angle.evaluate({"a": 0.25}), math.pi / 2 + 0.5)
        with pytest.raises(MissingParameterError):
            angle.evaluate({})

    def test_denominator_guard(self):
        """Test the cap on denominator width."""
        with pytest.raises(AngleArithmeticError):
            Angle(Fraction(1, 3**50))

    def test_rendering(self):
        """Test text forms."""
        assert str(Angle.pi_fraction(7, 4)) == "7pi/4"
        assert Angle.pi_fraction(7, 4).to_qasm() == "7*pi/4"
        assert str(Angle.pi_fraction(1)) == "pi"
        assert str(Angle.zero()) == "0"
        assert str(Angle.symbol("a1") + Angle.pi_fraction(1, 4)) == "a1+pi/4"
        assert str(Angle.symbol("b", -2)) == "-2*b"


class TestParseAngle:
    """Test cases for the angle expression parser."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("pi/4", Angle.pi_fraction(1, 4)),
            ("-pi/4", Angle.pi_fraction(7, 4)),
            ("3*pi/4", Angle.pi_fraction(3, 4)),
            ("3pi/2", Angle.pi_fraction(3, 2)),
            ("pi", Angle.pi_fraction(1)),
            ("0.5*pi", Angle.pi_fraction(1, 2)),
            ("a17", Angle.symbol("a17")),
            ("2*a", Angle.symbol("a", 2)),
            ("a3+pi/4", Angle.symbol("a3") + Angle.pi_fraction(1, 4)),
            ("a - b", Angle.symbol("a") - Angle.symbol("b")),
        ],
    )
    def test_parse(self, text, expected):
        """Test accepted expressions."""
        assert parse_angle(text) == expected

    def test_radians_need_opt_in(self):
        """Test that bare numbers are rejected by default."""
        with pytest.raises(CircuitParseError, match="pi units"):
            parse_angle("0.785398163397448")

    def test_radians_snap(self):
        """Test snapping of float radians to dyadic multiples of pi."""
        assert parse_angle(repr(math.pi / 4), allow_radians=True) == Angle.pi_fraction(1, 4)
        assert parse_angle(repr(3 * math.pi / 8), allow_radians=True) == Angle.pi_fraction(3, 8)

    def test_radians_become_symbols(self):
        """Test that unsnappable values become fresh parameters."""
        names = iter(["_r0", "_r1"])
        angle = parse_angle("0.3", allow_radians=True, namer=lambda: next(names))
        assert angle == Angle.symbol("_r0")
        with pytest.raises(UsageError):
            parse_angle("0.3", allow_radians=True)

    def test_invalid(self):
        """Test malformed expressions."""
        with pytest.raises(CircuitParseError):
            parse_angle("pi/")
        with pytest.raises(CircuitParseError):
            parse_angle("pi/0")

def _random_angle(rng: np.random.Generator, symbols=("a", "b", "c")) -> Angle:
    angle = Angle.pi_fraction(int(rng.integers(-64, 64)), 1 << int(rng.integers(0, 6)))
    for name in symbols:
        if rng.random() < 0.4:
            angle = angle + Angle.symbol(name, int(rng.integers(-3, 4)))
    return angle


def _distance_to_multiple(value: float, step: float) -> float:
    ratio = value / step
    return abs(ratio - round(ratio)) * step


class TestAngleProperties:
    """Randomized soundness of the exact predicates against numeric values."""

    def setup_method(self):
        """Set up test fixtures."""
        self.rng = np.random.default_rng(55)

    def test_predicates_are_sound(self):
        """Test that a True predicate holds for every sampled parameter value."""
        for _ in range(500):
            angle = _random_angle(self.rng)
            for _ in range(10):
                assignment = {name: float(self.rng.uniform(-10, 10)) for name in "abc"}
                value = angle.evaluate(assignment)
                if angle.is_zero():
                    assert _distance_to_multiple(value, 2 * math.pi) < 1e-9
                if angle.is_half_pi_multiple():
                    expected = angle.quarter_turns() * math.pi / 2
                    assert _distance_to_multiple(value - expected, 2 * math.pi) < 1e-9
                if angle.is_pi_mod_2pi():
                    assert _distance_to_multiple(value - math.pi, 2 * math.pi) < 1e-9
                if angle.is_odd_quarter_pi():
                    assert _distance_to_multiple(value - math.pi / 4, math.pi / 2) < 1e-9

    def test_predicates_reject_parameters(self):
        """Test that an angle with a live parameter is never provably Clifford."""
        for _ in range(500):
            angle = _random_angle(self.rng)
            if angle.is_constant:
                continue
            assert not angle.is_zero()
            assert not angle.is_half_pi_multiple()
            assert not angle.is_odd_quarter_pi()

    def test_evaluate_is_additive(self):
        """Test evaluate(a + b) == evaluate(a) + evaluate(b) mod 2*pi."""
        for _ in range(500):
            a, b = _random_angle(self.rng), _random_angle(self.rng)
            for _ in range(10):
                assignment = {name: float(self.rng.uniform(-10, 10)) for name in "abc"}
                total = add(a, b).evaluate(assignment)
                parts = a.evaluate(assignment) + b.evaluate(assignment)
                assert _distance_to_multiple(total - parts, 2 * math.pi) < 1e-9


if __name__ == '__main__':
    pytest.main([__file__])
