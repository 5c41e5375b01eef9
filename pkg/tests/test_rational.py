from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlbdistill.rational import format_float, format_rational, parse_rational, to_fraction


@pytest.mark.parametrize("q, text", [
    (Fraction(3, 8), "3/8"),
    (Fraction(-1, 2), "-1/2"),
    (Fraction(4), "4"),
    (Fraction(0), "0"),
])
def test_format(q, text):
    assert format_rational(q) == text


def test_parse_accepts_decimals_exactly():
    assert parse_rational("0.125") == Fraction(1, 8)
    assert parse_rational(" -7/3 ") == Fraction(-7, 3)


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1//2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_floats_refused():
    with pytest.raises(TypeError):
        to_fraction(0.5)


@given(st.fractions())
def test_round_trip(q):
    assert parse_rational(format_rational(q)) == q


@given(st.fractions(max_denominator=10 ** 6))
def test_float_rendering_agrees_to_12_digits(q):
    shown = float(format_float(q))
    assert abs(shown - float(q)) <= 1e-12 * max(1.0, abs(float(q)))
