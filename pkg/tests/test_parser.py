import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlconn.parser import MAX_EXPONENT, ParseError, parse_expression, parse_rational
from nlconn.randomgen import random_expression, random_poly
from nlconn.ratpoly import MultiPoly


def test_examples():
    assert parse_expression("y1", 1) == MultiPoly.var(2, 1)
    x2, y2 = MultiPoly.var(4, 1), MultiPoly.var(4, 3)
    assert parse_expression("x2*(y2)^2", 2) == x2 * y2 * y2
    with pytest.raises(ParseError) as err:
        parse_expression("1/2*x1 + y3", 2)
    assert err.value.position == 10
    assert "out of range" in err.value.reason


def test_syntax_and_precedence():
    x1, y1 = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    assert parse_expression("  1 + 2 * x1 ^ 2 ", 1) == 1 + 2 * x1 * x1
    # unary minus is part of the base, so it sits under the exponent
    assert parse_expression("-x1^2", 1) == x1 * x1
    assert parse_expression("-1*x1^2", 1) == -(x1 * x1)
    assert parse_expression("(-x1)^2", 1) == x1 * x1
    assert parse_expression("- - y1", 1) == y1
    assert parse_expression("3/6", 1) == Fraction(1, 2)
    assert parse_expression("x1 - y1 - 1", 1) == x1 - y1 - 1
    assert parse_expression("(x1 + y1)^0", 1) == 1
    assert parse_expression("x1^16", 1) == x1 ** 16


@pytest.mark.parametrize("src, position, reason", [
    ("x1 + * y1", 6, "unexpected character '*'"),
    ("z1 + x1", 1, "unknown variable 'z1'"),
    ("x + 1", 1, "unknown variable 'x'"),
    ("1/2*x1 + y3", 10, "variable index out of range"),
    ("x0", 1, "variable index out of range"),
    ("x1^17", 4, f"exponent 17 exceeds cap {MAX_EXPONENT}"),
    ("1/0", 3, "zero denominator"),
    ("", 1, "empty expression"),
    ("(x1 + 1", 8, "expected ')'"),
    ("x1 +", 5, "unexpected end of expression"),
    ("x1 y1", 4, "unexpected character 'y'"),
    ("x1^", 4, "expected an unsigned integer"),
])
def test_errors_carry_positions(src, position, reason):
    with pytest.raises(ParseError) as err:
        parse_expression(src, 2)
    assert err.value.position == position
    assert reason in err.value.reason
    assert f"position {position}" in str(err.value)


def test_round_trip_seeded():
    rng = random.Random(15)
    for _ in range(200):
        n = rng.randint(1, 3)
        p = parse_expression(random_expression(rng, n), n)
        assert parse_expression(p.format(), n) == p


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_round_trip_of_printed_polynomials(seed, n):
    p = random_poly(random.Random(seed), 2 * n, max_degree=4, max_terms=6)
    assert parse_expression(p.format(), n) == p


def test_parse_rational():
    assert parse_rational(3) == 3
    assert parse_rational("-3/4") == Fraction(-3, 4)
    for bad in (True, "1/0", "abc", 1.5):
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(ValueError):
        parse_expression("x1", 0)
