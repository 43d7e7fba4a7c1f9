import math
import pickle
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import iv_sign
from sturmperm import ExactParseError, ExactReal, MixedRadicand, compare, exact, floor, frac, sign

S5 = ExactReal.sqrt(5)
SIGMA = ExactReal.parse("(3-sqrt(5))/2")

ints = st.integers(-10**12, 10**12)
radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 13])


@st.composite
def reals(draw, d=None):
    d = draw(radicands) if d is None else d
    return ExactReal(draw(ints), draw(ints), d, draw(st.integers(1, 10**6)))


def test_canonical_form():
    x = ExactReal(2, 4, 5, 6)
    assert (x.p, x.q, x.d, x.r) == (1, 2, 5, 3)
    assert ExactReal(3, 2, 8, 1) == ExactReal(3, 4, 2, 1)  # sqrt 8 = 2 sqrt 2
    assert ExactReal.sqrt(9) == 3
    assert ExactReal(1, 0, 5, -2).d == 0 and ExactReal(1, 0, 5, -2).r == 2


def test_rational_identity():
    half = ExactReal(1, 0, 0, 2)
    assert half + half == 1


def test_conjugate_product():
    assert (1 + S5) * (1 - S5) == -4


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        S5 / 0


def test_mixed_radicands():
    with pytest.raises(MixedRadicand):
        S5 + ExactReal.sqrt(2)


def test_sign_examples():
    assert sign(S5 - 2) == 1
    assert sign(ExactReal.sqrt(2) - 1) == 1
    assert sign(1 - ExactReal.sqrt(2)) == -1
    assert sign(ExactReal(0)) == 0


def test_floor_examples():
    assert floor(SIGMA * 5) == 1
    assert floor(ExactReal(-1, 0, 0, 2)) == -1
    assert frac(ExactReal(7, 0, 0, 3)) == Fraction(1, 3)
    assert floor(-S5) == -3


def test_compare_examples():
    assert compare(frac(SIGMA * 2), frac(SIGMA * 3)) == 1
    assert compare(SIGMA, SIGMA) == 0


@pytest.mark.parametrize(
    "text, expected",
    [
        ("(3-1*sqrt(5))/2", SIGMA),
        ("(3-sqrt(5))/2", SIGMA),
        ("sqrt(5)", S5),
        ("-sqrt(2)", -ExactReal.sqrt(2)),
        ("1/5", ExactReal(1, 0, 0, 5)),
        ("7", ExactReal(7)),
        ("(1+2*sqrt(3))/4", ExactReal(1, 2, 3, 4)),
        ("1 + sqrt(5)", 1 + S5),
    ],
)
def test_parse(text, expected):
    assert ExactReal.parse(text) == expected


@pytest.mark.parametrize("text", ["1.5", "", "sqrt(2)+sqrt(3)", "abc", "1/0", "(1"])
def test_parse_rejects(text):
    with pytest.raises((ExactParseError, ZeroDivisionError, MixedRadicand)):
        ExactReal.parse(text)


@given(reals())
def test_text_round_trip(x):
    assert ExactReal.parse(str(x)) == x


@given(reals())
def test_pickle_round_trip(x):
    assert pickle.loads(pickle.dumps(x)) == x


@settings(max_examples=300)
@given(reals())
def test_sign_matches_interval_oracle(x):
    assert x.sign() == iv_sign(x.p, x.q, x.d, x.r)


@given(reals(d=5), reals(d=5))
def test_field_axioms(a, b):
    assert a + b - b == a
    assert (a * b == b * a) and (a + b == b + a)
    if b:
        assert (a / b) * b == a


@given(reals(d=5))
def test_floor_frac_bounds(x):
    n = math.floor(x)
    assert n <= x < n + 1
    assert 0 <= x.frac() < 1
    assert math.ceil(x) - n in (0, 1)


@given(st.fractions(max_denominator=10**6))
def test_rationals_agree_with_fraction(f):
    x = exact(f)
    assert x == f and hash(x) == hash(f)
    assert math.floor(x) == math.floor(f)


def test_decimal_hint_truncates():
    assert SIGMA.decimal(6) == "0.381966"
    assert (-SIGMA).decimal(3) == "-0.381"
