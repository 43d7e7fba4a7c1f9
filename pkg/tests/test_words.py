import random
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import all_binary_words, brute_balanced, fibonacci_word, hp_mechanical
from sturmperm import (
    CirclePartition,
    ExactReal,
    InsufficientEvidence,
    LatticeHit,
    RationalSlope,
    Window,
    WindowTooWide,
    classify_word,
    detect_word_period,
    is_balanced,
    mechanical_word,
    rotation_word,
    subword_complexity,
    weight,
    word_max_pattern_complexity_bounded,
    word_pattern_complexity,
)
from sturmperm.words import balance_violation, lattice_hits, sturmian_partition

SIGMA = ExactReal.parse("(3-sqrt(5))/2")
FIB = fibonacci_word(3000)


def quiet(fn, *a, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return fn(*a, **kw)


def random_params(rng, d=5):
    """Irrational slope and intercept in Q(sqrt d), both in the unit interval."""
    s = ExactReal(rng.randint(-50, 50), rng.choice([-1, 1]) * rng.randint(1, 20), d, rng.randint(1, 60)).frac()
    r = ExactReal(rng.randint(-50, 50), rng.randint(-20, 20), d, rng.randint(1, 60)).frac()
    return s, r


def test_fibonacci_prefix():
    assert quiet(mechanical_word, SIGMA, SIGMA, 8) == "01001010"
    assert quiet(mechanical_word, SIGMA, SIGMA, 3000) == FIB


def test_rational_slope_flags_lattice_hit():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert mechanical_word(ExactReal.parse("1/2"), 0, 4) == "0101"
    assert {w.category for w in caught} == {LatticeHit, RationalSlope}


def test_upper_differs_from_lower_only_near_hits():
    s = SIGMA
    lower = quiet(mechanical_word, s, 0, 50)
    upper = quiet(mechanical_word, s, 0, 50, "upper")
    assert lattice_hits(s, 0, 50) == [0]
    diff = [i for i, (a, b) in enumerate(zip(lower, upper)) if a != b]
    assert len(diff) <= 2 and (not diff or diff[-1] - diff[0] <= 1)


def test_mechanical_preconditions():
    with pytest.raises(ValueError):
        mechanical_word(ExactReal(1), 0, 5)
    with pytest.raises(ValueError):
        mechanical_word(SIGMA, ExactReal(1), 5)


@pytest.mark.parametrize("seed", range(20))
def test_mechanical_equals_rotation(seed):
    sigma, rho = random_params(random.Random(seed))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        w = mechanical_word(sigma, rho, 500)
    assert w == rotation_word(sturmian_partition(sigma), sigma, sigma + rho, 500)
    # the same word from the partition [-sigma-rho, -rho) -> 1 started at 0
    part = CirclePartition([(-sigma - rho, "1"), (-rho, "0")])
    assert w == rotation_word(part, sigma, 0, 500)


@pytest.mark.parametrize("seed", range(5))
def test_mechanical_matches_high_precision(seed):
    sigma, rho = random_params(random.Random(100 + seed), d=2)
    assert quiet(mechanical_word, sigma, rho, 300) == hp_mechanical(sigma, rho, 300)


def test_partition_file_round_trip(tmp_path):
    part = CirclePartition([(SIGMA, "0"), (0, "1")], "right")
    path = tmp_path / "part.tsv"
    path.write_text(part.dumps())
    assert CirclePartition.read(path) == part


def test_partition_conventions():
    part_l = CirclePartition([(0, "a"), (SIGMA, "b")])
    part_r = CirclePartition([(0, "a"), (SIGMA, "b")], "right")
    assert part_l.label(SIGMA) == "b" and part_r.label(SIGMA) == "a"
    assert part_l.label(0) == "a" and part_r.label(0) == "b"


def test_subword_complexity():
    assert [subword_complexity(FIB[:1000], n) for n in range(1, 21)] == list(range(2, 22))
    assert subword_complexity("0101010101", 3) == 2
    with pytest.raises(WindowTooWide):
        subword_complexity("01", 3)


def test_pattern_complexity_words():
    assert word_max_pattern_complexity_bounded(FIB[:2000], 2, 20)[0] == 4
    assert word_pattern_complexity("0110", Window((0,))) == 2
    assert word_pattern_complexity(FIB[:500], Window.contiguous(4)) == 5
    with pytest.raises(WindowTooWide):
        word_pattern_complexity("0101", (0, 4))


def test_balance_examples():
    assert is_balanced(FIB[:300])
    assert not is_balanced("0011") and balance_violation("0011") == 2
    assert is_balanced("000")


def test_balance_matches_brute_force_small():
    for w in all_binary_words(8):
        assert is_balanced(w) == brute_balanced(w), w


def test_weight():
    assert weight("0100101") == 3 and weight("") == 0 and weight("1111") == 4


def test_detect_word_period():
    assert detect_word_period("0101010101", 2, 4) == (0, 2)
    assert detect_word_period("110101010101", 4, 4) == (1, 2)
    assert detect_word_period(FIB[:300], 50, 80) is None
    with pytest.raises(InsufficientEvidence):
        detect_word_period("0101", 2, 4)


def test_classify_word():
    assert classify_word(FIB[:500]).kind == "sturmian_like"
    c = classify_word("01" * 100)
    assert (c.kind, c.period, c.preperiod) == ("periodic", 2, 0)
    rng = random.Random(7)
    noise = "".join(rng.choice("01") for _ in range(500))
    assert classify_word(noise).kind == "other"
    assert classify_word("1" * 5 + "0" * 100).kind == "constant"
    with pytest.raises(InsufficientEvidence):
        classify_word("01" * 10)


@given(st.text(alphabet="01", max_size=40))
def test_balance_property(w):
    assert is_balanced(w) == brute_balanced(w)


@given(st.integers(0, 2000), st.integers(1, 30))
def test_sturmian_factors_balanced(start, n):
    u, v = FIB[start : start + n], FIB[start + 7 : start + 7 + n]
    assert abs(weight(u) - weight(v)) <= 1
