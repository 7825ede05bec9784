import pytest

from ringhall import PRESETS, InterpolationError, LaurentPoly, parse_laurent
from ringhall.acceptance import symbolic_example
from ringhall.symbolic import interpolate_word


def test_s1_squared_bracket():
    (term,) = interpolate_word(PRESETS["a2"], (1, 1), 2, (2, 3, 5, 7))
    assert term.exponent == 2
    assert term.bracket == parse_laurent("v^4 + v^2")
    assert term.value == parse_laurent("v^6 + v^4")


@pytest.mark.parametrize("n", [1, 2])
def test_s1_s2_s1(n):
    terms = interpolate_word(PRESETS["a2"], (1, 2, 1), n, (2, 3, 5, 7))
    got = sorted(str(t.value) for t in terms)
    want = sorted(str(f) for f in symbolic_example(n)[(1, 2, 1)].values())
    assert got == want


def test_integer_twist_exponent_doubles():
    (term,) = interpolate_word(PRESETS["a2"], (1, 1), 2, (2, 3, 5, 7), twist="integer")
    assert term.exponent == 4
    assert term.value == LaurentPoly.monomial(4) * parse_laurent("v^4 + v^2")


def test_degree_bound_too_small():
    with pytest.raises(InterpolationError):
        interpolate_word(PRESETS["a2"], (1, 1), 2, (2, 3, 5, 7), degree_bound=0)
