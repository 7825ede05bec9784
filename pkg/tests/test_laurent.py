from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringhall.laurent import (
    InterpolationError, LaurentPoly, SqrtQ, eval_at_prime, format_laurent, interpolate_in_q,
    parse_laurent,
)

v = LaurentPoly.monomial

laurents = st.dictionaries(st.integers(-6, 6), st.fractions(max_denominator=6).filter(bool),
                           max_size=4).map(LaurentPoly)
# total q-degree span <= 4, recoverable from 7 primes
even_laurents = st.dictionaries(st.integers(-2, 2).map(lambda k: 2 * k),
                                st.integers(-20, 20).filter(bool), max_size=4).map(LaurentPoly)


def test_quantum_integer():
    assert LaurentPoly.quantum_int(2) == v(1) + v(-1)
    assert LaurentPoly.quantum_int(3) == v(2) + v(0) + v(-2)


def test_formatting_is_descending():
    assert format_laurent(v(2) + v(4)) == "v^4 + v^2"
    assert format_laurent(v(-3, Fraction(-1, 2))) == "-1/2*v^-3"
    assert str(LaurentPoly({})) == "0"


@given(laurents)
def test_parse_roundtrip(f):
    assert parse_laurent(str(f)) == f


@given(laurents, laurents, laurents)
def test_ring_laws(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert f - f == LaurentPoly({})


def test_monomial_negative_power():
    assert v(2) ** -1 == v(-2)
    with pytest.raises(ValueError):
        (v(1) + v(0)) ** -1


@given(laurents, laurents, st.sampled_from([2, 3, 5, 7]))
def test_evaluation_is_a_ring_homomorphism(f, g, q):
    assert eval_at_prime(f * g, q) == eval_at_prime(f, q) * eval_at_prime(g, q)
    assert eval_at_prime(f + g, q) == eval_at_prime(f, q) + eval_at_prime(g, q)


def test_sqrtq_arithmetic():
    s = SqrtQ.v_power(2, 1)
    assert s * s == 2
    assert SqrtQ.v_power(2, -2) == Fraction(1, 2)
    assert (s + 1) / s == 1 + SqrtQ.v_power(2, -1)
    with pytest.raises(ValueError):
        eval_at_prime(v(1), 4)


@given(even_laurents)
def test_interpolation_roundtrip(f):
    primes = [2, 3, 5, 7, 11, 13, 17]
    samples = [(q, eval_at_prime(f, q)) for q in primes]
    assert interpolate_in_q(samples, "even", len(primes) - 2) == f


def test_interpolation_holdout_fails_on_non_polynomial():
    samples = [(q, SqrtQ(q, Fraction(1, q + 1))) for q in (2, 3, 5, 7)]
    with pytest.raises(InterpolationError):
        interpolate_in_q(samples, "even", 2)


def test_interpolation_detects_too_small_degree_bound():
    samples = [(q, SqrtQ(q, q**3)) for q in (2, 3, 5, 7)]
    with pytest.raises(InterpolationError):
        interpolate_in_q(samples, "even", 2)


def test_interpolation_known_bracket():
    # q^2 + q sampled at four primes gives v^4 + v^2
    samples = [(q, SqrtQ(q, q * q + q)) for q in (2, 3, 5, 7)]
    assert interpolate_in_q(samples, "even", 2) == parse_laurent("v^4 + v^2")
