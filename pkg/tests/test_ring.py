import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringhall.ring import BudgetExceeded, NotInvertible, RMatrix, Ring, RingElem, get_ring

RINGS = [(2, 1), (2, 2), (2, 3), (3, 2), (5, 2), (3, 3)]


def ring_and_elems(k):
    return st.sampled_from(RINGS).flatmap(
        lambda p: st.tuples(st.just(get_ring(*p)), *[st.integers(0, p[0] ** p[1] - 1)] * k))


def poly_mul_mod(ring, a, b):
    # schoolbook product of coefficient lists, truncated at t^n
    ca, cb = ring.coeffs(a), ring.coeffs(b)
    out = [0] * ring.n
    for i, j in itertools.product(range(ring.n), repeat=2):
        if i + j < ring.n:
            out[i + j] += ca[i] * cb[j]
    return ring.from_coeffs(out)


@given(ring_and_elems(3))
def test_ring_axioms(args):
    R, a, b, c = args
    assert R.add(a, b) == R.add(b, a)
    assert R.mul(a, b) == R.mul(b, a)
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, R.neg(a)) == R.zero
    assert R.sub(a, b) == R.add(a, R.neg(b))
    assert R.mul(a, R.one) == a


@given(ring_and_elems(2))
def test_mul_table_matches_polynomial_product(args):
    R, a, b = args
    assert R.mul(a, b) == poly_mul_mod(R, a, b)


@pytest.mark.parametrize("q,n", RINGS)
def test_inverse_newton_matches_exhaustive(q, n):
    R = get_ring(q, n)
    for a in R.elements():
        if R.is_unit(a):
            assert R.inverse(a) == R.inverse_exhaustive(a)
            assert R.mul(a, R.inverse(a)) == R.one
        else:
            with pytest.raises(NotInvertible):
                R.inverse(a)
            with pytest.raises(NotInvertible):
                R.inverse_exhaustive(a)


@pytest.mark.parametrize("q,n", RINGS)
def test_unit_count_and_valuations(q, n):
    R = get_ring(q, n)
    assert len(R.units()) == q**n - q ** (n - 1)
    assert R.valuation(R.zero) == n
    for k in range(n):
        assert R.valuation(R.t_power(k)) == k
    assert R.t_power(n) == R.zero


def test_encoding_orders_lexicographically(R23):
    codes = sorted(R23.elements())
    assert [R23.coeffs(c) for c in codes] == sorted(R23.coeffs(c) for c in codes)
    # 0 < t^2 < t < 1 in this order
    assert R23.zero < R23.t_power(2) < R23.t < R23.one


@given(ring_and_elems(1))
def test_format_parse_roundtrip(args):
    R, a = args
    assert R.parse(R.format(a)) == a


def test_format_examples():
    R = get_ring(3, 3)
    assert R.format(R.from_coeffs([1, 1])) == "1+t"
    assert R.format(R.from_coeffs([0, 0, 2])) == "2t^2"
    assert R.format(R.zero) == "0"
    assert R.parse("t^2") == R.t_power(2)
    assert R.parse("1 + 2t") == R.from_coeffs([1, 2])


def test_bad_parameters():
    with pytest.raises(ValueError):
        Ring(4, 2)
    with pytest.raises(ValueError):
        Ring(2, 0)
    with pytest.raises(ValueError):
        Ring(2, 2, budget=0)


def test_ring_elem_operators(R22):
    t = RingElem(R22, R22.t)
    one = RingElem(R22, R22.one)
    assert (t * t).code == R22.zero
    assert ((one + t) * (one + t)).code == R22.one  # (1+t)^2 = 1 + 2t = 1 mod 2
    with pytest.raises(ValueError):
        t + RingElem(get_ring(3, 2), 1)


# -- matrices ---------------------------------------------------------------

def test_matrix_construction_and_shape(R22):
    M = R22.matrix([[R22.one, R22.t], [[0, 1], 0]])
    assert M.shape == (2, 2)
    assert M[0, 1] == M[1, 0] == R22.t
    assert M.transpose()[1, 0] == R22.t
    with pytest.raises(ValueError):
        RMatrix.from_rows([[1, 2], [3]])


@pytest.mark.parametrize("q,n,r", [(2, 1, 2), (2, 2, 2), (3, 2, 1), (2, 3, 1), (2, 1, 3)])
def test_gl_order_matches_enumeration(q, n, r):
    R = get_ring(q, n)
    gl = list(R.enumerate_GL(r))
    assert len(gl) == R.gl_order(r)
    for g in gl[:50]:
        assert R.mat_mul(g, R.mat_inverse(g)) == R.identity(r)


def test_mat_inverse_rejects_singular(R22):
    with pytest.raises(NotInvertible):
        R22.mat_inverse(R22.matrix([[R22.t, 0], [0, 1]]))
    assert not R22.is_invertible(R22.matrix([[R22.t]]))


def test_gl_generators_generate(R22):
    # closure of the identity under the generators is all of GL_2
    gens = R22.gl_generators(2)
    seen = {R22.identity(2)}
    frontier = list(seen)
    while frontier:
        g = frontier.pop()
        for h, h_inv in gens:
            assert R22.mat_mul(h, h_inv) == R22.identity(2)
            x = R22.mat_mul(h, g)
            if x not in seen:
                seen.add(x)
                frontier.append(x)
    assert len(seen) == R22.gl_order(2)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (3, 2), (2, 3)])
@pytest.mark.parametrize("r,s", [(2, 1), (3, 1), (3, 2), (2, 0), (2, 2)])
def test_summand_count_matches_formula(q, n, r, s):
    R = get_ring(q, n)
    assert len(R.summand_bases(r, s)) == R.free_grassmannian_size(r, s)


def test_summand_count_by_brute_force():
    # count column spans of all r x s matrices with full rank mod t
    R = get_ring(2, 2)
    spans = set()
    for M in R.enumerate_matrices(2, 1):
        if R.rank_mod_t(M) == 1:
            spans.add(frozenset(R.mat_mul(M, R.matrix([[u]])).entries for u in R.units()))
    assert len(spans) == len(R.summand_bases(2, 1)) == 6


def test_echelon_form_rejects_non_summands(R22):
    assert R22.echelon_summand_form(R22.matrix([[R22.t], [0]])) is None
    E = R22.echelon_summand_form(R22.matrix([[R22.t], [R22.one]]))
    assert E is not None and E[1, 0] == R22.one


def test_budget_guard():
    R = Ring(2, 2, budget=100)
    with pytest.raises(BudgetExceeded):
        list(R.enumerate_matrices(2, 2))
