import itertools
import json

import pytest

from ringhall import PRESETS, FreeReps, Quiver, get_ring
from ringhall.quiver import dims_below, euler_form, smith_valuations
from ringhall.ring import BudgetExceeded, Ring

KRONECKER = Quiver(("a", "b"), (("a", "b"), ("a", "b")))


def reps_for(name, q=2, n=2):
    quiver = PRESETS[name] if isinstance(name, str) else name
    return FreeReps(quiver, get_ring(q, n))


def all_reps(reps, dim):
    shapes = [(dim[t], dim[s]) for s, t in reps.quiver.arrow_indices]
    for combo in itertools.product(*(reps.ring.enumerate_matrices(r, c) for r, c in shapes)):
        yield reps.make(dim, combo)


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver((1,), ((1, 1),))
    with pytest.raises(ValueError):
        Quiver((1, 2), ((1, 3),))
    with pytest.raises(ValueError):
        Quiver((1, 1), ())
    q = Quiver.from_json(json.loads(json.dumps(KRONECKER.to_json())))
    assert q == KRONECKER and q.arrow_count("a", "b") == 2


def test_euler_form_a2():
    a2 = PRESETS["a2"]
    assert euler_form((1, 0), (0, 1), a2) == -1
    assert euler_form((0, 1), (1, 0), a2) == 0
    assert euler_form((1, 1), (1, 1), a2) == 1


def test_dims_below():
    assert sorted(dims_below((1, 1))) == [(0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (3, 2), (2, 3)])
def test_a2_line_classes(q, n):
    reps = reps_for("a2", q, n)
    classes = reps.iso_classes((1, 1))
    assert len(classes) == n + 1
    assert [smith_valuations(reps.ring, X.maps[0]) for X in classes] == [(n,)] + [(k,) for k in reversed(range(n))]


@pytest.mark.parametrize("dim", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_smith_fast_path_matches_orbit_partition(dim):
    reps = reps_for("a2", 2, 2)
    fast, lex = {}, {}
    for X in all_reps(reps, dim):
        fast.setdefault(reps.canonical_form(X), set()).add(X)
        lex.setdefault(reps.lex_canonical_form(X), set()).add(X)
    assert sorted(map(frozenset, fast.values()), key=sorted) == sorted(map(frozenset, lex.values()), key=sorted)
    assert len(fast) == len(reps.iso_classes(dim))


@pytest.mark.parametrize("dim", [(1, 1), (2, 1)])
def test_orbit_minimum_matches_exhaustive_group_search(dim):
    reps = reps_for("a2", 2, 2)
    for X in all_reps(reps, dim):
        assert reps.lex_canonical_form(X) == reps.orbit_min_exhaustive(X)


def test_general_path_kronecker():
    reps = reps_for(KRONECKER, 2, 2)
    classes = reps.iso_classes((1, 1))
    # pairs (a, b) in R^2 up to a common unit: 0, then the orbits of nonzero pairs
    assert len(classes) == len({reps.orbit_min_exhaustive(X) for X in all_reps(reps, (1, 1))})
    assert len(classes) == 10
    for X in all_reps(reps, (1, 1)):
        assert reps.canonical_form(X) in classes


def test_iso_classes_after_prior_canonicalization():
    # canonicalising a representative first must not hide its class later
    reps = reps_for("a3", 2, 2)
    reps.canonical_form(reps.simple(1))
    assert reps.iso_classes((1, 0, 0)) == [reps.simple(1)]
    assert len(reps.iso_classes((1, 1, 1))) == 9


@pytest.mark.parametrize("name,dims", [
    ("a2", [(1, 1), (2, 1), (1, 2), (2, 2)]),
    ("a3", [(1, 1, 1)]),
    ("two-points", [(1, 1), (2, 1)]),
])
def test_aut_count_matches_exhaustive(name, dims):
    reps = reps_for(name, 2, 2)
    for dim in dims:
        for X in reps.iso_classes(dim):
            assert reps.aut_count(X) == reps.aut_count_exhaustive(X)


def test_class_equation():
    # sum over classes of |G|/|Aut| is the size of the representation space
    reps = reps_for("a2", 3, 2)
    dim = (2, 1)
    total = sum(reps.group_order(dim) // reps.aut_count(X) for X in reps.iso_classes(dim))
    assert total == reps.ring.size ** 2


def test_direct_sum_and_isomorphism():
    reps = reps_for("a2", 2, 2)
    R = reps.ring
    A = reps.make((1, 1), [R.matrix([[R.t]])])
    B = reps.make((1, 1), [R.matrix([[R.one]])])
    S = reps.direct_sum(A, B)
    assert S.dim == (2, 2)
    assert reps.is_isomorphic(S, reps.direct_sum(B, A))
    assert not reps.is_isomorphic(A, B)


def test_free_subreps_of_line():
    reps = reps_for("a2", 2, 2)
    R = reps.ring
    L = reps.make((1, 1), [R.matrix([[R.t]])])
    # a free sub of rank (0,1) is always stable; rank (1,0) never is
    subs = reps.free_subreps(L, (0, 1))
    assert len(subs) == 1 and subs[0][1].dim == (1, 0)
    assert reps.free_subreps(L, (1, 0)) == []
    # 2 summand choices in R^2 that are x-stable for the zero map
    Z = reps.zero((1, 2))
    assert len(reps.free_subreps(Z, (0, 1))) == R.free_grassmannian_size(2, 1)


def test_make_rejects_bad_shapes():
    reps = reps_for("a2")
    with pytest.raises(ValueError):
        reps.make((1, 1), [reps.ring.zeros(2, 1)])
    with pytest.raises(ValueError):
        reps.make((1,))


def test_json_roundtrip():
    reps = reps_for("a3", 3, 2)
    for X in reps.iso_classes((1, 1, 1)):
        assert reps.rep_from_json(json.loads(json.dumps(reps.rep_to_json(X)))) == X


def test_format_rep():
    reps = reps_for("a2", 2, 3)
    R = reps.ring
    assert reps.format_rep(reps.make((2, 1), [R.matrix([[R.t, 0]])])) == "(2,1) [[t,0]]"
    assert reps.format_rep(reps.zero()) == "(0,0) 0[0x0]"
    assert reps_for("two-points").format_rep(reps_for("two-points").zero((2, 0))) == "(2,0)"


def test_budget_on_general_path():
    reps = FreeReps(KRONECKER, Ring(3, 2, budget=1000))
    with pytest.raises(BudgetExceeded):
        reps.iso_classes((2, 2))
