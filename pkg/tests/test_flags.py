import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringhall import PRESETS, FlagType, get_ring
from ringhall.flags import (
    check_concat_identity, d1_d2, degree_defect, flag_dims, free_grassmannian_count,
    geometry_table, n_arrow, n_vertex, random_flag_type,
)

A2 = PRESETS["a2"]
QUIVERS = [PRESETS["a2"], PRESETS["a3"], PRESETS["two-points"]]

flag_types = st.lists(st.tuples(st.sampled_from([1, 2]), st.integers(1, 3)), min_size=1,
                      max_size=5).map(lambda p: FlagType(tuple(p)))


def test_parse_and_str():
    ft = FlagType.parse("1:1,2:1,1:2")
    assert ft.pairs == ((1, 1), (2, 1), (1, 2))
    assert str(ft) == "1:1,2:1,1:2"
    assert ft.rank_vector(A2) == (3, 1)
    with pytest.raises(ValueError):
        FlagType(((1, 0),))


def test_counts():
    ft = FlagType(((1, 1), (2, 1), (1, 2)))
    assert n_vertex(ft, 1) == 2
    assert n_vertex(ft, 2) == 0
    assert n_arrow(ft, (1, 2)) == 1


def test_flag_dim_of_full_flag_matches_projective_line():
    # the flag 1:1,1:1 parametrises lines in a rank-2 module: dimension n
    for n in (1, 2, 3):
        assert flag_dims(FlagType(((1, 1), (1, 1))), A2, n).flag_dim == n


@given(flag_types, flag_types)
def test_concat_identity(ft1, ft2):
    for i in A2.vertices:
        assert check_concat_identity(ft1, ft2, i)


@given(flag_types, flag_types, st.integers(1, 5))
def test_degree_cancellation(ft1, ft2, n):
    assert degree_defect(ft1, ft2, A2, n) == 0


@given(flag_types, st.integers(1, 5))
def test_jet_scaling(ft, n):
    d, d1 = flag_dims(ft, A2, n), flag_dims(ft, A2, 1)
    assert d.flag_dim == n * d1.flag_dim
    assert d.jet_fiber_rank == d.flag_dim - d1.flag_dim


def test_d1_d2_on_simples():
    assert d1_d2((1, 0), (0, 1), A2, 1) == (3, 2)
    with pytest.raises(ValueError):
        d1_d2((1,), (0, 1), A2, 1)


def test_seeded_random_types_are_reproducible():
    a = [random_flag_type(random.Random(7), q) for q in QUIVERS]
    b = [random_flag_type(random.Random(7), q) for q in QUIVERS]
    assert a == b


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (3, 2), (2, 3)])
def test_grassmannian_count(q, n):
    assert free_grassmannian_count(1, 2, get_ring(q, n)) == q**n + q ** (n - 1)


def test_geometry_table_has_consistent_checks():
    rows = dict(geometry_table(FlagType.parse("1:1,2:1,1:1"), A2, 2))
    assert rows["degree_defect"] == 0
    assert rows["jet_scaling_holds"] and rows["concat_identity_holds"]
    with pytest.raises(ValueError):
        geometry_table(FlagType.parse("3:1"), A2, 2)
