from __future__ import annotations

import pytest

from unstable_resolution.brown_gitler import j_module
from unstable_resolution.resolution import (
    build_f,
    build_tensor_term,
    classify,
    delta_label,
    ext_u_table,
    primitives,
    primitives_cap,
    rho,
    series_cross_check,
    takayasu_complex,
    takayasu_term,
    term_dims,
    verify_complex,
    verify_exactness,
)
from unstable_resolution.steenrod import suspension_class


def test_rho_and_labels():
    assert rho(3) == (4, 2, 1)
    assert delta_label(0, (3, 1)) == (5, 2)
    assert delta_label(1, (3, 1)) == (2,)
    assert delta_label(1, (5, 2)) is None
    assert classify(((3, 1), ()), 0, 2) == "A"
    assert classify(((5, 2), ()), 0, 2) == "B"
    assert classify(((5, 2), (1,)), 1, 2) == "A"
    assert classify(((7, 3), (1,)), 1, 2) == "B"
    assert classify(((), (1, 1)), 2, 2) == "B"


def test_primitives_of_small_modules():
    J3 = j_module(3, 6)
    # t̂_0 t̂_1 is hit by Sq^1 to t̂_0^3, the top class is primitive
    assert [len(primitives(J3, t)) for t in range(4)] == [0, 0, 0, 1]
    assert len(primitives(suspension_class(3, 6), 3)) == 1
    assert primitives_cap(16) == 32 and primitives_cap(24) == 40


def test_term_dimensions_in_degree_seven_rank_two():
    dims = term_dims(2, 8)
    assert [dims[k][7] for k in ("Lprime", "term0", "term1", "term2")] == [1, 2, 1, 0]


def test_last_map_in_rank_two_sends_square_to_cube():
    f = build_f(2, 2, 8)
    src = build_tensor_term(2, 1, 8).module
    tgt = build_tensor_term(2, 2, 8).module
    # x^2 ⊗ t̂_0 in L_1 ⊗ J(1) goes to 1 ⊗ t̂_0^3 in L_0 ⊗ J(3)
    i = src.labels[3].index(((2, 0), (1, 0)))
    cube = j_module(3, 8, 2).labels[3].index((3, 0))
    j = tgt.labels[3].index(((0, 0), (3, cube)))
    assert f.matrix(3).cols[i] == 1 << j


@pytest.mark.parametrize("n,cap", [(1, 16), (2, 16), (3, 16)])
def test_complex_and_exactness(n, cap):
    assert verify_complex(n, cap)["pass"]
    result = verify_exactness(n, cap)
    assert result["pass"]
    assert all(r["euler"] == 0 for r in result["degrees"])
    assert series_cross_check(n, cap)["pass"]


def test_resolution_rejects_large_n():
    with pytest.raises(ValueError):
        verify_complex(4, 8)
    with pytest.raises(ValueError):
        build_tensor_term(2, 3, 8)


def test_takayasu_dimensions_in_degree_three_rank_two():
    assert [takayasu_term(2, k, 8).dims()[3] for k in (-1, 0, 1, 2)] == [0, 0, 1, 1]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_takayasu_complex(n):
    result = takayasu_complex(n, 16)
    assert result["pass"]
    assert all(s["pass"] for s in result["commuting_squares"])


@pytest.mark.parametrize("n,t_max,expected", [(1, 8, [[1, 1, 1]]), (2, 12, [[2, 3, 1]])])
def test_ext_table(n, t_max, expected):
    result = ext_u_table(n, t_max)
    assert result["nonzero"] == expected
    assert result["differentials_vanish"] and result["pass"]
