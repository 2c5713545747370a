from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unstable_resolution.brown_gitler import j_module, l1_module
from unstable_resolution.gf2 import Poly, monomials_of_degree
from unstable_resolution.matrix_algebra import MatrixN, act
from unstable_resolution.series import ell
from unstable_resolution.steenrod import (
    TWISTED,
    GradedModule,
    close_under_action,
    hom_space,
    miller_sq,
    sq,
    suspension_class,
    tensor,
    total_square,
    total_square_with_extra_variable,
    twisted_sq,
)

x1, x2 = Poly.var(2, 0), Poly.var(2, 1)


def substitution_total_square(f: Poly, images) -> Poly:
    """St(f) by literal substitution of each variable, the independent oracle."""
    out = Poly.zero(f.nvars)
    for m in f.terms:
        term = Poly.one(f.nvars)
        for i, a in enumerate(m):
            term = term * images[i] ** a
        out = out + term
    return out


def classical_images(n):
    return [Poly.var(n, i) + Poly.var(n, i) ** 2 for i in range(n)]


def twisted_images(n):
    return [Poly.var(n, i) + Poly.var(n, (i - 1) % n) ** 2 for i in range(n)]


def homogeneous(nvars=2, max_deg=5):
    def build(args):
        d, picks = args
        mons = monomials_of_degree(nvars, d)
        return Poly(nvars, [m for m, b in zip(mons, picks) if b])

    return st.tuples(st.integers(1, max_deg), st.lists(st.booleans(), min_size=12, max_size=12)).map(build)


def test_defining_rule_and_small_values():
    assert total_square(x1) == {0: x1, 1: x1 ** 2}
    assert sq(1, x1 * x2) == x1 ** 2 * x2 + x1 * x2 ** 2
    assert sq(2, x1 ** 2) == x1 ** 4
    assert not sq(1, x1 ** 2)


def test_top_square_and_instability_examples():
    w = x1 * x2 * (x1 + x2)
    assert sq(3, w) == x1 ** 4 * x2 ** 2 + x1 ** 2 * x2 ** 4
    assert not sq(5, x1 ** 3 * x2)


def test_sq1_of_cube_times_variable_matches_substitution():
    f = x1 ** 3 * x2
    oracle = substitution_total_square(f, classical_images(2)).homogeneous_part(5)
    assert sq(1, f) == oracle == x1 ** 4 * x2 + x1 ** 3 * x2 ** 2


def test_twisted_examples():
    t = [Poly.var(2, i) for i in range(2)]
    assert twisted_sq(1, t[1], 2) == t[0] ** 2
    t3 = [Poly.var(3, i) for i in range(3)]
    assert twisted_sq(1, t3[0], 3) == t3[2] ** 2
    assert twisted_sq(2, t[0] * t[1], 2) == t[1] ** 2 * t[0] ** 2


def test_miller_generator_squares():
    t = [Poly.var(3, i) for i in range(3)]
    assert not miller_sq(1, t[0])
    assert miller_sq(1, t[2]) == t[1] ** 2


@given(homogeneous(2), st.integers(0, 6))
@settings(max_examples=60, deadline=None)
def test_sq_matches_substitution_oracle(f, k):
    oracle = substitution_total_square(f, classical_images(2))
    assert sq(k, f) == oracle.homogeneous_part(f.degree() + k)


@given(homogeneous(2), st.integers(0, 6))
@settings(max_examples=60, deadline=None)
def test_twisted_sq_matches_substitution_oracle(f, k):
    oracle = substitution_total_square(f, twisted_images(2))
    assert twisted_sq(k, f, 2) == oracle.homogeneous_part(f.degree() + k)


def test_total_square_with_extra_variable():
    # x ↦ x·x1 + x1^2 with the auxiliary variable first
    y, z = Poly.var(2, 0), Poly.var(2, 1)
    assert total_square_with_extra_variable(Poly.var(1, 0)) == y * z + z ** 2


@given(st.lists(st.integers(0, 3), min_size=2, max_size=2), homogeneous(2, 4))
@settings(max_examples=40, deadline=None)
def test_action_commutes_with_squares(entries, f):
    # any linear substitution, invertible or not, commutes with the squares
    sigma = MatrixN(2, entries)
    for k in range(f.degree() + 1):
        assert sq(k, act(sigma, f)) == act(sigma, sq(k, f))


def test_close_under_action_of_a_variable():
    m = close_under_action([Poly.var(1, 0)], 8)
    assert m.degrees() == [1, 2, 4, 8]
    assert [p for d in m.degrees() for p in m.polys[d]] == [Poly.var(1, 0) ** d for d in (1, 2, 4, 8)]


def test_close_under_action_rank_two_steinberg_generator():
    m = close_under_action([x1 ** 3 * x2 + x1 ** 2 * x2 ** 2], 7)
    assert m.dims()[4:8] == [1, 1, 1, 2] == ell(2, 7).to_list()[4:8]
    assert close_under_action([], 5).dims() == [0] * 6
    with pytest.raises(ValueError):
        close_under_action([x1 ** 3], 2)


def test_close_under_twisted_action_is_unstable():
    t = [Poly.var(2, i) for i in range(2)]
    m = close_under_action([t[0] * t[1]], 8, TWISTED)
    assert not m.check_instability()


def test_hom_space_l1_to_j2_is_unique():
    L1 = l1_module(2)
    J2 = j_module(2, 2, 2)
    maps = hom_space(L1, J2)
    assert len(maps) == 1
    f = maps[0]
    # x ↦ t̂_1, x² ↦ t̂_0²
    assert J2.labels[1] == [(0, 1)] and f.matrix(1).cols == (1,)
    assert J2.labels[2] == [(2, 0)] and f.matrix(2).cols == (1,)
    assert not f.commutation_failures()


def test_hom_space_small_cases():
    J1 = j_module(1, 3, 2)
    maps = hom_space(J1, J1)
    assert len(maps) == 1 and maps[0].matrix(1).cols == (1,)
    assert hom_space(j_module(3, 3), j_module(1, 3, 2)) == []


def test_hom_space_refuses_unbounded_or_undercapped_target():
    with pytest.raises(ValueError):
        hom_space(l1_module(4), l1_module(4))
    with pytest.raises(ValueError):
        hom_space(l1_module(1), j_module(2, 1, 2))


def test_tensor_dimensions_are_the_convolution():
    L1 = l1_module(10)
    J1 = j_module(1, 10, 1)
    T = tensor(L1, J1, 10)
    assert T.dims() == [0, 0] + [1] * 9
    assert not T.check_instability()
    S = tensor(L1, suspension_class(3, 10), 10)
    assert S.dims() == [0, 0, 0, 0] + [1] * 7


def test_graded_module_json_round_trip():
    m = close_under_action([x1 ** 3 * x2 + x1 ** 2 * x2 ** 2], 9)
    back = GradedModule.from_json(m.to_json())
    assert back.to_json() == m.to_json()
    assert back.sq_matrix(1, 4) == m.sq_matrix(1, 4)
    with pytest.raises(ValueError):
        m.sq_matrix(3, 8)
