from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unstable_resolution.gf2 import (
    GF2Matrix,
    MonomialIndex,
    Poly,
    SpanSolver,
    binom_mod2,
    bit_subsets,
    independent_subset,
    intersect_spans,
    kernel_and_rank,
    monomials_of_degree,
    rank_of_rows,
    solve_in_span,
    span_rank,
)

x1, x2, x3 = (Poly.var(3, i) for i in range(3))


def polys(nvars=3, max_deg=4):
    mono = st.tuples(*[st.integers(0, max_deg)] * nvars)
    return st.lists(mono, max_size=6).map(lambda ms: Poly(nvars, ms))


def matrices(max_dim=6):
    return st.integers(1, max_dim).flatmap(
        lambda c: st.lists(st.integers(0, (1 << c) - 1), min_size=1, max_size=max_dim).map(
            lambda rows: GF2Matrix(len(rows), c, rows)))


def test_binomial_parity_matches_pascal():
    row = [1]
    for a in range(1, 40):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
        assert [binom_mod2(a, b) for b in range(a + 1)] == [c % 2 for c in row]


def test_bit_subsets_are_the_odd_binomials():
    for a in range(64):
        assert sorted(bit_subsets(a)) == [b for b in range(a + 1) if binom_mod2(a, b)]


def test_characteristic_two_arithmetic():
    assert x1 + x1 == Poly.zero(3)
    assert (x1 + x2) ** 2 == x1 ** 2 + x2 ** 2
    assert (x1 + x2) * (x1 + x2 + x3) == x1 ** 2 + x1 * x3 + x2 * x3 + x2 ** 2
    assert (x1 + x2).square() == (x1 + x2) * (x1 + x2)


def test_leading_monomial_is_lex_with_x1_most_significant():
    p = x1 * x3 ** 3 + x2 ** 4
    assert p.leading_monomial() == (1, 0, 3)
    assert Poly.monomial((0, 2, 0)).nvars == 3


def test_homogeneous_parts_and_coefficients():
    p = x1 ** 2 * x3 + x3 ** 2 + x1
    assert p.components()[3] == x1 ** 2 * x3
    assert not p.is_homogeneous()
    coeffs = p.coefficients_in(2)
    assert coeffs[0] == x1 and coeffs[1] == x1 ** 2 and coeffs[2] == Poly.one(3)


def test_restrict_embed_pad_round_trip():
    p = Poly(2, [(1, 2), (3, 0)])
    q = p.embed(3, [0, 2])
    assert q == x1 * x3 ** 2 + x1 ** 3
    assert q.restrict([0, 2]) == p
    assert p.pad(3) == Poly(3, [(1, 2, 0), (3, 0, 0)])


def test_monomials_of_degree_counts():
    assert len(monomials_of_degree(3, 4)) == 15
    assert monomials_of_degree(2, 3, 1) == sorted(monomials_of_degree(2, 3, 1))
    assert all(min(m) >= 1 for m in monomials_of_degree(3, 6, 1))


@given(polys(), polys(), polys())
@settings(max_examples=80, deadline=None)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f.square() == f * f


@given(polys())
@settings(max_examples=50, deadline=None)
def test_poly_json_round_trip(f):
    assert Poly.from_json(3, f.to_json()) == f


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rank_nullity_and_kernel(m):
    r, kern = kernel_and_rank(m)
    assert r + len(kern) == m.ncols
    for v in kern:
        assert m.apply(v) == 0
    assert rank_of_rows(kern) == len(kern)
    assert kernel_and_rank(m.transpose())[0] == r


@given(matrices(), matrices())
@settings(max_examples=60, deadline=None)
def test_matmul_matches_apply(a, b):
    if a.ncols != b.nrows:
        return
    ab = a @ b
    for j, col in enumerate(b.cols):
        assert ab.cols[j] == a.apply(col)


def test_matrix_json_and_columns():
    m = GF2Matrix.from_lists([[1, 0, 1], [0, 1, 1]])
    assert m.cols == (1, 2, 3)
    assert GF2Matrix.from_json(m.to_json()) == m
    assert GF2Matrix.from_columns(2, m.cols) == m


def test_span_solver_coordinates():
    s = SpanSolver([0b011, 0b110])
    assert s.rank == 2
    assert s.coordinates(0b101) == 0b11
    assert s.coordinates(0b100) is None
    assert not s.add(0b101)


def test_solve_in_span_and_ranks():
    span = [x1 ** 2, x1 * x2, x2 ** 2]
    assert solve_in_span(span, (x1 + x2) ** 2) == 0b101
    assert solve_in_span(span, x1 * x3) is None
    assert span_rank([x1 * x2, x1 * x2, x2 ** 2]) == 2
    assert independent_subset([x1 * x2, x1 * x2, x2 ** 2]) == [0, 2]
    with pytest.raises(ValueError):
        solve_in_span(span, x1 + x1 * x2)


def test_intersect_spans():
    a = [0b0011, 0b0101]
    b = [0b0110, 0b1000]
    inter = intersect_spans(a, b)
    assert rank_of_rows(inter) == 1
    assert SpanSolver(a).contains(inter[0]) and SpanSolver(b).contains(inter[0])


def test_monomial_index_vectors():
    idx = MonomialIndex([(2, 0), (1, 1)])
    p = Poly(2, [(1, 1)])
    assert idx.poly(2, idx.vector(p)) == p
    assert idx.vector(Poly(2, [(0, 2)]), strict=False) is None
