from __future__ import annotations

import random

import pytest

from unstable_resolution.gf2 import Poly, monomials_of_degree
from unstable_resolution.matrix_algebra import (
    AlgebraElement,
    MatrixN,
    act,
    alg_act,
    alg_multiply,
    borel_sum,
    embedded_idempotent,
    permutation_matrix,
    permutation_sum,
    steinberg_act,
    steinberg_idempotent,
    transvection,
    verify_hecke,
)
from unstable_resolution.steinberg import omega

x1, x2 = Poly.var(2, 0), Poly.var(2, 1)


def substitute(sigma: MatrixN, f: Poly) -> Poly:
    """x_i ↦ Σ_j σ_{j,i} x_j by plain polynomial arithmetic."""
    n = f.nvars
    images = [sum((Poly.var(n, j) for j in range(n) if sigma.entry(j, i)), Poly.zero(n)) for i in range(n)]
    out = Poly.zero(n)
    for m in f.terms:
        term = Poly.one(n)
        for i, a in enumerate(m):
            term = term * images[i] ** a
        out = out + term
    return out


def random_poly(rng, n, deg, terms=4):
    mons = monomials_of_degree(n, deg)
    return Poly(n, rng.sample(mons, min(terms, len(mons))))


def test_substitution_examples():
    swap = permutation_matrix([1, 0])
    assert act(swap, x1 ** 2 * x2) == x1 * x2 ** 2
    # I + E_12 sends x2 to x2 + x1
    assert act(transvection(2, 0, 1), x2 ** 2) == x1 ** 2 + x2 ** 2
    assert act(MatrixN.diag([1, 0]), x1 * x2) == Poly.zero(2)


def test_act_matches_substitution_oracle():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 3)
        sigma = MatrixN(n, [rng.randrange(1 << n) for _ in range(n)])
        f = random_poly(rng, n, rng.randint(0, 6))
        assert act(sigma, f) == substitute(sigma, f)


def test_left_action_law():
    rng = random.Random(5)
    for _ in range(200):
        a = MatrixN(3, [rng.randrange(8) for _ in range(3)])
        b = MatrixN(3, [rng.randrange(8) for _ in range(3)])
        f = random_poly(rng, 3, rng.randint(1, 5))
        assert act(a @ b, f) == act(a, act(b, f))


def test_rank_two_idempotent_support_and_values():
    e2 = steinberg_idempotent(2)
    assert len(e2) == 4
    assert alg_act(e2, omega(1, 2) * omega(2)) == x1 ** 3 * x2 + x1 ** 2 * x2 ** 2
    assert steinberg_act(omega(1, 2) * omega(2)) == x1 ** 3 * x2 + x1 ** 2 * x2 ** 2
    assert alg_act(permutation_sum(2), x1 + x2) == Poly.zero(2)


def test_fast_steinberg_action_matches_group_algebra():
    rng = random.Random(11)
    for n in (1, 2, 3):
        e = steinberg_idempotent(n)
        for _ in range(25):
            f = random_poly(rng, n, rng.randint(0, 7))
            assert steinberg_act(f) == alg_act(e, f)


def test_algebra_multiplication_is_associative_and_additive():
    rng = random.Random(7)
    pool = list(MatrixN.all(2))
    for _ in range(30):
        u, v, w = (AlgebraElement(2, rng.sample(pool, rng.randint(0, 5))) for _ in range(3))
        assert alg_multiply(alg_multiply(u, v), w) == alg_multiply(u, alg_multiply(v, w))
        assert alg_multiply(u, v + w) == alg_multiply(u, v) + alg_multiply(u, w)
        f = random_poly(rng, 2, 4)
        assert alg_act(alg_multiply(u, v), f) == alg_act(u, alg_act(v, f))


def test_embedded_idempotents():
    e1 = embedded_idempotent("e", 3, 1)
    assert e1 == AlgebraElement(3, [MatrixN.identity(3)])
    e22 = embedded_idempotent("e2", 3, 2)
    assert all(m.rows[0] == 1 for m in e22.matrices())
    proj = embedded_idempotent("I", 3)
    assert proj.matrices() == [MatrixN.diag([1, 1, 0])]
    with pytest.raises(IndexError):
        embedded_idempotent("e2", 3, 3)
    with pytest.raises(IndexError):
        embedded_idempotent("e", 2, 3)
    with pytest.raises(ValueError):
        embedded_idempotent("x", 2, 1)


def test_borel_and_permutation_sums_have_expected_sizes():
    assert len(borel_sum(3)) == 8
    assert len(permutation_sum(3)) == 6
    assert len(steinberg_idempotent(3)) > 0


@pytest.mark.parametrize("n", [2, 3])
def test_hecke_relations(n):
    result = verify_hecke(n)
    assert all(result.values()), result


def test_hecke_rejects_out_of_range():
    with pytest.raises(ValueError):
        verify_hecke(5)


def test_algebra_element_json_round_trip():
    e = steinberg_idempotent(2)
    assert AlgebraElement.from_json(e.to_json()) == e
