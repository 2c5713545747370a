from __future__ import annotations

import pytest

from unstable_resolution.brown_gitler import (
    basis_from_minc,
    brute_force_witness,
    campbell_selick_check,
    contains_target,
    g_map,
    g_value,
    generator_witness,
    is_minc,
    j_module,
    l2_relation,
    minc_bijection,
    minc_sequences,
    minc_to_monomial,
    monomial_to_minc,
    pi_closed_form,
    pi_map,
    pi_value,
    presentation_check,
    rewrite_admissible,
    weight_monomials,
    witness_check,
)
from unstable_resolution.gf2 import Poly, binom_mod2
from unstable_resolution.matrix_algebra import act
from unstable_resolution.steenrod import miller_sq


def t(nvars, *exps):
    return Poly(nvars, [tuple(exps)])


def test_weight_monomials_of_seven():
    # a0 + 2a1 + 4a2 = 7, grouped by a0 + a1 + a2
    assert weight_monomials(7) == {3: [(1, 1, 1)], 4: [(1, 3, 0), (3, 0, 1)], 5: [(3, 2, 0)],
                                   6: [(5, 1, 0)], 7: [(7, 0, 0)]}
    assert j_module(7, 7).dims() == [0, 0, 0, 1, 2, 1, 1, 1]
    assert j_module(-1, 5).dims() == [0] * 6


def test_j_modules_are_unstable_and_closed():
    for k in (3, 4, 7, 8):
        assert not j_module(k, 12).check_instability()


def test_small_pi_values():
    assert pi_value(0, 1) == t(1, 1)
    assert pi_value(1, 1) == t(2, 0, 1)
    assert pi_value(1, 2) == t(2, 2, 0)
    assert pi_value(2, 2) == t(3, 0, 2, 0)
    assert pi_value(2, 3) == t(3, 2, 1, 0)
    assert not pi_value(1, 3)


def test_pi_values_in_rank_three_weight_eight():
    assert pi_value(3, 4) == t(4, 0, 4, 0, 0)
    assert pi_value(3, 5) == t(4, 4, 0, 1, 0)


@pytest.mark.parametrize("s", [0, 1, 2, 3])
def test_pi_is_linear_for_the_miller_action(s):
    # Sq^k π(x^a) = C(a, k) π(x^{a+k}), checked on polynomials
    top = 1 << s
    for a in range(1, top + 1):
        p = pi_value(s, a)
        assert p
        for k in range(1, a + 1):
            expected = pi_value(s, a + k) if binom_mod2(a, k) else Poly.zero(s + 1)
            assert miller_sq(k, p) == expected, (s, a, k)
    assert not pi_map(s, top + 2).commutation_failures()


def test_pi_closed_form_agrees_for_small_s_only():
    for s in (0, 1, 2):
        assert all(pi_value(s, a) == pi_closed_form(s, a) for a in range(1, (1 << s) + 1))
    mismatches = [a for a in range(1, 9) if pi_value(3, a) != pi_closed_form(3, a)]
    assert mismatches == [4, 5]


def test_g_values():
    assert g_value((1, 1)) == t(2, 1, 1)
    assert g_value((2, 1)) == t(2, 3, 0)
    assert not g_value((1, 2))
    assert not g_map(2, 6).commutation_failures()


def test_minc_sequences_and_bijection():
    assert minc_sequences(2) == {2: [(1, 1)], 3: [(2, 1)]}
    counts = {d: len(v) for d, v in minc_sequences(3).items()}
    assert counts == {3: 1, 4: 2, 5: 1, 6: 1, 7: 1}
    assert is_minc((2, 2, 1)) and not is_minc((3, 1, 1))
    for seq in minc_sequences(4)[8]:
        assert monomial_to_minc(minc_to_monomial(seq)) == seq
    for k in range(1, 5):
        for d in minc_sequences(k):
            assert len(minc_bijection(k, d)) == len(minc_sequences(k)[d])


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_minc_images_form_a_basis(s):
    assert all(basis_from_minc(s).values())


def test_rank_two_relation_and_rewriting():
    assert l2_relation(3, 1) == {(2, 2): 1}
    assert rewrite_admissible((3, 1, 1)) == {(2, 2, 1)}
    assert rewrite_admissible((2, 2, 1)) == {(2, 2, 1)}
    assert rewrite_admissible((1, 1, 2)) == set()
    with pytest.raises(ValueError):
        rewrite_admissible((0, 1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_presentation(n):
    result = presentation_check(n)
    assert result["pass"], result


def test_presentation_rejects_large_n():
    with pytest.raises(ValueError):
        presentation_check(5)


def test_twisted_weight_projection():
    for n, cap in ((1, 10), (2, 10), (3, 8)):
        assert campbell_selick_check(n, cap)["pass"]


def test_generator_witness_examples():
    x1, x2 = Poly.var(2, 0), Poly.var(2, 1)
    P = x2 ** 3
    sigma = generator_witness(P)
    assert contains_target(act(sigma, P))
    assert brute_force_witness(P) is not None
    with pytest.raises(ValueError):
        generator_witness(x1 * x2)


def test_witness_search():
    assert witness_check(2)["pass"]
    result = witness_check(3, samples=60, brute=10, seed=1)
    assert result["pass"] and result["checked"] == 60 and result["brute_force_checked"] == 10
