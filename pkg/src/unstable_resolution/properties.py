"""Randomized property suite for the Steenrod actions and the matrix action."""

from __future__ import annotations

import random

from .gf2 import Poly, monomials_of_degree
from .matrix_algebra import MatrixN, act
from .steenrod import CLASSICAL, MILLER, TWISTED, predecessors, sq_general
from .steinberg import total_square_identity

ACTIONS = (CLASSICAL, TWISTED, MILLER)


def random_poly(nvars: int, degree: int, rng: random.Random, nonzero: bool = True) -> Poly:
    mons = monomials_of_degree(nvars, degree)
    while True:
        p = Poly(nvars, [m for m in mons if rng.random() < 0.5])
        if p or not nonzero:
            return p


def random_matrix(n: int, rng: random.Random) -> MatrixN:
    return MatrixN(n, [rng.getrandbits(n) for _ in range(n)])


def _sq(action: str, nvars: int):
    pred = predecessors(action, nvars)
    return lambda k, f: sq_general(k, f, pred)


def shift_down(f: Poly) -> Poly:
    """t_i ↦ t_{i-1}, t_0 ↦ t_{n-1}: the twisted top square is Sq^{|f|} f = shift(f)^2."""
    n = f.nvars
    return Poly(n, [m[1:] + m[:1] for m in f.terms])


def _weight(m) -> int:
    return sum(a << h for h, a in enumerate(m))


def check_cartan(action, f, g) -> bool:
    S = _sq(action, f.nvars)
    fg = f * g
    top = fg.degree()
    for k in range(top + 2):
        rhs = Poly.zero(f.nvars)
        for i in range(k + 1):
            rhs = rhs + S(i, f) * S(k - i, g)
        if S(k, fg) != rhs:
            return False
    return True


def check_instability(action, f) -> bool:
    S = _sq(action, f.nvars)
    d = f.degree()
    if any(S(k, f) for k in range(d + 1, d + 4)):
        return False
    if action == CLASSICAL:
        return S(d, f) == f.square()
    if action == TWISTED:
        return S(d, f) == shift_down(f).square()
    return True


def check_adem(action, f) -> bool:
    S = _sq(action, f.nvars)
    return (not S(1, S(1, f))
            and S(1, S(2, f)) == S(3, f)
            and S(2, S(2, f)) == S(3, S(1, f))
            and not S(1, S(3, f)))


def check_equivariance(sigma: MatrixN, f: Poly) -> bool:
    S = _sq(CLASSICAL, f.nvars)
    return all(S(k, act(sigma, f)) == act(sigma, S(k, f)) for k in range(f.degree() + 1))


def check_action_law(sigma: MatrixN, tau: MatrixN, f: Poly) -> bool:
    return act(sigma @ tau, f) == act(sigma, act(tau, f))


def check_weight(action, f: Poly) -> bool:
    """Each Sq^k of a monomial keeps the weight (mod 2^n - 1 for the twisted action)."""
    n = f.nvars
    S = _sq(action, n)
    mod = (1 << n) - 1
    for m in f.terms:
        w = _weight(m)
        for k in range(1, sum(m) + 1):
            for t in S(k, Poly(n, [m])).terms:
                wt = _weight(t)
                if action == TWISTED and (wt - w) % mod:
                    return False
                if action == MILLER and wt != w:
                    return False
    return True


def run_property_suite(cases: int = 10_000, seed: int = 0) -> dict:
    """At least ``cases`` randomized checks spread over all properties."""
    rng = random.Random(seed)
    counts: dict[str, list[int]] = {}

    def record(name: str, ok: bool) -> None:
        c = counts.setdefault(name, [0, 0])
        c[0] += 1
        c[1] += 0 if ok else 1

    done = 0
    rounds = 0
    while done < cases:
        action = ACTIONS[rounds % len(ACTIONS)]
        rounds += 1
        n = rng.randint(2, 3)
        f = random_poly(n, rng.randint(1, 3), rng)
        g = random_poly(n, rng.randint(1, 3), rng)
        record(f"cartan_{action}", check_cartan(action, f, g))
        record(f"instability_{action}", check_instability(action, f))
        record(f"adem_{action}", check_adem(action, random_poly(n, rng.randint(1, 4), rng)))
        if action != CLASSICAL:
            record(f"weight_{action}", check_weight(action, f))
        sigma, tau = random_matrix(n, rng), random_matrix(n, rng)
        record("equivariance", check_equivariance(sigma, f))
        record("left_action_law", check_action_law(sigma, tau, g))
        done = sum(c[0] for c in counts.values())
    for n in (1, 2, 3):
        record("total_square_mui", total_square_identity(n))
    failures = sum(c[1] for c in counts.values())
    return {"cases": sum(c[0] for c in counts.values()), "failures": failures, "seed": seed,
            "by_property": {k: {"cases": v[0], "failures": v[1]} for k, v in sorted(counts.items())},
            "pass": failures == 0}
