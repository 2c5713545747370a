"""Brown-Gitler modules inside Miller's algebra J_* = F_2[t̂_0, t̂_1, ...].

A J_* monomial is an exponent tuple (α_0, α_1, ...); its degree is Σ α_h and
its weight Σ α_h 2^h.  J(k) is spanned by the monomials of weight k.  The
maps π_s: L_1 → J(2^s) are found by solving for A-linear maps, and
g_s = μ ∘ (π_{s-1} ⊗ ... ⊗ π_0) is evaluated monomial by monomial.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .gf2 import (
    GF2Matrix,
    MonomialIndex,
    Poly,
    binom_mod2,
    kernel_and_rank,
    monomials_of_degree,
    rank_of_rows,
)
from .matrix_algebra import MatrixN, act, transvection
from .steenrod import (
    CLASSICAL,
    MILLER,
    GradedMap,
    GradedModule,
    hom_space,
    miller_sq,
    module_from_polys,
    twisted_sq,
)
from .steinberg import build_steinberg


def j_nvars(k: int) -> int:
    """Number of generators t̂_0..t̂_{r} that can occur in weight k."""
    return max(1, k.bit_length())


def weight(alpha) -> int:
    return sum(a << h for h, a in enumerate(alpha))


def weight_monomials(k: int, nvars: int | None = None) -> dict[int, list[tuple]]:
    """Monomials of weight k by degree, each list sorted."""
    nvars = j_nvars(k) if nvars is None else nvars
    out: dict[int, list[tuple]] = {}

    def rec(h: int, left: int, acc: list):
        # acc holds exponents from the highest generator down
        if h < 0:
            if left == 0:
                t = tuple(reversed(acc))
                out.setdefault(sum(t), []).append(t)
            return
        w = 1 << h
        for a in range(left // w, -1, -1):
            rec(h - 1, left - a * w, acc + [a])

    if k >= 0:
        rec(nvars - 1, k, [])
    for v in out.values():
        v.sort()
    return out


def bg_poly(alpha, nvars: int | None = None) -> Poly:
    alpha = tuple(alpha)
    nvars = len(alpha) if nvars is None else nvars
    return Poly(nvars, [alpha + (0,) * (nvars - len(alpha))])


def bg_multiply(u: Poly, v: Poly) -> Poly:
    n = max(u.nvars, v.nvars)
    return u.pad(n) * v.pad(n)


def poly_weights(p: Poly) -> set[int]:
    return {weight(m) for m in p.terms}


@lru_cache(maxsize=None)
def j_module(k: int, cap: int, nvars: int | None = None) -> GradedModule:
    """J(k) (zero for k < 0) with its monomial basis and Sq matrices."""
    nvars = j_nvars(max(k, 0)) if nvars is None else nvars
    if k < 0:
        return GradedModule(name=f"J({k})", cap=cap, nvars=nvars, top=-1)
    mons = weight_monomials(k, nvars)
    polys = {d: [Poly(nvars, [m]) for m in ms] for d, ms in mons.items() if d <= cap}
    labels = {d: list(ms) for d, ms in mons.items() if d <= cap}
    m = module_from_polys(f"J({k})", polys, cap, MILLER, labels=labels, top=k)
    m.nvars = nvars
    return m


# ---------------------------------------------------------------------------
# Minc sequences


def minc_sequences(k: int, cap: int | None = None) -> dict[int, list[tuple]]:
    """Ω_k by degree: 0 < i_1 ≤ 2i_2 ≤ ... ≤ 2^{k-1} i_k = 2^{k-1}."""
    out: dict[int, list[tuple]] = {}
    if k == 0:
        return {0: [()]}

    def rec(suffix: tuple, total: int):
        if len(suffix) == k:
            if cap is None or total <= cap:
                out.setdefault(total, []).append(suffix)
            return
        nxt = suffix[0]
        for i in range(1, 2 * nxt + 1):
            if cap is not None and total + i > cap:
                break
            rec((i,) + suffix, total + i)

    rec((1,), 1)
    for v in out.values():
        v.sort()
    return out


def is_minc(seq) -> bool:
    k = len(seq)
    if k == 0:
        return True
    if seq[-1] != 1 or seq[0] < 1:
        return False
    return all(seq[h] <= 2 * seq[h + 1] for h in range(k - 1))


def minc_to_monomial(seq) -> tuple:
    """α_0 = 2i_1 - 1, α_h = 2i_{h+1} - i_h."""
    k = len(seq)
    alpha = [2 * seq[0] - 1] + [2 * seq[h + 1] - seq[h] for h in range(k - 1)]
    return tuple(alpha)


def monomial_to_minc(alpha) -> tuple:
    """i_1 = α_0/2 + 1/2, i_{h+1} = α_h/2 + i_h/2; must give integers."""
    seq = []
    prev = Fraction(1)
    for a in alpha:
        cur = Fraction(a, 2) + prev / 2
        if cur.denominator != 1:
            raise ValueError(f"non-integral Minc entry from {alpha}")
        seq.append(int(cur))
        prev = cur
    return tuple(seq)


def minc_bijection(k: int, d: int) -> list[tuple[tuple, tuple]]:
    """Pairs (Minc sequence, monomial of J(2^k - 1)) in degree d, both directions checked."""
    seqs = minc_sequences(k).get(d, [])
    mons = weight_monomials((1 << k) - 1, max(1, k)).get(d, [])
    pairs = []
    for s in seqs:
        a = minc_to_monomial(s)
        if any(x < 0 for x in a) or weight(a) != (1 << k) - 1 or sum(a) != d:
            raise AssertionError(f"{s} maps outside J(2^{k}-1): {a}")
        if monomial_to_minc(a) != s:
            raise AssertionError(f"round trip failed at {s}")
        pairs.append((s, a))
    back = set()
    for a in mons:
        s = monomial_to_minc(a)
        if not is_minc(s) or sum(s) != d or minc_to_monomial(s) != a:
            raise AssertionError(f"{a} does not map back to a Minc sequence")
        back.add(s)
    if back != set(seqs):
        raise AssertionError("the two maps are not mutually inverse")
    return pairs


# ---------------------------------------------------------------------------
# π_s and g_s


def l1_module(cap: int) -> GradedModule:
    return build_steinberg("L", 1, cap)


@lru_cache(maxsize=None)
def pi_map(s: int, cap: int) -> GradedMap:
    """The unique nonzero A-linear map L_1 → J(2^s), normalized on x^{2^s}."""
    k = 1 << s
    work = max(cap, k)
    L1 = l1_module(work)
    J = j_module(k, work, s + 1)
    maps = hom_space(L1, J)
    if len(maps) != 1:
        raise AssertionError(f"expected a unique map L_1 → J({k}), found {len(maps)}")
    f = maps[0]
    if f.matrix(k).rows != (1,):
        raise AssertionError("the solved map does not hit the top class")
    mats = {d: m for d, m in f.mats.items() if d <= cap}
    return GradedMap(l1_module(cap) if cap < work else L1, j_module(k, cap, s + 1) if cap < work else J,
                     mats, name=f"π_{s}")


@lru_cache(maxsize=None)
def pi_value(s: int, a: int) -> Poly:
    """π_s(x^a) as a polynomial in t̂_0..t̂_s."""
    k = 1 << s
    if a < 1 or a > k:
        return Poly.zero(s + 1)
    f = pi_map(s, k)
    J = f.target
    col = f.matrix(a).cols[0] if J.dim(a) else 0
    out = Poly.zero(s + 1)
    for j, mono in enumerate(J.labels.get(a, [])):
        if col >> j & 1:
            out = out + Poly(s + 1, [mono])
    return out


def pi_closed_form(s: int, a: int) -> Poly:
    """Sum of all weight-2^s monomials of degree a (post-hoc comparison only)."""
    mons = weight_monomials(1 << s, s + 1).get(a, [])
    return Poly(s + 1, mons)


def g_value(exps) -> Poly:
    """g_s(x_1^{a_1} ⋯ x_s^{a_s}) = ∏_j π_{s-j}(x_j^{a_j}) in t̂_0..t̂_{s-1}."""
    s = len(exps)
    nv = max(1, s)
    out = Poly.one(nv)
    for j, a in enumerate(exps):
        p = pi_value(s - 1 - j, a)
        if not p:
            return Poly.zero(nv)
        out = out * p.pad(nv)
    return out


def tensor_power_l1(s: int, cap: int) -> GradedModule:
    """L_1^{⊗s} as the ideal (x_1⋯x_s) with monomial basis."""
    polys = {}
    labels = {}
    for d in range(s, cap + 1):
        ms = monomials_of_degree(s, d, 1)
        if ms:
            polys[d] = [Poly(s, [m]) for m in ms]
            labels[d] = list(ms)
    return module_from_polys(f"L_1^{s}", polys, cap, CLASSICAL, labels=labels)


@lru_cache(maxsize=None)
def g_map(s: int, cap: int) -> GradedMap:
    if s < 1:
        raise ValueError("s must be at least 1")
    src = tensor_power_l1(s, cap)
    tgt = j_module((1 << s) - 1, cap, s)
    mats = {}
    for d, labs in src.labels.items():
        tl = tgt.labels.get(d, [])
        pos = {m: i for i, m in enumerate(tl)}
        cols = []
        for a in labs:
            v = 0
            for m in g_value(a).terms:
                v |= 1 << pos[m]
            cols.append(v)
        mats[d] = GF2Matrix.from_columns(len(tl), cols)
    return GradedMap(src, tgt, mats, name=f"g_{s}")


# ---------------------------------------------------------------------------
# the presentation of J(2^n - 1)


def l2_relation(a: int, b: int) -> dict[tuple[int, int], int]:
    """Terms of x^a y^b ≡ Σ_{j=1}^{a-b-1} (C(b,j) + C(a-b,j)) x^{b+j} y^{a-j} (a > 2b > 0)."""
    out = {}
    for j in range(1, a - b):
        if (binom_mod2(b, j) + binom_mod2(a - b, j)) & 1:
            out[(b + j, a - j)] = 1
    return out


def is_admissible_tuple(a) -> bool:
    return is_minc(tuple(a))


def rewrite_admissible(a, n: int | None = None, max_steps: int = 1_000_000) -> set[tuple]:
    """Normal form of x^a modulo MP(1) + ... + MP(n) as a set of Minc tuples."""
    a = tuple(a)
    n = len(a) if n is None else n
    if len(a) != n or any(x < 1 for x in a):
        raise ValueError("exponents must be positive, one per variable")
    if sum(a) > (1 << n) - 1:
        return set()
    pending = {a: 1}
    done: dict[tuple, int] = {}
    steps = 0
    while pending:
        # always work on the lexicographically largest pending tuple
        t = max(pending)
        del pending[t]
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting did not terminate within the step guard")
        if t[-1] >= 2:
            continue
        viol = next((i for i in range(n - 1) if t[i] > 2 * t[i + 1]), None)
        if viol is None:
            done[t] = done.get(t, 0) ^ 1
            continue
        i = viol
        for (x, y) in l2_relation(t[i], t[i + 1]):
            u = t[:i] + (x, y) + t[i + 2:]
            pending[u] = pending.get(u, 0) ^ 1
            if not pending[u]:
                del pending[u]
    return {t for t, c in done.items() if c}


def _mp_relations(n: int, d: int, index: MonomialIndex) -> list[int]:
    rels = []
    for i in range(n - 1):
        for e2 in range(3, d - (n - 2) + 1):
            L2 = build_steinberg("L", 2, e2)
            for q in (L2.polys or {}).get(e2, []):
                for rest in monomials_of_degree(n - 2, d - e2, 1):
                    terms = []
                    for m in q.terms:
                        terms.append(tuple(rest[:i]) + m + tuple(rest[i:]))
                    rels.append(index.vector(Poly(n, terms)))
    for m in index.monomials:
        if m[-1] >= 2:
            rels.append(index.vector(Poly(n, [m])))
    return rels


def presentation_degree(n: int, d: int) -> dict:
    mons = monomials_of_degree(n, d, 1)
    index = MonomialIndex(mons)
    rels = _mp_relations(n, d, index)
    rel_rank = rank_of_rows(rels)
    J = weight_monomials((1 << n) - 1, n).get(d, [])
    jpos = {m: i for i, m in enumerate(J)}

    def g_vec(v: int) -> int:
        out = 0
        j = 0
        while v:
            if v & 1:
                for m in g_value(index.monomials[j]).terms:
                    out ^= 1 << jpos[m]
            v >>= 1
            j += 1
        return out

    gcols = [g_vec(1 << j) for j in range(len(mons))]
    g = GF2Matrix.from_columns(len(J), gcols)
    g_rank, _ = kernel_and_rank(g)
    rel_in_kernel = all(g_vec(r) == 0 for r in rels)
    quotient = len(mons) - rel_rank
    kernel_dim = len(mons) - g_rank
    ok = (quotient == len(J) and rel_in_kernel and kernel_dim == rel_rank and g_rank == len(J))
    return {"degree": d, "monomials": len(mons), "relation_rank": rel_rank,
            "quotient_dim": quotient, "j_dim": len(J), "g_rank": g_rank,
            "relations_in_kernel": rel_in_kernel, "pass": ok}


def presentation_check(n: int, parallel_map=map) -> dict:
    """L_1^{⊗n} / (MP(1) + ... + MP(n)) ≅ J(2^n - 1) via g_n, degree by degree."""
    if not 1 <= n <= 4:
        raise ValueError("presentation check supports 1 ≤ n ≤ 4")
    top = (1 << n) - 1
    rows = list(parallel_map(lambda d: presentation_degree(n, d), range(n, top + 1)))
    return {"n": n, "cap": top, "pass": all(r["pass"] for r in rows), "degrees": rows}


def basis_from_minc(s: int) -> dict:
    """Check that {g_s(x^I) : I ∈ Ω_s} is a basis of J(2^s - 1) degree by degree."""
    out = {}
    for d, seqs in minc_sequences(s).items():
        J = weight_monomials((1 << s) - 1, max(1, s)).get(d, [])
        pos = {m: i for i, m in enumerate(J)}
        vecs = []
        for I in seqs:
            v = 0
            for m in g_value(I).terms:
                v |= 1 << pos[m]
            vecs.append(v)
        out[d] = rank_of_rows(vecs) == len(J) == len(seqs)
    return out


# ---------------------------------------------------------------------------
# the twisted action and its projection


def _twisted_weight_class(m, n) -> int:
    return weight(m) % ((1 << n) - 1)


def campbell_selick_projection(p: Poly, n: int) -> Poly:
    """t-monomials of weight exactly 2^n - 1 are renamed into J(2^n - 1); the rest die."""
    target = (1 << n) - 1
    return Poly(n, [m for m in p.terms if weight(m) == target])


def campbell_selick_check(n: int, cap: int) -> dict:
    if not 1 <= n <= 3:
        raise ValueError("twisted check supports 1 ≤ n ≤ 3")
    classes_closed = True
    linear = True
    failures = []
    for d in range(cap + 1):
        for m in monomials_of_degree(n, d):
            p = Poly(n, [m])
            cls = _twisted_weight_class(m, n)
            proj = campbell_selick_projection(p, n)
            for k in range(1, cap - d + 1):
                img = twisted_sq(k, p, n)
                if any(_twisted_weight_class(t, n) != cls for t in img.terms):
                    classes_closed = False
                    failures.append({"kind": "class", "monomial": list(m), "k": k})
                lhs = campbell_selick_projection(img, n)
                rhs = miller_sq(k, proj)
                if lhs != rhs:
                    linear = False
                    failures.append({"kind": "linearity", "monomial": list(m), "k": k})
    return {"n": n, "cap": cap, "classes_closed": classes_closed, "projection_linear": linear,
            "pass": classes_closed and linear, "failures": failures[:10]}


# ---------------------------------------------------------------------------
# generator witnesses


def target_exponents(n: int) -> tuple:
    return tuple(1 << (n - 1 - i) for i in range(n))


def leading_monomial(p: Poly) -> tuple:
    return p.leading_monomial()


def is_admissible_monomial(m) -> bool:
    return all(m[s - 1] >= 2 * m[s] for s in range(1, len(m)))


def _divide_by_omega2(q: dict[tuple[int, int], int]) -> tuple[int, set]:
    """Write Q(x, y) = (xy(x+y))^q Q' with q maximal."""
    terms = set(q)
    count = 0
    while terms:
        if any(a == 0 or b == 0 for a, b in terms):
            break
        # divisibility by x + y: Q(x, x) = 0
        if not _vanishes_on_diagonal(terms):
            break
        reduced = {(a - 1, b - 1) for a, b in terms}
        terms = _divide_by_sum(reduced)
        count += 1
    return count, terms


def _vanishes_on_diagonal(terms) -> bool:
    acc: dict[int, int] = {}
    for a, b in terms:
        acc[a + b] = acc.get(a + b, 0) ^ 1
    return not any(acc.values())


def _divide_by_sum(terms: set) -> set:
    """Exact division of a binary form by x + y."""
    rem = set(terms)
    quo = set()
    while rem:
        a, b = max(rem)  # largest power of x
        if a == 0:
            raise ArithmeticError("not divisible by x + y")
        quo ^= {(a - 1, b)}
        for t in ((a, b), (a - 1, b + 1)):
            rem ^= {t}
    return quo


def lex_raise(P: Poly, n: int | None = None) -> MatrixN | None:
    """σ with m(σ·P) > m(P) when m(P) is not admissible, else None."""
    n = P.nvars if n is None else n
    if not P:
        raise ValueError("zero polynomial")
    m = P.leading_monomial()
    if is_admissible_monomial(m):
        return None
    s = next(s for s in range(1, n) if m[s - 1] < 2 * m[s])
    # group the monomials of P agreeing with m outside positions s-1, s
    key = m[: s - 1] + m[s + 1:]
    q = {(t[s - 1], t[s]): 1 for t in P.terms if t[: s - 1] + t[s + 1:] == key}
    _, rest = _divide_by_omega2(q)
    if any(a == 0 for a, b in rest):
        sigma = _swap(n, s - 1, s)
    else:
        sigma = transvection(n, s - 1, s)
    new = act(sigma, P)
    if not new or new.leading_monomial() <= m:
        raise AssertionError(f"lex_raise failed to increase the leading monomial of {P!r}")
    return sigma


def _swap(n: int, i: int, j: int) -> MatrixN:
    rows = [1 << k for k in range(n)]
    rows[i], rows[j] = 1 << j, 1 << i
    return MatrixN(n, rows)


def contains_target(P: Poly) -> bool:
    return target_exponents(P.nvars) in P.terms


def _shift_matrix(tau: MatrixN, n: int) -> MatrixN:
    """Embed a matrix on x_2..x_n into n×n, fixing x_1."""
    return tau.embed(n, 1)


def generator_witness(P: Poly) -> MatrixN:
    """σ in M_n(F_2) with x_1^{2^{n-1}} ⋯ x_{n-1}^2 x_n occurring in σ·P."""
    n = P.nvars
    if not P or not P.is_homogeneous() or P.degree() != (1 << n) - 1:
        raise ValueError(f"need a nonzero form of degree {(1 << n) - 1}")
    sigma = MatrixN.identity(n)
    cur = P
    guard = 0
    while True:
        step = lex_raise(cur, n)
        if step is None:
            break
        sigma = step @ sigma
        cur = act(step, cur)
        guard += 1
        if guard > 10_000:
            raise RuntimeError("lex raising did not stabilize")
    if n == 1:
        return sigma
    half = 1 << (n - 1)
    # after lex raising the x_1-exponent is maximal; some x_1 ↦ x_1 + u exposes
    # a nonzero coefficient of x_1^{half} to recurse on
    for u in range(1 << (n - 1)):
        # σ_u: x_1 ↦ x_1 + u with u a combination of x_2..x_n
        rows = [1 << i for i in range(n)]
        for j in range(1, n):
            if u >> (j - 1) & 1:
                rows[j] |= 1
        sigma_u = MatrixN(n, rows)
        moved = act(sigma_u, cur)
        Q = Poly(n - 1, [t[1:] for t in moved.terms if t[0] == half])
        if not Q:
            continue
        tau = generator_witness(Q)
        total = _shift_matrix(tau, n) @ sigma_u @ sigma
        if contains_target(act(total, P)):
            return total
        raise AssertionError("recursive witness did not produce the target monomial")
    raise AssertionError(f"no witness found for {P!r}")


def brute_force_witness(P: Poly) -> MatrixN | None:
    target = target_exponents(P.nvars)
    for sigma in MatrixN.all(P.nvars):
        if target in act(sigma, P).terms:
            return sigma
    return None


def random_form(n: int, degree: int, rng: random.Random) -> Poly:
    mons = monomials_of_degree(n, degree)
    while True:
        p = Poly(n, [m for m in mons if rng.getrandbits(1)])
        if p:
            return p


def witness_check(n: int, samples: int = 1000, brute: int = 100, seed: int = 0) -> dict:
    """Exhaustive (n ≤ 2) or random witness search with a brute-force cross-check."""
    deg = (1 << n) - 1
    mons = monomials_of_degree(n, deg)
    rng = random.Random(seed)
    failures = []
    checked = 0
    crossed = 0
    if n <= 2:
        polys = [Poly(n, [m for j, m in enumerate(mons) if mask >> j & 1])
                 for mask in range(1, 1 << len(mons))]
    else:
        polys = [random_form(n, deg, rng) for _ in range(samples)]
    for idx, P in enumerate(polys):
        sigma = generator_witness(P)
        checked += 1
        if not contains_target(act(sigma, P)):
            failures.append(P.to_json())
        if n <= 2 or idx < brute:
            crossed += 1
            if brute_force_witness(P) is None:
                failures.append({"brute_force_missing": P.to_json()})
    return {"n": n, "checked": checked, "brute_force_checked": crossed,
            "pass": not failures, "failures": failures[:5]}
