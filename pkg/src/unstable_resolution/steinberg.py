"""Dickson and Mùi invariants and the Steinberg summands M_n, L_n, ω_n^j L_n.

A label (i_1, ..., i_n) with i_1 > 2i_2 > ... > 2^{n-1} i_n ≥ 0 names the
element e_n · ω_1^{i_1-2i_2} ⋯ ω_{n-1}^{i_{n-1}-2i_n} ω_n^{i_n} of degree
i_1 + ... + i_n.  Labels with i_n ≥ 1 span L_n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .gf2 import (
    MonomialIndex,
    Poly,
    SpanSolver,
    intersect_spans,
    monomials_of_degree,
    rank_of_rows,
)
from .matrix_algebra import MatrixN, act, permutation_matrices, steinberg_act, transvection
from .steenrod import CLASSICAL, GradedMap, GradedModule, module_from_polys, tensor

FLAVORS = ("M", "L", "Lprime", "omegaL", "dickson")


# ---------------------------------------------------------------------------
# invariants


@lru_cache(maxsize=None)
def omega(n: int, nvars: int | None = None) -> Poly:
    """Product of the 2^n - 1 nonzero linear forms in x_1..x_n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    nvars = n if nvars is None else nvars
    if nvars < n:
        raise ValueError("not enough variables")
    p = Poly.one(nvars)
    for mask in range(1, 1 << n):
        p = p * Poly.linear_form(nvars, mask)
    return p


@lru_cache(maxsize=None)
def moore_determinant(n: int) -> Poly:
    """det(x_j^{2^{i-1}}), the sign being irrelevant in characteristic 2."""
    terms = []
    for perm in itertools.permutations(range(n)):
        e = [0] * n
        for i, j in enumerate(perm):
            e[j] = 1 << i
        terms.append(tuple(e))
    return Poly(n, terms)


@lru_cache(maxsize=None)
def mui_V(k: int, n: int) -> Poly:
    """V_k = ∏_{λ} (λ_1 x_1 + ... + λ_{k-1} x_{k-1} + x_k) in n variables."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 ≤ k ≤ n, got k={k}, n={n}")
    p = Poly.one(n)
    top = 1 << (k - 1)
    for lam in range(top):
        p = p * Poly.linear_form(n, lam | top)
    return p


@lru_cache(maxsize=None)
def dickson_generators(n: int) -> tuple[Poly, ...]:
    """(Q_{n,0}, ..., Q_{n,n-1}) read off ∏_{v}(X + v·x) = X^{2^n} + Σ Q_{n,i} X^{2^i}."""
    if n < 1:
        raise ValueError("n must be at least 1")
    # X is the extra last variable
    prod = Poly.one(n + 1)
    for mask in range(1 << n):
        prod = prod * Poly.linear_form(n + 1, mask | (1 << n))
    coeffs = prod.coefficients_in(n)
    gens = []
    for i in range(n):
        c = coeffs.get(1 << i, Poly.zero(n + 1))
        gens.append(c.restrict(range(n)))
    # no other powers of X may appear
    expected = {1 << i for i in range(n + 1)}
    if set(coeffs) - expected:
        raise AssertionError("unexpected powers of X in the Dickson polynomial")
    return tuple(gens)


def dickson_Q(n: int, i: int) -> Poly:
    if not 0 <= i <= n - 1:
        raise IndexError(f"Dickson index {i} out of range for n={n}")
    return dickson_generators(n)[i]


def general_linear_generators(n: int) -> list[MatrixN]:
    """Permutations and one transvection; together they generate GL_n(F_2)."""
    gens = [m for m in permutation_matrices(n)]
    if n >= 2:
        gens.append(transvection(n, 0, 1))
    return gens


def is_gl_invariant(f: Poly) -> bool:
    return all(act(g, f) == f for g in general_linear_generators(f.nvars))


def total_square_identity(n: int) -> bool:
    """St(V_n(x_1..x_n)) = V_{n+1}(x, x_1, ..., x_n) with the auxiliary variable first."""
    from .steenrod import total_square_with_extra_variable

    return total_square_with_extra_variable(mui_V(n, n)) == mui_V(n + 1, n + 1)


# ---------------------------------------------------------------------------
# labels and basis polynomials


def label_degree(label) -> int:
    return sum(label)


def is_steinberg_label(label) -> bool:
    n = len(label)
    if any(i < 0 for i in label):
        return False
    return all(label[k] > 2 * label[k + 1] for k in range(n - 1))


def steinberg_labels(n: int, cap: int, min_last: int = 0) -> dict[int, list[tuple]]:
    """Labels by degree, each list in lexicographic order."""
    out: dict[int, list[tuple]] = {}
    if n == 0:
        if min_last <= 0 and cap >= 0:
            out[0] = [()]
        return out

    def rec(k: int, suffix: tuple, total: int):
        # choose i_k given i_{k+1} = suffix[0]
        lo = 2 * suffix[0] + 1 if suffix else min_last
        i = lo
        while total + i <= cap:
            # the remaining i_1..i_{k-1} add at least Σ (2^j·i + ...) > 0 when i > 0
            lab = (i,) + suffix
            if k == 1:
                out.setdefault(total + i, []).append(lab)
            else:
                need = sum((2 ** j) * i + (2 ** j - 1) for j in range(1, k))
                if total + i + need > cap:
                    break
                rec(k - 1, lab, total + i)
            i += 1

    rec(n, (), 0)
    for v in out.values():
        v.sort()
    return out


@lru_cache(maxsize=None)
def _omega_power(k: int, n: int, a: int) -> Poly:
    return omega(k, n) ** a


@lru_cache(maxsize=200_000)
def omega_monomial(label: tuple) -> Poly:
    """ω_1^{i_1-2i_2} ⋯ ω_n^{i_n} in n variables."""
    n = len(label)
    p = Poly.one(n)
    for k in range(n):
        a = label[k] - (2 * label[k + 1] if k + 1 < n else 0)
        if a:
            p = p * _omega_power(k + 1, n, a)
    return p


@lru_cache(maxsize=200_000)
def steinberg_element(label: tuple) -> Poly:
    """e_n · ω_1^{i_1-2i_2} ⋯ ω_n^{i_n}."""
    if not is_steinberg_label(label):
        raise ValueError(f"{label} is not an admissible Steinberg label")
    if not label:
        return Poly.one(0)
    return steinberg_act(omega_monomial(label))


# ---------------------------------------------------------------------------
# modules


@dataclass
class SteinbergModule(GradedModule):
    flavor: str = "M"
    n: int = 0
    power: int = 0
    extra: dict = field(default_factory=dict)


def _from(module: GradedModule, flavor: str, n: int, power: int = 0) -> SteinbergModule:
    return SteinbergModule(
        name=module.name, cap=module.cap, labels=module.labels, sq_mats=module.sq_mats,
        polys=module.polys, nvars=module.nvars, top=module.top,
        flavor=flavor, n=n, power=power,
    )


def _labelled_module(name: str, labels: dict, polys: dict, cap: int, n: int,
                     flavor: str, power: int = 0) -> SteinbergModule:
    if not polys:
        m = GradedModule(name=name, cap=cap, nvars=n)
    else:
        m = module_from_polys(name, polys, cap, CLASSICAL, labels=labels)
        m.nvars = n
    if n == 0:
        m.top = 0
    return _from(m, flavor, n, power)


@lru_cache(maxsize=64)
def build_steinberg(flavor: str, n: int, cap: int, power: int = 1) -> SteinbergModule:
    """M_n, L_n, L'_n = ω_n L_n or ω_n^power L_n with the labelled basis and Sq matrices.

    Raises ValueError if the labelled elements are dependent in some degree.
    """
    if flavor not in ("M", "L", "Lprime", "omegaL"):
        raise ValueError(f"unknown flavor {flavor!r}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n >= 4 and cap > 15:
        raise ValueError("Steinberg bases for n = 4 are limited to cap ≤ 15")
    if flavor == "M":
        labels = steinberg_labels(n, cap, 0)
        name = f"M_{n}"
        shift, j = 0, 0
    else:
        j = {"L": 0, "Lprime": 1, "omegaL": power}[flavor]
        shift = j * ((1 << n) - 1)
        labels = steinberg_labels(n, cap - shift, 1 if n else 0)
        name = {"L": f"L_{n}", "Lprime": f"L'_{n}", "omegaL": f"ω_{n}^{j}L_{n}"}[flavor]
    w = omega(n) ** j if j else None
    polys = {}
    out_labels = {}
    for d, labs in labels.items():
        ps = [steinberg_element(l) for l in labs]
        if w is not None:
            ps = [w * p for p in ps]
        polys[d + shift] = ps
        out_labels[d + shift] = list(labs)
    return _labelled_module(name, out_labels, polys, cap, n, flavor, j)


def dickson_exponents(n: int, i: int, cap: int) -> dict[int, list[tuple]]:
    degs = [(1 << n) - (1 << j) for j in range(n)]
    out: dict[int, list[tuple]] = {}

    def rec(j: int, exps: list, total: int):
        if j == n:
            out.setdefault(total, []).append(tuple(exps))
            return
        a = i if j == 0 else 0
        while total + a * degs[j] <= cap:
            rec(j + 1, exps + [a], total + a * degs[j])
            a += 1

    rec(0, [], 0)
    for v in out.values():
        v.sort()
    return out


@lru_cache(maxsize=64)
def dickson_module(n: int, i: int, cap: int) -> SteinbergModule:
    """The ideal D(n)·ω_n^i: basis Q_{n,0}^{a_0} ⋯ Q_{n,n-1}^{a_{n-1}} with a_0 ≥ i."""
    if not 1 <= n <= 3:
        raise ValueError("dickson_module supports 1 ≤ n ≤ 3")
    gens = dickson_generators(n)
    labels = dickson_exponents(n, i, cap)
    polys = {}
    for d, labs in labels.items():
        ps = []
        for a in labs:
            p = Poly.one(n)
            for g, e in zip(gens, a):
                if e:
                    p = p * g ** e
            ps.append(p)
        polys[d] = ps
    return _labelled_module(f"D({n})ω_{n}^{i}", labels, polys, cap, n, "dickson", i)


def steinberg_span_vectors(module: GradedModule, d: int, index: MonomialIndex) -> list[int]:
    return [index.vector(p) for p in (module.polys or {}).get(d, [])]


# ---------------------------------------------------------------------------
# the four descriptions of L_n


def _ideal_monomials(n: int, d: int) -> list[tuple]:
    return monomials_of_degree(n, d, 1)


def _mp_vectors(n: int, i: int, d: int, index: MonomialIndex) -> list[int]:
    """Spanning vectors of L_1^{⊗i-1} ⊗ L_2 ⊗ L_1^{⊗n-i-1} in degree d (i is 1-based)."""
    vecs = []
    l2_cache = {}
    for e2 in range(4, d - (n - 2) + 1):
        if e2 not in l2_cache:
            mod = build_steinberg("L", 2, e2)
            l2_cache[e2] = mod.polys.get(e2, [])
        pair = l2_cache[e2]
        if not pair:
            continue
        others = monomials_of_degree(n - 2, d - e2, 1)
        for rest in others:
            for q in pair:
                terms = []
                for m in q.terms:
                    e = list(rest[: i - 1]) + [m[0], m[1]] + list(rest[i - 1:])
                    terms.append(tuple(e))
                vecs.append(index.vector(Poly(n, terms)))
    return vecs


def verify_steinberg_characterizations(n: int, cap: int) -> dict:
    """Compare four subspaces of F_2[x_1..x_n] degree by degree.

    span: the labelled L_n basis; ideal: e_n applied to the ideal (x_1⋯x_n);
    omega: ω_n · M_n; intersection: ⋂_i L_1^{⊗i-1}⊗L_2⊗L_1^{⊗n-i-1}.
    For n = 2 the intersection is the single factor L_2 itself.
    """
    if n not in (2, 3):
        raise ValueError("characterization check supports n ∈ {2, 3}")
    L = build_steinberg("L", n, cap)
    w = omega(n)
    wdeg = (1 << n) - 1
    rows = []
    ok = True
    for d in range(cap + 1):
        index = MonomialIndex(_ideal_monomials(n, d))
        span = [index.vector(p) for p in (L.polys or {}).get(d, [])]
        ideal = []
        for m in _ideal_monomials(n, d):
            v = steinberg_act(Poly(n, [m]))
            if v:
                ideal.append(index.vector(v))
        om = []
        if d >= wdeg:
            for m in monomials_of_degree(n, d - wdeg):
                v = steinberg_act(Poly(n, [m]))
                if v:
                    om.append(index.vector(w * v))
        if n >= 2 and d >= 4 + (n - 2):
            inter = _mp_vectors(n, 1, d, index)
            for i in range(2, n):
                inter = intersect_spans(inter, _mp_vectors(n, i, d, index))
        else:
            inter = []
        ranks = {name: rank_of_rows(v) for name, v in
                 (("span", span), ("ideal", ideal), ("omega", om), ("intersection", inter))}
        union = rank_of_rows(span + ideal + om + inter)
        agree = len(set(ranks.values())) == 1 and union == ranks["span"]
        ok &= agree
        rows.append({"degree": d, **ranks, "union": union, "agree": agree})
    return {"n": n, "cap": cap, "pass": ok, "degrees": rows}


# ---------------------------------------------------------------------------
# coproduct and leading terms


def _split_coefficients(f: Poly, k: int) -> dict[tuple, Poly]:
    """Write f = Σ_β A_β(x_1..x_k) x''^β; returns β ↦ A_β in k variables."""
    parts: dict[tuple, set] = {}
    for m in f.terms:
        parts.setdefault(m[k:], set()).add(m[:k])
    return {b: Poly(k, a) for b, a in parts.items()}


class DegreeSolver:
    """Express polynomials of one degree in a module basis."""

    def __init__(self, polys):
        self.index = MonomialIndex(m for p in polys for m in p.terms)
        self.solver = SpanSolver(self.index.vector(p) for p in polys)
        if self.solver.rank != len(polys):
            raise ValueError("basis is dependent")

    def coordinates(self, p: Poly):
        v = self.index.vector(p, strict=False)
        if v is None:
            return None
        return self.solver.coordinates(v)


def degree_solvers(module: GradedModule) -> dict[int, DegreeSolver]:
    return {d: DegreeSolver(ps) for d, ps in (module.polys or {}).items() if ps}


def _bits(v: int):
    j = 0
    while v:
        if v & 1:
            yield j
        v >>= 1
        j += 1


def split_in_tensor_basis(f: Poly, k: int, left: dict, right: dict) -> dict[tuple, int] | None:
    """Coordinates of f in {P_p(x_1..x_k)·Q_q(x_{k+1}..x_n)}.

    ``left`` and ``right`` map degree to a DegreeSolver for the factor bases.
    Returns {((deg P, p), (deg Q, q)): 1} or None when f is not in the span.
    """
    n = f.nvars
    coeffs = _split_coefficients(f, k)
    # stage 1: each A_β in the left basis
    by_left: dict[tuple, set] = {}
    for beta, a in coeffs.items():
        da = a.degree()
        if da < 0:
            continue
        sol = left.get(da)
        if sol is None:
            return None
        c = sol.coordinates(a)
        if c is None:
            return None
        for p in _bits(c):
            by_left.setdefault((da, p), set()).add(beta)
    out = {}
    for (da, p), betas in by_left.items():
        q_poly = Poly(n - k, betas)
        dq = q_poly.degree()
        sol = right.get(dq)
        if sol is None:
            return None
        c = sol.coordinates(q_poly)
        if c is None:
            return None
        for q in _bits(c):
            out[((da, p), (dq, q))] = 1
    return out


def coproduct(n: int, k: int, cap: int) -> GradedMap:
    """δ: L_n → L_k ⊗ L_{n-k} as matrices in the labelled bases."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"split must satisfy 1 ≤ k ≤ n-1, got {k}")
    Ln = build_steinberg("L", n, cap)
    Lk = build_steinberg("L", k, cap)
    Lr = build_steinberg("L", n - k, cap)
    T = tensor(Lk, Lr, cap)
    left, right = degree_solvers(Lk), degree_solvers(Lr)
    mats = {}
    from .gf2 import GF2Matrix

    for d, ps in (Ln.polys or {}).items():
        tl = T.labels.get(d, [])
        pos = {x: i for i, x in enumerate(tl)}
        cols = []
        for f in ps:
            c = split_in_tensor_basis(f, k, left, right)
            if c is None:
                raise ValueError(f"element of degree {d} is not in L_{k} ⊗ L_{n - k}")
            v = 0
            for key in c:
                v |= 1 << pos[key]
            cols.append(v)
        mats[d] = GF2Matrix.from_columns(len(tl), cols)
    return GradedMap(Ln, T, mats, name=f"δ_{k},{n - k}")


def verify_leading_term(label: tuple) -> dict:
    """Expansion of a basis element in powers of the last variable.

    Checks: the lowest power of x_n is x_n^{i_n} with coefficient the
    (n-1)-variable element of label (i_1..i_{n-1}); every other coefficient
    lies in L_{n-1}.
    """
    n = len(label)
    if n < 2 or label[-1] <= 0 or not is_steinberg_label(label):
        raise ValueError("need an admissible label with n ≥ 2 and i_n > 0")
    f = steinberg_element(label)
    coeffs = f.coefficients_in(n - 1)
    low = min(coeffs)
    lead = coeffs[low].restrict(range(n - 1))
    lead_ok = low == label[-1] and lead == steinberg_element(label[:-1])
    cap = f.degree()
    L = build_steinberg("L", n - 1, cap)
    sols = degree_solvers(L)
    others_ok = True
    for e, c in coeffs.items():
        if e == low:
            continue
        c = c.restrict(range(n - 1))
        sol = sols.get(c.degree())
        if e <= label[-1] or sol is None or sol.coordinates(c) is None:
            others_ok = False
    return {"label": list(label), "lowest_power": low, "leading_ok": lead_ok,
            "higher_in_L": others_ok, "pass": lead_ok and others_ok}
