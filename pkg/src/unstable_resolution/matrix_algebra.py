"""The semigroup M_n(F_2), its algebra F_2[M_n(F_2)] and the action on polynomials.

A matrix is stored as a tuple of row bitmasks (bit j of row i is entry
(i, j)).  The action on F_2[x_1..x_n] substitutes x_i ↦ Σ_j σ_{j,i} x_j,
i.e. column i of σ gives the image of x_i.  With this convention
(στ)·f = σ·(τ·f).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .gf2 import Poly, _toggle, bit_subsets


class MatrixN:
    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int]):
        rows = tuple(rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} rows")
        if any(r < 0 or r >> n for r in rows):
            raise ValueError("row has bits outside the matrix")
        self.n = n
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "MatrixN":
        return cls(n, [1 << i for i in range(n)])

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> "MatrixN":
        n = len(data)
        return cls(n, [sum((v & 1) << j for j, v in enumerate(r)) for r in data])

    @classmethod
    def from_code(cls, n: int, code: int) -> "MatrixN":
        mask = (1 << n) - 1
        return cls(n, [(code >> (n * i)) & mask for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "MatrixN":
        return cls(len(entries), [(e & 1) << i for i, e in enumerate(entries)])

    @classmethod
    def all(cls, n: int) -> Iterable["MatrixN"]:
        for code in range(1 << (n * n)):
            yield cls.from_code(n, code)

    @property
    def code(self) -> int:
        return sum(r << (self.n * i) for i, r in enumerate(self.rows))

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def column(self, j: int) -> int:
        return sum((r >> j & 1) << i for i, r in enumerate(self.rows))

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def __matmul__(self, other: "MatrixN") -> "MatrixN":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return MatrixN(self.n, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixN) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __lt__(self, other: "MatrixN") -> bool:
        return self.code < other.code

    def __repr__(self) -> str:
        return "MatrixN(" + ";".join("".join(str(x) for x in r) for r in self.to_lists()) + ")"

    def is_invertible(self) -> bool:
        piv: dict[int, int] = {}
        for r in self.rows:
            while r:
                low = r & -r
                if low not in piv:
                    piv[low] = r
                    break
                r ^= piv[low]
            else:
                return False
        return True

    def embed(self, n: int, start: int) -> "MatrixN":
        """Place self as the block on coordinates start..start+self.n-1, identity elsewhere."""
        if start < 0 or start + self.n > n:
            raise IndexError(f"block of size {self.n} at {start} does not fit in {n}")
        rows = [1 << i for i in range(n)]
        for i, r in enumerate(self.rows):
            rows[start + i] = r << start
        return MatrixN(n, rows)


@lru_cache(maxsize=200_000)
def _form_power(n: int, mask: int, a: int) -> frozenset:
    """Terms of (Σ_{j in mask} x_j)^a."""
    var_idx = [j for j in range(n) if mask >> j & 1]
    result = {(0,) * n}
    bit = 0
    while a >> bit:
        if a >> bit & 1:
            e = 1 << bit
            acc: set = set()
            for m in result:
                for j in var_idx:
                    t = list(m)
                    t[j] += e
                    _toggle(acc, tuple(t))
            result = acc
        bit += 1
    return frozenset(result)


def _mul_terms(a, b) -> set:
    acc: set = set()
    for x in a:
        for y in b:
            _toggle(acc, tuple(p + q for p, q in zip(x, y)))
    return acc


def act(sigma: MatrixN, f: Poly) -> Poly:
    """σ·f: substitute x_i ↦ Σ_j σ_{j,i} x_j."""
    if sigma.n != f.nvars:
        raise ValueError(f"matrix of size {sigma.n} acting on {f.nvars} variables")
    n = sigma.n
    cols = [sigma.column(i) for i in range(n)]
    if all(c & (c - 1) == 0 and c for c in cols) and len(set(cols)) == n:
        # permutation: relabel exponents
        target = [c.bit_length() - 1 for c in cols]
        out = []
        for m in f.terms:
            e = [0] * n
            for i, a in enumerate(m):
                e[target[i]] += a
            out.append(tuple(e))
        return Poly._raw(n, frozenset(out))
    acc: set = set()
    for m in f.terms:
        if any(m[i] and not cols[i] for i in range(n)):
            continue
        terms = {(0,) * n}
        for i, a in enumerate(m):
            if a:
                terms = _mul_terms(terms, _form_power(n, cols[i], a))
                if not terms:
                    break
        for t in terms:
            _toggle(acc, t)
    return Poly._raw(n, frozenset(acc))


class AlgebraElement:
    """A mod-2 formal sum of n×n matrices."""

    __slots__ = ("n", "support")

    def __init__(self, n: int, support: Iterable = ()):
        acc: set = set()
        for s in support:
            code = s.code if isinstance(s, MatrixN) else int(s)
            if isinstance(s, MatrixN) and s.n != n:
                raise ValueError("dimension mismatch")
            _toggle(acc, code)
        self.n = n
        self.support = frozenset(acc)

    def matrices(self) -> list[MatrixN]:
        return [MatrixN.from_code(self.n, c) for c in sorted(self.support)]

    def __len__(self) -> int:
        return len(self.support)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.n == other.n and self.support == other.support

    def __hash__(self) -> int:
        return hash((self.n, self.support))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_n(self, other)
        e = AlgebraElement(self.n)
        e.support = self.support ^ other.support
        return e

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return alg_multiply(self, other)

    def __repr__(self) -> str:
        return f"AlgebraElement(n={self.n}, |support|={len(self.support)})"

    def to_json(self) -> dict:
        return {"n": self.n, "support": [list(m.rows) for m in self.matrices()]}

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraElement":
        n = data["n"]
        return cls(n, [MatrixN(n, r) for r in data["support"]])


def _same_n(u: AlgebraElement, v: AlgebraElement) -> None:
    if u.n != v.n:
        raise ValueError(f"dimension mismatch: {u.n} vs {v.n}")


def _product_codes(n: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Codes of all products A·B (A from a, B from b), shape (len(a), len(b))."""
    mask = (1 << n) - 1
    brows = [(b >> (n * j)) & mask for j in range(n)]
    out = np.zeros((len(a), len(b)), dtype=np.int64)
    for i in range(n):
        arow = (a >> (n * i)) & mask
        acc = np.zeros((len(a), len(b)), dtype=np.int64)
        for j in range(n):
            sel = ((arow >> j) & 1).astype(bool)
            if sel.any():
                acc[sel] ^= brows[j][None, :]
        out |= acc << (n * i)
    return out


def alg_multiply(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Product in F_2[M_n(F_2)]: all pairwise products, collected mod 2."""
    _same_n(u, v)
    n = u.n
    if not u.support or not v.support:
        return AlgebraElement(n)
    if n * n > 62:
        raise ValueError("matrices too large for packed products")
    a = np.array(sorted(u.support), dtype=np.int64)
    b = np.array(sorted(v.support), dtype=np.int64)
    counts: dict = {}
    # chunk the left factor to bound memory
    step = max(1, 4_000_000 // max(1, len(b)))
    parity = None
    for lo in range(0, len(a), step):
        codes = _product_codes(n, a[lo:lo + step], b).ravel()
        if n * n <= 20:
            c = np.bincount(codes, minlength=1 << (n * n))
            parity = c if parity is None else parity + c
        else:
            vals, cnt = np.unique(codes, return_counts=True)
            for x, k in zip(vals.tolist(), cnt.tolist()):
                counts[x] = counts.get(x, 0) + k
    out = AlgebraElement(n)
    if parity is not None:
        out.support = frozenset(np.nonzero(parity & 1)[0].tolist())
    else:
        out.support = frozenset(x for x, k in counts.items() if k & 1)
    return out


def alg_act(u: AlgebraElement, f: Poly) -> Poly:
    """Σ_{σ in support} σ·f."""
    if u.n != f.nvars:
        raise ValueError(f"algebra element of size {u.n} acting on {f.nvars} variables")
    acc: set = set()
    for sigma in u.matrices():
        for m in act(sigma, f).terms:
            _toggle(acc, m)
    return Poly._raw(u.n, frozenset(acc))


# ---------------------------------------------------------------------------
# Borel and permutation sums, the Steinberg idempotent


def upper_unitriangular(n: int) -> list[MatrixN]:
    """All invertible upper-triangular matrices over F_2 (unit diagonal)."""
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for bits in range(1 << len(slots)):
        rows = [1 << i for i in range(n)]
        for s, (i, j) in enumerate(slots):
            if bits >> s & 1:
                rows[i] |= 1 << j
        out.append(MatrixN(n, rows))
    return out


def permutation_matrix(perm: Sequence[int]) -> MatrixN:
    """Matrix with x_i ↦ x_{perm[i]}, i.e. column i is the unit vector perm[i]."""
    n = len(perm)
    rows = [0] * n
    for i, p in enumerate(perm):
        rows[p] |= 1 << i
    return MatrixN(n, rows)


def permutation_matrices(n: int) -> list[MatrixN]:
    return [permutation_matrix(p) for p in itertools.permutations(range(n))]


def borel_sum(n: int) -> AlgebraElement:
    return AlgebraElement(n, upper_unitriangular(n))


def permutation_sum(n: int) -> AlgebraElement:
    return AlgebraElement(n, permutation_matrices(n))


@lru_cache(maxsize=None)
def steinberg_idempotent(n: int) -> AlgebraElement:
    """e_n = B̄_n Σ̄_n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return alg_multiply(borel_sum(n), permutation_sum(n))


def transvection(n: int, i: int, j: int) -> MatrixN:
    """I + E_{ij}; acts by x_j ↦ x_j + x_i."""
    rows = [1 << k for k in range(n)]
    rows[i] |= 1 << j
    return MatrixN(n, rows)


def root_order(n: int) -> list[tuple[int, int]]:
    """Fixed order of the positive roots used to factor the Borel sum."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def borel_factorization(n: int) -> list[AlgebraElement]:
    """Factors I + T_ij whose product (in ``root_order``) equals the Borel sum."""
    ident = MatrixN.identity(n)
    return [AlgebraElement(n, [ident, transvection(n, i, j)]) for i, j in root_order(n)]


def _apply_root_factor(f: Poly, i: int, j: int) -> Poly:
    # (I + T_ij)·f = f + f(x_j ↦ x_j + x_i) = Σ over nonzero b ⊆ a_j of x_j^{a_j-b} x_i^b
    acc: set = set()
    for m in f.terms:
        a = m[j]
        if not a:
            continue
        for b in bit_subsets(a):
            if b == 0:
                continue
            e = list(m)
            e[j] -= b
            e[i] += b
            _toggle(acc, tuple(e))
    return Poly._raw(f.nvars, frozenset(acc))


def permutation_sum_act(f: Poly) -> Poly:
    n = f.nvars
    acc: set = set()
    for p in itertools.permutations(range(n)):
        for m in f.terms:
            e = [0] * n
            for i, a in enumerate(m):
                e[p[i]] += a
            _toggle(acc, tuple(e))
    return Poly._raw(n, frozenset(acc))


def borel_sum_act(f: Poly) -> Poly:
    g = f
    for i, j in reversed(root_order(f.nvars)):
        g = _apply_root_factor(g, i, j)
    return g


def steinberg_act(f: Poly) -> Poly:
    """e_n·f computed as B̄_n·(Σ̄_n·f) through the root factorization."""
    return borel_sum_act(permutation_sum_act(f))


def embedded_idempotent(kind: str, n: int, index: int | None = None) -> AlgebraElement:
    """Block-embedded relatives of the Steinberg idempotent.

    kind "e": e_index on the first ``index`` coordinates;
    kind "e2": e_2 on coordinates index, index+1 (1-based);
    kind "I": the projection diag(1, ..., 1, 0).
    """
    if kind == "e":
        if index is None or not 1 <= index <= n:
            raise IndexError(f"e_k needs 1 ≤ k ≤ {n}")
        return AlgebraElement(n, [m.embed(n, 0) for m in steinberg_idempotent(index).matrices()])
    if kind == "e2":
        if index is None or not 1 <= index <= n - 1:
            raise IndexError(f"e_(2,i) needs 1 ≤ i ≤ {n - 1}")
        return AlgebraElement(n, [m.embed(n, index - 1) for m in steinberg_idempotent(2).matrices()])
    if kind == "I":
        if n < 1:
            raise IndexError("n must be at least 1")
        return AlgebraElement(n, [MatrixN.diag([1] * (n - 1) + [0])])
    raise ValueError(f"unknown idempotent kind {kind!r}")


def longest_word(n: int) -> list[int]:
    """A reduced word for the longest permutation: (1..n-1)(1..n-2)...(1)."""
    return [i for top in range(n - 1, 0, -1) for i in range(1, top + 1)]


def verify_hecke(n: int) -> dict[str, bool]:
    """Idempotent and Hecke relations for e_n in F_2[M_n(F_2)]."""
    if not 2 <= n <= 4:
        raise ValueError("verify_hecke supports 2 ≤ n ≤ 4")
    e = steinberg_idempotent(n)
    out = {"idempotent": alg_multiply(e, e) == e}
    for i in range(1, n):
        e2 = embedded_idempotent("e2", n, i)
        out[f"absorbs_e2_{i}_right"] = alg_multiply(e, e2) == e
        out[f"absorbs_e2_{i}_left"] = alg_multiply(e2, e) == e
    prev = embedded_idempotent("e", n, n - 1)
    last = embedded_idempotent("e2", n, n - 1)
    out["factors_through_smaller"] = alg_multiply(alg_multiply(prev, last), prev) == e
    w = AlgebraElement(n, [MatrixN.identity(n)])
    for i in longest_word(n):
        w = alg_multiply(w, embedded_idempotent("e2", n, i))
    out["longest_word_product"] = w == e
    fac = AlgebraElement(n, [MatrixN.identity(n)])
    for factor in borel_factorization(n):
        fac = alg_multiply(fac, factor)
    out["borel_root_factorization"] = fac == borel_sum(n)
    return out
