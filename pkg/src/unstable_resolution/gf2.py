"""Polynomials and dense linear algebra over GF(2).

Monomials are tuples of nonnegative exponents.  A :class:`Poly` is a set of
monomials with implicit coefficient 1, so addition is symmetric difference.
Matrices keep each row as a Python ``int`` used as a bitset (bit ``j`` of row
``i`` is entry ``(i, j)``), which gives word-level XOR for free.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

Monomial = tuple


def binom_mod2(a: int, b: int) -> int:
    """C(a, b) mod 2 by Lucas: odd iff the bits of b are a subset of those of a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return 1 if (a & b) == b else 0


def bit_subsets(a: int) -> list[int]:
    """All b with C(a, b) odd, i.e. the submasks of a, in increasing order."""
    out = []
    b = a
    while True:
        out.append(b)
        if b == 0:
            break
        b = (b - 1) & a
    out.reverse()
    return out


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_key(m: Monomial):
    """Global monomial order: by degree, then lex with x_1 most significant."""
    return (sum(m), m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _toggle(acc: set, m) -> None:
    if m in acc:
        acc.remove(m)
    else:
        acc.add(m)


class Poly:
    """A polynomial in ``nvars`` variables with coefficients in GF(2)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Iterable[Monomial] = ()):
        if nvars < 0:
            raise ValueError("variable count must be nonnegative")
        acc: set = set()
        for m in terms:
            m = tuple(m)
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} exponents")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            _toggle(acc, m)
        self.nvars = nvars
        self.terms = frozenset(acc)

    @classmethod
    def _raw(cls, nvars: int, terms) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms if isinstance(terms, frozenset) else frozenset(terms)
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, frozenset())

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, frozenset([(0,) * nvars]))

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        """The variable x_{i+1} (0-based index ``i``)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, frozenset([tuple(e)]))

    @classmethod
    def monomial(cls, exponents: Sequence[int]) -> "Poly":
        return cls(len(exponents), [tuple(exponents)])

    @classmethod
    def linear_form(cls, nvars: int, mask: int) -> "Poly":
        """Sum of the variables x_{j+1} with bit j of ``mask`` set."""
        terms = []
        for j in range(nvars):
            if mask >> j & 1:
                e = [0] * nvars
                e[j] = 1
                terms.append(tuple(e))
        return cls._raw(nvars, frozenset(terms))

    # -- basic protocol ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def __contains__(self, m) -> bool:
        return tuple(m) in self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other in (0, 1):
            other = Poly.zero(self.nvars) if other == 0 else Poly.one(self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, self.terms))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = [f"x{i + 1}" for i in range(self.nvars)]
        return " + ".join(format_monomial(m, names) for m in reversed(self.sorted_terms()))

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly._raw(self.nvars, self.terms ^ other.terms)

    __sub__ = __add__
    __radd__ = __add__

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars)
        small, big = sorted((self.terms, other.terms), key=len)
        acc: set = set()
        for a in small:
            for b in big:
                _toggle(acc, tuple(x + y for x, y in zip(a, b)))
        return Poly._raw(self.nvars, frozenset(acc))

    def square(self) -> "Poly":
        # Frobenius: (Σ m)^2 = Σ m^2 in characteristic 2.
        return Poly._raw(self.nvars, frozenset(tuple(2 * e for e in m) for m in self.terms))

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base.square()
        return result

    # -- structure --------------------------------------------------------

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=mono_key)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw(self.nvars, frozenset(m for m in self.terms if sum(m) == d))

    def components(self) -> dict[int, "Poly"]:
        parts: dict[int, set] = {}
        for m in self.terms:
            parts.setdefault(sum(m), set()).add(m)
        return {d: Poly._raw(self.nvars, frozenset(s)) for d, s in sorted(parts.items())}

    def leading_monomial(self) -> Monomial:
        """The lex-largest monomial (x_1 most significant)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms)

    def coefficients_in(self, i: int) -> dict[int, "Poly"]:
        """Write self = Σ_e c_e · x_{i+1}^e; returns {e: c_e} with x_{i+1} set to exponent 0."""
        parts: dict[int, set] = {}
        for m in self.terms:
            e = m[i]
            parts.setdefault(e, set()).add(m[:i] + (0,) + m[i + 1:])
        return {e: Poly._raw(self.nvars, frozenset(s)) for e, s in sorted(parts.items())}

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Rename variable j to variable ``positions[j]`` inside ``nvars`` variables."""
        if len(positions) != self.nvars:
            raise ValueError("one position per variable required")
        out = []
        for m in self.terms:
            e = [0] * nvars
            for j, p in enumerate(positions):
                e[p] += m[j]
            out.append(tuple(e))
        return Poly(nvars, out)

    def restrict(self, positions: Sequence[int]) -> "Poly":
        """Keep only the listed variables; requires the others to be absent."""
        keep = set(positions)
        out = []
        for m in self.terms:
            if any(e and j not in keep for j, e in enumerate(m)):
                raise ValueError("polynomial involves a dropped variable")
            out.append(tuple(m[j] for j in positions))
        return Poly._raw(len(positions), frozenset(out))

    def pad(self, nvars: int) -> "Poly":
        """Append unused variables (or drop trailing absent ones)."""
        if nvars == self.nvars:
            return self
        if nvars > self.nvars:
            extra = (0,) * (nvars - self.nvars)
            return Poly._raw(nvars, frozenset(m + extra for m in self.terms))
        return self.restrict(range(nvars))

    def to_json(self) -> list[list[int]]:
        return [list(m) for m in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, data) -> "Poly":
        return cls(nvars, [tuple(m) for m in data])


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def monomials_of_degree(nvars: int, d: int, min_exp: int = 0) -> list[Monomial]:
    """All exponent tuples of total degree ``d`` with every entry ≥ ``min_exp``, sorted."""
    rest = d - nvars * min_exp
    if rest < 0:
        return []
    if nvars == 0:
        return [()] if rest == 0 else []
    out = []
    for bars in itertools.combinations(range(rest + nvars - 1), nvars - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1 + min_exp)
            prev = b
        e.append(rest + nvars - 2 - prev + min_exp)
        out.append(tuple(e))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# dense matrices


class GF2Matrix:
    """A ``nrows × ncols`` matrix over GF(2); each row is an int bitset."""

    __slots__ = ("nrows", "ncols", "rows", "_cols")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [0] * nrows
        rows = tuple(rows)
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        limit = 1 << ncols
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits outside the column range")
        self.rows = rows
        self._cols = None

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "GF2Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence[int]) -> "GF2Matrix":
        rows = [0] * nrows
        for j, c in enumerate(cols):
            while c:
                low = c & -c
                i = low.bit_length() - 1
                rows[i] |= 1 << j
                c ^= low
        m = cls(nrows, len(cols), rows)
        m._cols = tuple(cols)
        return m

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> "GF2Matrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        rows = [sum((v & 1) << j for j, v in enumerate(r)) for r in data]
        return cls(nrows, ncols, rows)

    @property
    def cols(self) -> tuple[int, ...]:
        if self._cols is None:
            cols = [0] * self.ncols
            for i, r in enumerate(self.rows):
                while r:
                    low = r & -r
                    cols[low.bit_length() - 1] |= 1 << i
                    r ^= low
            self._cols = tuple(cols)
        return self._cols

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.rows[i] >> j & 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"GF2Matrix({self.nrows}x{self.ncols}, rank={rank(self)})"

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.ncols)] for r in self.rows]

    def is_zero(self) -> bool:
        return not any(self.rows)

    def transpose(self) -> "GF2Matrix":
        return GF2Matrix(self.ncols, self.nrows, self.cols)

    def __add__(self, other: "GF2Matrix") -> "GF2Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return GF2Matrix(self.nrows, self.ncols, [a ^ b for a, b in zip(self.rows, other.rows)])

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        orows = other.rows
        out = []
        for r in self.rows:
            acc = 0
            while r:
                low = r & -r
                acc ^= orows[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return GF2Matrix(self.nrows, other.ncols, out)

    def apply(self, v: int) -> int:
        """Matrix times the column vector whose bit j is coordinate j."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def select_columns(self, idx: Sequence[int]) -> "GF2Matrix":
        cols = self.cols
        return GF2Matrix.from_columns(self.nrows, [cols[j] for j in idx])

    def to_json(self) -> dict:
        width = max(1, (self.ncols + 3) // 4)
        return {"rows": self.nrows, "cols": self.ncols,
                "data": [format(r, f"0{width}x") for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "GF2Matrix":
        return cls(data["rows"], data["cols"], [int(h, 16) for h in data["data"]])


def _reduce_rows(rows: Iterable[int]) -> dict[int, int]:
    """Echelon form keyed by pivot (lowest set bit)."""
    piv: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            p = piv.get(low)
            if p is None:
                piv[low] = r
                break
            r ^= p
    return piv


def rank_of_rows(rows: Iterable[int]) -> int:
    return len(_reduce_rows(rows))


def rank(m: GF2Matrix) -> int:
    return rank_of_rows(m.rows if m.nrows <= m.ncols else m.cols)


def kernel_and_rank(m: GF2Matrix) -> tuple[int, list[int]]:
    """Rank and a basis of {v : m·v = 0}; vectors are ints with bit j = coordinate j."""
    piv = _reduce_rows(m.rows)
    # full back-substitution to reduced echelon form
    order = sorted(piv)
    for low in order:
        r = piv[low]
        for other in order:
            if other != low and piv[other] & low:
                piv[other] ^= r
    pivot_cols = {low.bit_length() - 1: piv[low] for low in order}
    kernel = []
    for f in range(m.ncols):
        if f in pivot_cols:
            continue
        v = 1 << f
        for p, r in pivot_cols.items():
            if r >> f & 1:
                v |= 1 << p
        kernel.append(v)
    return len(piv), kernel


def row_kernel(vectors: Sequence[int]) -> list[int]:
    """Basis of the relations {c : XOR_{i in c} vectors[i] = 0} (bit i of c selects vector i)."""
    piv: dict[int, tuple[int, int]] = {}
    rels = []
    for i, v in enumerate(vectors):
        combo = 1 << i
        while v:
            low = v & -v
            p = piv.get(low)
            if p is None:
                piv[low] = (v, combo)
                break
            v ^= p[0]
            combo ^= p[1]
        else:
            rels.append(combo)
    return rels


class SpanSolver:
    """Incremental row reduction that records which inputs combine into each pivot row.

    Vectors are ints.  ``add`` returns False for dependent vectors.
    ``coordinates`` expresses a vector in the added independent vectors.
    """

    def __init__(self, vectors: Iterable[int] = ()):
        self._piv: dict[int, tuple[int, int]] = {}
        self.count = 0
        self.independent: list[int] = []
        for v in vectors:
            self.add(v)

    def add(self, v: int) -> bool:
        idx = len(self.independent)
        red, combo = self._reduce(v)
        if not red:
            return False
        combo ^= 1 << idx
        self._piv[red & -red] = (red, combo)
        self.independent.append(v)
        return True

    def _reduce(self, v: int) -> tuple[int, int]:
        combo = 0
        piv = self._piv
        while v:
            low = v & -v
            p = piv.get(low)
            if p is None:
                return v, combo
            v ^= p[0]
            combo ^= p[1]
        return 0, combo

    def contains(self, v: int) -> bool:
        return self._reduce(v)[0] == 0

    def coordinates(self, v: int) -> int | None:
        red, combo = self._reduce(v)
        if red:
            return None
        return combo

    @property
    def rank(self) -> int:
        return len(self.independent)


# ---------------------------------------------------------------------------
# polynomials as vectors


class MonomialIndex:
    """Assigns bit positions to monomials, in the global monomial order."""

    def __init__(self, monomials: Iterable[Monomial] = ()):
        ms = sorted(set(monomials), key=mono_key)
        self.monomials: list[Monomial] = ms
        self.pos = {m: i for i, m in enumerate(ms)}

    def extend(self, monomials: Iterable[Monomial]) -> None:
        for m in monomials:
            if m not in self.pos:
                self.pos[m] = len(self.monomials)
                self.monomials.append(m)

    def vector(self, p: Poly, strict: bool = True) -> int | None:
        v = 0
        pos = self.pos
        for m in p.terms:
            i = pos.get(m)
            if i is None:
                if strict:
                    raise KeyError(m)
                return None
            v |= 1 << i
        return v

    def poly(self, nvars: int, v: int) -> Poly:
        out = []
        while v:
            low = v & -v
            out.append(self.monomials[low.bit_length() - 1])
            v ^= low
        return Poly._raw(nvars, frozenset(out))


def _check_homogeneous_family(polys: Sequence[Poly], target: Poly | None = None):
    allp = list(polys) + ([target] if target is not None else [])
    if not allp:
        return
    nv = allp[0].nvars
    degs = set()
    for p in allp:
        if p.nvars != nv:
            raise ValueError("variable count mismatch")
        if not p.is_homogeneous():
            raise ValueError(f"inhomogeneous polynomial: {p!r}")
        if p:
            degs.add(p.degree())
    if len(degs) > 1:
        raise ValueError(f"polynomials of different degrees: {sorted(degs)}")


def solve_in_span(spanning: Sequence[Poly], target: Poly) -> int | None:
    """Coordinates (bit i ↔ spanning[i]) of ``target`` in the span, or None.

    When ``spanning`` is dependent, one particular solution is returned.
    """
    _check_homogeneous_family(spanning, target)
    index = MonomialIndex(m for p in spanning for m in p.terms)
    tv = index.vector(target, strict=False)
    if tv is None:
        return None
    piv: dict[int, tuple[int, int]] = {}
    for i, p in enumerate(spanning):
        v = index.vector(p)
        combo = 1 << i
        while v:
            low = v & -v
            q = piv.get(low)
            if q is None:
                piv[low] = (v, combo)
                break
            v ^= q[0]
            combo ^= q[1]
    combo = 0
    while tv:
        low = tv & -tv
        q = piv.get(low)
        if q is None:
            return None
        tv ^= q[0]
        combo ^= q[1]
    return combo


def span_rank(polys: Sequence[Poly]) -> int:
    index = MonomialIndex(m for p in polys for m in p.terms)
    return rank_of_rows(index.vector(p) for p in polys)


def independent_subset(polys: Sequence[Poly]) -> list[int]:
    """Indices of a maximal independent subfamily, greedily from the front."""
    index = MonomialIndex(m for p in polys for m in p.terms)
    solver = SpanSolver()
    keep = []
    for i, p in enumerate(polys):
        if solver.add(index.vector(p)):
            keep.append(i)
    return keep


def intersect_spans(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Basis of span(a) ∩ span(b) for vectors encoded as ints."""
    # relations c over a ++ b: Σ c_a a_i = Σ c_b b_j gives a common vector
    rels = row_kernel(list(a) + list(b))
    out = []
    na = len(a)
    for c in rels:
        v = 0
        for i in range(na):
            if c >> i & 1:
                v ^= a[i]
        out.append(v)
    # prune dependencies (a itself may be dependent)
    solver = SpanSolver()
    return [v for v in out if v and solver.add(v)]


class GradedSubspace:
    """Per-degree bases of homogeneous polynomials in a fixed number of variables."""

    def __init__(self, nvars: int, cap: int, basis: dict[int, list[Poly]] | None = None):
        self.nvars = nvars
        self.cap = cap
        self.basis: dict[int, list[Poly]] = {}
        for d, ps in (basis or {}).items():
            if d > cap:
                raise ValueError(f"degree {d} above cap {cap}")
            _check_homogeneous_family(ps)
            if span_rank(ps) != len(ps):
                raise ValueError(f"degree {d} basis is linearly dependent")
            if ps:
                self.basis[d] = list(ps)

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def dims(self) -> list[int]:
        return [self.dim(d) for d in range(self.cap + 1)]
