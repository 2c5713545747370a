"""Steenrod squares on polynomial algebras and graded modules built from them.

Every action here is multiplicative with a total square of the shape
St(v_i) = v_i + v_{p(i)}^2, so the whole action is described by the
predecessor map ``p``:

* classical action on F_2[x_1..x_n]: p(i) = i, i.e. St(x) = x + x^2;
* Miller's algebra J_* on t̂_0, t̂_1, ...: p(i) = i - 1 and p(0) = None;
* the twisted action on F_2[t_0..t_{n-1}]: p(i) = i - 1 and p(0) = n - 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .gf2 import (
    GF2Matrix,
    MonomialIndex,
    Poly,
    SpanSolver,
    _toggle,
    bit_subsets,
    kernel_and_rank,
    mono_key,
)

CLASSICAL = "classical"
MILLER = "miller"
TWISTED = "twisted"


def predecessors(action: str, nvars: int) -> tuple:
    if action == CLASSICAL:
        return tuple(range(nvars))
    if action == MILLER:
        return (None,) + tuple(range(nvars - 1))
    if action == TWISTED:
        return ((nvars - 1,) + tuple(range(nvars - 1))) if nvars else ()
    raise ValueError(f"unknown action {action!r}")


def _sq_monomial(k: int, m: tuple, pred: tuple, acc: set) -> None:
    n = len(m)
    # suffix sums bound how much degree the remaining variables can add
    room = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        room[i] = room[i + 1] + (m[i] if pred[i] is not None else 0)
    if k > room[0]:
        return
    out = list(m)

    def rec(i: int, left: int) -> None:
        if left == 0:
            _toggle(acc, tuple(out))
            return
        if i == n or left > room[i]:
            return
        p = pred[i]
        if p is None or m[i] == 0:
            rec(i + 1, left)
            return
        for b in bit_subsets(m[i]):
            if b > left:
                break
            out[i] -= b
            out[p] += 2 * b
            rec(i + 1, left - b)
            out[i] += b
            out[p] -= 2 * b

    rec(0, k)


def sq_general(k: int, f: Poly, pred: tuple) -> Poly:
    if k < 0:
        raise ValueError("negative square")
    if k == 0:
        return f
    acc: set = set()
    for m in f.terms:
        _sq_monomial(k, m, pred, acc)
    return Poly._raw(f.nvars, frozenset(acc))


def total_square_general(f: Poly, pred: tuple) -> dict[int, Poly]:
    """{k: Sq^k f} for all k with a nonzero value."""
    n = f.nvars
    acc: dict[int, set] = {}
    for m in f.terms:
        # per variable: list of (exponent deltas, degree increase)
        options = []
        for i, a in enumerate(m):
            p = pred[i]
            if p is None or a == 0:
                continue
            options.append([(i, p, b) for b in bit_subsets(a)])
        for combo in itertools.product(*options):
            e = list(m)
            k = 0
            for i, p, b in combo:
                e[i] -= b
                e[p] += 2 * b
                k += b
            _toggle(acc.setdefault(k, set()), tuple(e))
    return {k: Poly._raw(n, frozenset(s)) for k, s in sorted(acc.items()) if s}


def sq(k: int, f: Poly) -> Poly:
    """Classical Sq^k on F_2[x_1..x_n]."""
    return sq_general(k, f, tuple(range(f.nvars)))


def total_square(f: Poly) -> dict[int, Poly]:
    """St(f) split by degree increase: {k: Sq^k f}."""
    return total_square_general(f, tuple(range(f.nvars)))


def twisted_sq(k: int, f: Poly, n: int | None = None) -> Poly:
    """Sq^k for the twisted action St(t_i) = t_i + t_{i-1}^2, St(t_0) = t_0 + t_{n-1}^2."""
    n = f.nvars if n is None else n
    if n != f.nvars:
        raise ValueError(f"polynomial has {f.nvars} variables, expected {n}")
    return sq_general(k, f, predecessors(TWISTED, n))


def miller_sq(k: int, f: Poly) -> Poly:
    """Sq^k on Miller's algebra: St(t̂_i) = t̂_i + t̂_{i-1}^2, St(t̂_0) = t̂_0."""
    return sq_general(k, f, predecessors(MILLER, f.nvars))


def sq_for(action: str) -> Callable[[int, Poly], Poly]:
    if action == CLASSICAL:
        return sq
    if action == MILLER:
        return miller_sq
    if action == TWISTED:
        return twisted_sq
    raise ValueError(f"unknown action {action!r}")


def total_square_with_extra_variable(f: Poly) -> Poly:
    """St(f) with an auxiliary first variable x: x_i ↦ x·x_i + x_i^2.

    The result lives in ``f.nvars + 1`` variables, the new one first.
    """
    n = f.nvars
    acc: set = set()
    for m in f.terms:
        states = {(0,) + tuple(m): 1}
        for i, a in enumerate(m):
            if a == 0:
                continue
            nxt: dict = {}
            for mono in states:
                # (x x_i + x_i^2)^a = x_i^a Σ_{b⊆a} x^{a-b} x_i^{b}
                for b in bit_subsets(a):
                    e = list(mono)
                    e[0] += a - b
                    e[i + 1] += b
                    t = tuple(e)
                    nxt[t] = nxt.get(t, 0) ^ 1
            states = {t: 1 for t, c in nxt.items() if c}
        for t in states:
            _toggle(acc, t)
    return Poly._raw(n + 1, frozenset(acc))


# ---------------------------------------------------------------------------
# graded modules


def _zero_matrix(r: int, c: int) -> GF2Matrix:
    return GF2Matrix(r, c)


@dataclass
class GradedModule:
    """Per-degree ordered bases with the matrices of every Sq^k up to ``cap``.

    ``sq_mats[(k, d)]`` is the matrix of Sq^k from degree d to degree d + k
    (shape dim(d+k) × dim(d)); missing entries are zero.  ``top`` is the
    largest degree where the module can be nonzero if that is known (it may
    exceed ``cap``), otherwise None.
    """

    name: str
    cap: int
    labels: dict = field(default_factory=dict)
    sq_mats: dict = field(default_factory=dict)
    polys: dict | None = None
    nvars: int | None = None
    top: int | None = None

    def dim(self, d: int) -> int:
        return len(self.labels.get(d, ()))

    def dims(self) -> list[int]:
        return [self.dim(d) for d in range(self.cap + 1)]

    def degrees(self) -> list[int]:
        return [d for d in range(self.cap + 1) if self.dim(d)]

    def sq_matrix(self, k: int, d: int) -> GF2Matrix:
        if k < 0 or d + k > self.cap:
            raise ValueError(f"Sq^{k} out of degree {d} exceeds cap {self.cap}")
        if k == 0:
            return GF2Matrix.identity(self.dim(d))
        m = self.sq_mats.get((k, d))
        if m is None:
            return _zero_matrix(self.dim(d + k), self.dim(d))
        return m

    def check_instability(self) -> list[tuple[int, int]]:
        """(k, d) pairs where Sq^k is nonzero although k > d."""
        return [(k, d) for (k, d), m in self.sq_mats.items() if k > d and not m.is_zero()]

    def truncate(self, cap: int) -> "GradedModule":
        if cap > self.cap:
            raise ValueError(f"cannot raise cap from {self.cap} to {cap}")
        return GradedModule(
            name=self.name,
            cap=cap,
            labels={d: v for d, v in self.labels.items() if d <= cap},
            sq_mats={kd: m for kd, m in self.sq_mats.items() if kd[0] + kd[1] <= cap},
            polys=None if self.polys is None else {d: v for d, v in self.polys.items() if d <= cap},
            nvars=self.nvars,
            top=self.top,
        )

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "cap": self.cap,
            "top": self.top,
            "nvars": self.nvars,
            "labels": {str(d): [label_json(x) for x in v] for d, v in sorted(self.labels.items())},
            "sq": [{"k": k, "d": d, "matrix": m.to_json()} for (k, d), m in sorted(self.sq_mats.items())],
        }
        if self.polys is not None:
            out["polys"] = {str(d): [p.to_json() for p in v] for d, v in sorted(self.polys.items())}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GradedModule":
        nv = data.get("nvars")
        polys = None
        if "polys" in data:
            polys = {int(d): [Poly.from_json(nv, p) for p in v] for d, v in data["polys"].items()}
        return cls(
            name=data["name"],
            cap=data["cap"],
            top=data.get("top"),
            nvars=nv,
            labels={int(d): [label_from_json(x) for x in v] for d, v in data["labels"].items()},
            sq_mats={(e["k"], e["d"]): GF2Matrix.from_json(e["matrix"]) for e in data["sq"]},
            polys=polys,
        )


def label_json(x):
    if isinstance(x, tuple):
        return {"t": [label_json(y) for y in x]}
    return x


def label_from_json(x):
    if isinstance(x, dict):
        return tuple(label_from_json(y) for y in x["t"])
    return x


def zero_module(name: str, cap: int) -> GradedModule:
    return GradedModule(name=name, cap=cap, top=-1)


def module_from_polys(name: str, polys: dict[int, list[Poly]], cap: int,
                      action: str = CLASSICAL, labels: dict | None = None,
                      top: int | None = None) -> GradedModule:
    """Build a module from per-degree independent polynomials spanning an A-submodule.

    Raises ValueError if some Sq^k of a basis element leaves the span.
    """
    polys = {d: list(v) for d, v in polys.items() if v and d <= cap}
    nvars = None
    for v in polys.values():
        nvars = v[0].nvars
        break
    solvers = {}
    for d, ps in polys.items():
        idx = MonomialIndex(m for p in ps for m in p.terms)
        solver = SpanSolver()
        for p in ps:
            if not solver.add(idx.vector(p)):
                raise ValueError(f"{name}: basis in degree {d} is dependent")
        solvers[d] = (idx, solver)
    mats = {}
    pred = predecessors(action, nvars) if nvars is not None else ()
    for d, ps in polys.items():
        squares = [total_square_general(p, pred) for p in ps] if cap > d else []
        for k in range(1, cap - d + 1):
            images = [sqs.get(k, zero) for sqs in squares for zero in [Poly.zero(nvars)]]
            if not any(images):
                continue
            tgt = solvers.get(d + k)
            if tgt is None:
                raise ValueError(f"{name}: Sq^{k} leaves the module in degree {d + k}")
            idx, solver = tgt
            cols = []
            for img in images:
                v = idx.vector(img, strict=False)
                c = None if v is None else solver.coordinates(v)
                if c is None:
                    raise ValueError(f"{name}: Sq^{k} leaves the span in degree {d + k}")
                cols.append(c)
            mats[(k, d)] = GF2Matrix.from_columns(len(polys[d + k]), cols)
    if labels is None:
        labels = {d: list(range(len(v))) for d, v in polys.items()}
    return GradedModule(name=name, cap=cap, labels=labels, sq_mats=mats, polys=polys,
                        nvars=nvars, top=top)


def canonical_basis(polys: Sequence[Poly]) -> list[Poly]:
    """Reduced echelon basis of the span, leading monomials largest first."""
    if not polys:
        return []
    nv = polys[0].nvars
    mons = sorted({m for p in polys for m in p.terms}, key=mono_key, reverse=True)
    # bit 0 is the largest monomial so pivots by lowest bit are leading terms
    idx = MonomialIndex()
    idx.monomials = mons
    idx.pos = {m: i for i, m in enumerate(mons)}
    piv: dict[int, int] = {}
    for p in polys:
        v = idx.vector(p)
        while v:
            low = v & -v
            q = piv.get(low)
            if q is None:
                piv[low] = v
                break
            v ^= q
    order = sorted(piv)
    for low in order:
        r = piv[low]
        for other in order:
            if other != low and piv[other] & low:
                piv[other] ^= r
    return [idx.poly(nv, piv[low]) for low in order]


def close_under_action(generators: Sequence[Poly], cap: int, action: str = CLASSICAL,
                       name: str = "closure") -> GradedModule:
    """Smallest A-submodule (degrees ≤ cap) containing the generators."""
    gens = [g for g in generators if g]
    if not gens:
        return zero_module(name, cap)
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")
        if g.degree() > cap:
            raise ValueError(f"generator of degree {g.degree()} above cap {cap}")
    op = sq_for(action)
    found: dict[int, list[Poly]] = {}
    spans: dict[int, tuple[MonomialIndex, SpanSolver]] = {}
    queue = list(gens)
    while queue:
        p = queue.pop(0)
        d = p.degree()
        idx, solver = spans.setdefault(d, (MonomialIndex(), SpanSolver()))
        idx.extend(sorted(p.terms, key=mono_key))
        if not solver.add(idx.vector(p)):
            continue
        found.setdefault(d, []).append(p)
        for k in range(1, cap - d + 1):
            img = op(k, p)
            if img:
                queue.append(img)
    basis = {d: canonical_basis(v) for d, v in sorted(found.items())}
    return module_from_polys(name, basis, cap, action)


# ---------------------------------------------------------------------------
# maps


@dataclass
class GradedMap:
    """Degree-preserving (up to ``shift``) family of matrices between modules."""

    source: GradedModule
    target: GradedModule
    mats: dict = field(default_factory=dict)
    shift: int = 0
    name: str = ""

    @property
    def cap(self) -> int:
        return min(self.source.cap, self.target.cap - self.shift)

    def matrix(self, d: int) -> GF2Matrix:
        m = self.mats.get(d)
        if m is None:
            return GF2Matrix(self.target.dim(d + self.shift), self.source.dim(d))
        return m

    def rank(self, d: int) -> int:
        return kernel_and_rank(self.matrix(d))[0]

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())

    def commutation_failures(self) -> list[tuple[int, int]]:
        """(k, d) where Sq^k ∘ f ≠ f ∘ Sq^k."""
        bad = []
        cap = self.cap
        for d in range(cap + 1):
            if not self.source.dim(d):
                continue
            for k in range(1, cap - d + 1):
                lhs = self.matrix(d + k) @ self.source.sq_matrix(k, d)
                rhs = self.target.sq_matrix(k, d + self.shift) @ self.matrix(d)
                if lhs != rhs:
                    bad.append((k, d))
        return bad

    def compose(self, first: "GradedMap") -> "GradedMap":
        """self ∘ first."""
        mats = {}
        for d in range(min(first.cap, self.cap - first.shift) + 1):
            if first.source.dim(d):
                mats[d] = self.matrix(d + first.shift) @ first.matrix(d)
        return GradedMap(first.source, self.target, mats, first.shift + self.shift)

    def to_json(self) -> dict:
        return {"name": self.name, "shift": self.shift,
                "mats": {str(d): m.to_json() for d, m in sorted(self.mats.items())}}


def hom_space(M: GradedModule, N: GradedModule) -> list[GradedMap]:
    """Basis of the degree-0 A-linear maps M → N.

    N must be bounded (``N.top`` known) and both modules must reach its top
    degree; otherwise truncation could admit maps that do not extend.
    """
    if N.top is None:
        raise ValueError(f"target {N.name} is not known to be bounded; refusing truncated solve")
    top = N.top
    if M.cap < top or N.cap < top:
        raise ValueError(f"cap insufficient: need both caps ≥ {top} (have {M.cap}, {N.cap})")
    degs = [d for d in range(top + 1) if M.dim(d) and N.dim(d)]
    offset = {}
    n_unk = 0
    for d in degs:
        offset[d] = n_unk
        n_unk += M.dim(d) * N.dim(d)
    if n_unk == 0:
        return []
    eqs = []
    for d in range(top + 1):
        md = M.dim(d)
        if not md:
            continue
        for k in range(1, top - d + 1):
            e = d + k
            ne = N.dim(e)
            if not ne:
                continue
            SM = M.sq_matrix(k, d)
            SN = N.sq_matrix(k, d)
            me = M.dim(e)
            nd = N.dim(d)
            for r in range(ne):
                for c in range(md):
                    row = 0
                    if e in offset:
                        # Σ_j F_e[r, j] SM[j, c]
                        for j in range(me):
                            if SM.rows[j] >> c & 1:
                                row ^= 1 << (offset[e] + r * me + j)
                    if d in offset:
                        # Σ_j SN[r, j] F_d[j, c]
                        srow = SN.rows[r]
                        for j in range(nd):
                            if srow >> j & 1:
                                row ^= 1 << (offset[d] + j * md + c)
                    if row:
                        eqs.append(row)
    sys = GF2Matrix(len(eqs), n_unk, eqs)
    _, kern = kernel_and_rank(sys)
    maps = []
    for v in kern:
        mats = {}
        for d in degs:
            md, nd = M.dim(d), N.dim(d)
            rows = []
            for r in range(nd):
                bits = (v >> (offset[d] + r * md)) & ((1 << md) - 1)
                rows.append(bits)
            mats[d] = GF2Matrix(nd, md, rows)
        maps.append(GradedMap(M, N, mats))
    return maps


# ---------------------------------------------------------------------------
# tensor products and suspensions


def tensor(M: GradedModule, N: GradedModule, cap: int | None = None, name: str | None = None) -> GradedModule:
    """M ⊗ N with the Cartan formula; basis (a, b) ordered by source degree of a."""
    cap = min(M.cap, N.cap) if cap is None else cap
    if cap > M.cap or cap > N.cap:
        raise ValueError("tensor cap exceeds a factor cap")
    labels: dict[int, list] = {}
    pos: dict[int, dict] = {}
    for d in range(cap + 1):
        lab = []
        for i in range(d + 1):
            j = d - i
            for a in range(M.dim(i)):
                for b in range(N.dim(j)):
                    lab.append(((i, a), (j, b)))
        if lab:
            labels[d] = lab
            pos[d] = {x: p for p, x in enumerate(lab)}
    mats = {}
    for d, lab in labels.items():
        for k in range(1, cap - d + 1):
            tgt = pos.get(d + k)
            if tgt is None:
                continue
            cols = []
            nonzero = False
            cache = {}
            for (i, a), (j, b) in lab:
                col = 0
                for k1 in range(0, min(k, i) + 1):
                    k2 = k - k1
                    if k2 > j:
                        continue
                    key1 = (k1, i, a)
                    ca = cache.get(key1)
                    if ca is None:
                        ca = M.sq_matrix(k1, i).cols[a] if M.dim(i + k1) else 0
                        cache[key1] = ca
                    if not ca:
                        continue
                    key2 = (-1, k2, j, b)
                    cb = cache.get(key2)
                    if cb is None:
                        cb = N.sq_matrix(k2, j).cols[b] if N.dim(j + k2) else 0
                        cache[key2] = cb
                    if not cb:
                        continue
                    for x in _bits(ca):
                        for y in _bits(cb):
                            col ^= 1 << tgt[((i + k1, x), (j + k2, y))]
                cols.append(col)
                nonzero |= bool(col)
            if nonzero:
                mats[(k, d)] = GF2Matrix.from_columns(len(labels[d + k]), cols)
    top = None
    if M.top is not None and N.top is not None:
        top = M.top + N.top
    return GradedModule(name=name or f"{M.name}⊗{N.name}", cap=cap, labels=labels, sq_mats=mats, top=top)


def _bits(v: int) -> list[int]:
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


def suspension_class(degree: int, cap: int, name: str | None = None) -> GradedModule:
    """Σ^degree F_2: one class, all squares zero."""
    labels = {degree: ["ι"]} if 0 <= degree <= cap else {}
    return GradedModule(name=name or f"Σ^{degree}F2", cap=cap, labels=labels, top=degree)


def tensor_map(f: GradedMap, g: GradedMap, source: GradedModule, target: GradedModule) -> GradedMap:
    """f ⊗ g between tensor modules built by :func:`tensor`."""
    mats = {}
    for d, lab in source.labels.items():
        tgt_labels = target.labels.get(d + f.shift + g.shift)
        if not tgt_labels:
            continue
        tpos = {x: p for p, x in enumerate(tgt_labels)}
        cols = []
        for (i, a), (j, b) in lab:
            fa = f.matrix(i).cols[a] if f.target.dim(i + f.shift) else 0
            gb = g.matrix(j).cols[b] if g.target.dim(j + g.shift) else 0
            col = 0
            for x in _bits(fa):
                for y in _bits(gb):
                    col ^= 1 << tpos[((i + f.shift, x), (j + g.shift, y))]
            cols.append(col)
        mats[d] = GF2Matrix.from_columns(len(tgt_labels), cols)
    return GradedMap(source, target, mats, f.shift + g.shift)
