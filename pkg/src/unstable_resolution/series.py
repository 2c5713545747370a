"""Truncated integer power series and the generating-function identities.

Coefficients are Python ints, so nothing can overflow silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class TruncSeries:
    """c_0 + c_1 q + ... + c_cap q^cap."""

    coeffs: tuple
    cap: int

    def __post_init__(self):
        if len(self.coeffs) != self.cap + 1:
            raise ValueError("coefficient count must be cap + 1")

    @classmethod
    def zero(cls, cap: int) -> "TruncSeries":
        return cls((0,) * (cap + 1), cap)

    @classmethod
    def one(cls, cap: int) -> "TruncSeries":
        return cls.monomial(0, cap)

    @classmethod
    def monomial(cls, a: int, cap: int, c: int = 1) -> "TruncSeries":
        out = [0] * (cap + 1)
        if 0 <= a <= cap:
            out[a] = c
        return cls(tuple(out), cap)

    @classmethod
    def from_list(cls, values: Sequence[int], cap: int) -> "TruncSeries":
        out = [0] * (cap + 1)
        for i, v in enumerate(values[: cap + 1]):
            out[i] = int(v)
        return cls(tuple(out), cap)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i <= self.cap else 0

    def _check(self, other: "TruncSeries") -> None:
        if other.cap != self.cap:
            raise ValueError(f"cap mismatch: {self.cap} vs {other.cap}")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.cap)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(tuple(-a for a in self.coeffs), self.cap)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, int):
            return TruncSeries(tuple(other * a for a in self.coeffs), self.cap)
        self._check(other)
        out = [0] * (self.cap + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.cap + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncSeries(tuple(out), self.cap)

    __rmul__ = __mul__

    def shift(self, a: int) -> "TruncSeries":
        """q^a · self."""
        out = [0] * (self.cap + 1)
        for i, c in enumerate(self.coeffs):
            if 0 <= i + a <= self.cap:
                out[i + a] = c
        return TruncSeries(tuple(out), self.cap)

    def frobenius(self) -> "TruncSeries":
        """q ↦ q^2."""
        out = [0] * (self.cap + 1)
        for i, c in enumerate(self.coeffs):
            if 2 * i <= self.cap:
                out[2 * i] = c
        return TruncSeries(tuple(out), self.cap)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        parts = [f"{c}q^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) + f" + O(q^{self.cap + 1})" if parts else f"O(q^{self.cap + 1})"


def geometric(b: int, cap: int) -> TruncSeries:
    """1 / (1 - q^b)."""
    if b <= 0:
        raise ValueError("denominator exponent must be positive")
    out = [0] * (cap + 1)
    for i in range(0, cap + 1, b):
        out[i] = 1
    return TruncSeries(tuple(out), cap)


@dataclass(frozen=True)
class RationalForm:
    """q^a / ∏ (1 - q^{b_i})."""

    a: int
    denominators: tuple = ()

    def expand(self, cap: int) -> TruncSeries:
        # multiply by each geometric factor via the recurrence c_i += c_{i-b}
        out = [0] * (cap + 1)
        if self.a <= cap:
            out[self.a] = 1
        for b in self.denominators:
            if b <= 0:
                raise ValueError("denominator exponent must be positive")
            for i in range(b, cap + 1):
                out[i] += out[i - b]
        return TruncSeries(tuple(out), cap)

    def __mul__(self, other: "RationalForm") -> "RationalForm":
        return RationalForm(self.a + other.a, self.denominators + other.denominators)


def ell_form(m: int) -> RationalForm:
    """ℓ_m = ∏_{i=1}^m q^{2^i-1} / (1 - q^{2^i-1})."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    ds = tuple((1 << i) - 1 for i in range(1, m + 1))
    return RationalForm(sum(ds), ds)


def ell(m: int, cap: int) -> TruncSeries:
    return ell_form(m).expand(cap)


def ell_prime(m: int, cap: int) -> TruncSeries:
    return ell(m, cap).shift((1 << m) - 1)


def nu_tuples(m: int, cap: int | None = None):
    """Tuples (c_1..c_m), c_1 = 1, c_{j+1} ≤ 2 c_j, all ≥ 1, with sum ≤ cap."""
    if m == 0:
        yield ()
        return

    def rec(prefix: tuple, total: int):
        if len(prefix) == m:
            yield prefix
            return
        last = prefix[-1]
        for c in range(1, 2 * last + 1):
            if cap is not None and total + c > cap:
                break
            yield from rec(prefix + (c,), total + c)

    if cap is None or cap >= 1:
        yield from rec((1,), 1)


def nu(m: int, d: int) -> int:
    """Number of Minc partitions of d with m parts (direct enumeration)."""
    return sum(1 for t in nu_tuples(m, d) if sum(t) == d)


def mu(m: int, cap: int) -> TruncSeries:
    """μ_m = Σ_d ν(m, d) q^d (μ_0 = 1)."""
    out = [0] * (cap + 1)
    for t in nu_tuples(m, cap):
        out[sum(t)] += 1
    return TruncSeries(tuple(out), cap)


def reverse_chain(seq) -> tuple:
    """The one place where Minc tuples c_j and sequences in Ω_m are identified: c_j = i_{m+1-j}."""
    return tuple(reversed(seq))


def andrews_check(n: int, cap: int) -> dict:
    """q^{2^n-1} ℓ_n = Σ_{i=0}^n (-1)^i μ_i ℓ_{n-i}, and the alternating Poincaré sum."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    lhs = ell(n, cap).shift((1 << n) - 1)
    rhs = TruncSeries.zero(cap)
    for i in range(n + 1):
        term = mu(i, cap) * ell(n - i, cap)
        rhs = rhs + (term if i % 2 == 0 else -term)
    residual = lhs - rhs
    # -P(L'_n) + P(L_n) + Σ_{s≥1} (-1)^s P(L_{n-s} ⊗ J(2^s - 1))
    alt = -ell_prime(n, cap) + ell(n, cap)
    for s in range(1, n + 1):
        term = ell(n - s, cap) * mu(s, cap)
        alt = alt + (term if s % 2 == 0 else -term)
    return {"n": n, "cap": cap, "residual": residual.to_list(), "alternating": alt.to_list(),
            "pass": residual.is_zero() and alt.is_zero()}


def poincare(module) -> TruncSeries:
    return TruncSeries(tuple(module.dims()), module.cap)


# ---------------------------------------------------------------------------
# Dickson algebras and the T-functor shadows


def dickson_form(n: int, i: int = 0) -> RationalForm:
    """P(D(n) ω_n^i) = q^{i(2^n-1)} / ∏_{j<n} (1 - q^{2^n - 2^j})."""
    return RationalForm(i * ((1 << n) - 1), tuple((1 << n) - (1 << j) for j in range(n)))


def dickson_series(n: int, i: int, cap: int) -> TruncSeries:
    if n == 0:
        # D(0) = F_2 and ω_0 = 1
        return TruncSeries.one(cap)
    return dickson_form(n, i).expand(cap)


def dickson_sequence_series(n: int, i: int, cap: int, modules: bool | None = None) -> dict:
    """P(D(n)ω_n^i) + q^{i-1} P(D(n-1)ω_{n-1}^{i-1})(q^2) = P(D(n)ω_n^{i-1}).

    For n ≤ 2 the series are also compared with counts of enumerated Dickson
    monomial bases.
    """
    if n < 1 or i < 1:
        raise ValueError("need n, i ≥ 1")
    sub = dickson_series(n, i, cap)
    quo = dickson_series(n - 1, i - 1, cap).frobenius().shift(i - 1)
    whole = dickson_series(n, i - 1, cap)
    residual = sub + quo - whole
    out = {"n": n, "i": i, "cap": cap, "residual": residual.to_list(), "pass": residual.is_zero()}
    if modules is None:
        modules = n <= 2
    if modules:
        from .steinberg import dickson_exponents

        def counted(j: int) -> TruncSeries:
            out = [0] * (cap + 1)
            for d, exps in dickson_exponents(n, j, cap).items():
                out[d] = len(exps)
            return TruncSeries(tuple(out), cap)

        agree = counted(i) == sub and counted(i - 1) == whole
        out["module_counts_agree"] = agree
        out["pass"] = out["pass"] and agree
    return out


def minc_agreement(k: int, cap: int | None = None) -> dict:
    """ν-enumeration, Ω_k-enumeration and the J(2^k - 1) basis give the same series."""
    from .brown_gitler import j_module, minc_sequences

    cap = (1 << k) - 1 if cap is None else cap
    by_nu = mu(k, cap)
    omega = [0] * (cap + 1)
    for d, seqs in minc_sequences(k, cap).items():
        omega[d] = len(seqs)
    by_omega = TruncSeries.from_list(omega, cap)
    by_j = poincare(j_module((1 << k) - 1, cap))
    ok = by_nu == by_omega == by_j
    return {"k": k, "cap": cap, "series": by_nu.to_list(), "pass": ok}


def t_series_closed(n: int, i: int, cap: int) -> TruncSeries:
    """P_{n,i} = t^{(2^{n-1}-1) i} / ((1-t^{2^{n-1}-1}) ⋯ (1-t^{2^{n-1}-2^{n-2}})(1-t^{2^{n-1}}))."""
    if n < 1:
        raise ValueError("n must be at least 1")
    h = 1 << (n - 1)
    dens = tuple(h - (1 << j) for j in range(n - 1)) + (h,)
    return RationalForm((h - 1) * i, dens).expand(cap)


def t_series_recursive(n: int, i: int, cap: int) -> TruncSeries:
    """P_{n,i} = P_{n,i-1} - t^{i-1} P_{n-1,i-1}(t^2), seeded by the closed form at i = 0.

    P_{0,·} = 0 so that P_{1,i} = P_{1,0}.
    """
    if i == 0:
        return t_series_closed(n, 0, cap)
    prev = t_series_recursive(n, i - 1, cap)
    lower = t_series_closed(n - 1, i - 1, cap) if n >= 2 else TruncSeries.zero(cap)
    return prev - lower.frobenius().shift(i - 1)


def t_series(n: int, i: int, cap: int) -> dict:
    closed = t_series_closed(n, i, cap)
    rec = t_series_recursive(n, i, cap)
    base_ok = closed == t_series_closed(n, 0, cap).shift(((1 << (n - 1)) - 1) * i)
    eq2 = None
    if n >= 2:
        lhs = t_series_closed(n - 1, 0, cap).frobenius()
        rhs = t_series_closed(n, 0, cap) - t_series_closed(n, 0, cap).shift((1 << (n - 1)) - 1)
        eq2 = (lhs - rhs).is_zero()
    ok = closed == rec and base_ok and eq2 is not False
    return {"n": n, "i": i, "cap": cap, "closed_equals_recursion": closed == rec,
            "shift_form": base_ok, "frobenius_identity": eq2, "pass": ok,
            "series": closed.to_list()}
