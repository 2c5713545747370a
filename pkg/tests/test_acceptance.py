"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from __future__ import annotations

import time

from unstable_resolution.brown_gitler import presentation_check, witness_check
from unstable_resolution.gf2 import span_rank
from unstable_resolution.matrix_algebra import verify_hecke
from unstable_resolution.properties import run_property_suite
from unstable_resolution.resolution import ext_u_table, takayasu_complex, verify_complex, verify_exactness
from unstable_resolution.series import (
    andrews_check,
    dickson_sequence_series,
    ell,
    minc_agreement,
    poincare,
    t_series,
)
from unstable_resolution.steinberg import build_steinberg, verify_steinberg_characterizations


def report(claim: str, ok: bool, start: float, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"{status} {claim} ({time.perf_counter() - start:.2f}s){' ' + detail if detail else ''}")
    assert ok, claim


def test_alternating_series_identity():
    start = time.perf_counter()
    results = [andrews_check(n, 128) for n in range(1, 6)]
    ok = all(r["pass"] and not any(r["residual"]) for r in results)
    report("andrews-identity n=1..5 cap=128", ok, start)


def test_minc_counts_and_brown_gitler_dimensions():
    start = time.perf_counter()
    ok = all(minc_agreement(k)["pass"] for k in range(1, 6))
    report("minc-brown-gitler-agreement k=1..5", ok, start)


def test_idempotent_and_hecke_identities():
    start = time.perf_counter()
    results = {n: verify_hecke(n) for n in (2, 3, 4)}
    bad = [f"n={n}:{k}" for n, r in results.items() for k, v in r.items() if not v]
    report("steinberg-idempotent-hecke n=2,3,4", not bad, start, " ".join(bad))


def test_steinberg_basis_dimensions():
    start = time.perf_counter()
    ok = True
    for n, cap in ((2, 16), (3, 24)):
        M = build_steinberg("M", n, cap)
        expected = (ell(n, cap) + ell(n - 1, cap)).to_list()
        ok &= poincare(M).to_list() == expected
        ok &= all(span_rank(M.polys[d]) == M.dim(d) for d in M.degrees())
    report("steinberg-basis-independent-and-dimensions n=2 cap=16, n=3 cap=24", ok, start)


def test_four_descriptions_of_steinberg_summand():
    start = time.perf_counter()
    results = [verify_steinberg_characterizations(2, 16), verify_steinberg_characterizations(3, 24)]
    report("steinberg-summand-characterizations n=2 cap=16, n=3 cap=24",
           all(r["pass"] for r in results), start)


def test_resolution_complex_and_exactness():
    start = time.perf_counter()
    ok = True
    for n, cap in ((1, 16), (2, 16), (3, 24)):
        cx = verify_complex(n, cap)
        ex = verify_exactness(n, cap)
        ok &= cx["pass"] and ex["pass"]
        ok &= all(r["pass"] for r in ex["rank_bound"])
        ok &= all(r["euler"] == 0 for r in ex["degrees"])
    report("resolution-complex-exact-rank-bound-euler n=1,2 cap=16, n=3 cap=24", ok, start)


def test_brown_gitler_presentation():
    start = time.perf_counter()
    results = [presentation_check(n) for n in (2, 3, 4)]
    report("brown-gitler-presentation n=2,3,4", all(r["pass"] for r in results), start)


def test_generator_witnesses():
    start = time.perf_counter()
    exhaustive = witness_check(2)
    sampled = witness_check(3, samples=1000, brute=100)
    ok = (exhaustive["pass"] and exhaustive["checked"] == 15
          and sampled["pass"] and sampled["checked"] == 1000 and sampled["brute_force_checked"] == 100)
    report("generator-witness n=2 exhaustive, n=3 1000 samples", ok, start,
           f"n2={exhaustive['checked']} n3={sampled['checked']}")


def test_takayasu_complex():
    start = time.perf_counter()
    results = [takayasu_complex(2, 16), takayasu_complex(3, 24)]
    report("takayasu-complex-exact-and-commuting n=2 cap=16, n=3 cap=24",
           all(r["pass"] for r in results), start)


def test_ext_table_is_degenerate():
    start = time.perf_counter()
    two = ext_u_table(2, 16)
    three = ext_u_table(3, 24)
    ok = (two["nonzero"] == [[2, 3, 1]] and three["nonzero"] == [[3, 7, 1]]
          and two["differentials_vanish"] and three["differentials_vanish"])
    report("ext-u-table n=2 t<=16, n=3 t<=24", ok, start,
           f"n2={two['nonzero']} n3={three['nonzero']}")


def test_dickson_and_t_series():
    start = time.perf_counter()
    ok = True
    for n in range(1, 5):
        for i in range(0, 9):
            r = t_series(n, i, 64)
            ok &= r["closed_equals_recursion"] and r["pass"]
            if n >= 2:
                ok &= r["frobenius_identity"] is True
    for i in range(1, 9):
        r = dickson_sequence_series(2, i, 64)
        ok &= r["pass"] and r["module_counts_agree"]
    report("t-series-recursion-frobenius-dickson-sequence n<=4 i<=8 cap=64", ok, start)


def test_steenrod_property_suite():
    start = time.perf_counter()
    r = run_property_suite(10_000)
    ok = r["pass"] and r["cases"] >= 10_000 and r["failures"] == 0
    report("steenrod-property-suite", ok, start, f"cases={r['cases']} failures={r['failures']}")
