from __future__ import annotations

import pytest

from unstable_resolution.series import (
    RationalForm,
    TruncSeries,
    andrews_check,
    dickson_sequence_series,
    dickson_series,
    ell,
    ell_prime,
    geometric,
    minc_agreement,
    mu,
    nu,
    reverse_chain,
    t_series,
    t_series_closed,
)


def test_truncated_arithmetic():
    a = TruncSeries.from_list([1, 2, 3], 4)
    assert a.to_list() == [1, 2, 3, 0, 0]
    assert (a * a).to_list() == [1, 4, 10, 12, 9]
    assert (a - a).is_zero()
    assert a.shift(3).to_list() == [0, 0, 0, 1, 2]
    assert a.frobenius().to_list() == [1, 0, 2, 0, 3]
    assert (geometric(2, 6) * TruncSeries.from_list([1, 0, -1], 6)) == TruncSeries.one(6)
    with pytest.raises(ValueError):
        a + TruncSeries.one(3)


def test_rational_form_expansion():
    # 1 / ((1 - q)(1 - q^2)) counts partitions into parts 1 and 2
    assert RationalForm(0, (1, 2)).expand(7).to_list() == [1, 1, 2, 2, 3, 3, 4, 4]
    with pytest.raises(ValueError):
        RationalForm(0, (0,)).expand(3)


def test_minc_partition_counts():
    assert nu(3, 7) == 1
    assert mu(2, 5).to_list() == [0, 0, 1, 1, 0, 0]
    assert mu(3, 8).to_list() == [0, 0, 0, 1, 2, 1, 1, 1, 0]
    assert mu(0, 3).to_list() == [1, 0, 0, 0]
    assert reverse_chain((1, 2, 4)) == (4, 2, 1)


def test_steinberg_series():
    assert ell(2, 7).to_list()[4:] == [1, 1, 1, 2]
    assert ell(0, 3) == TruncSeries.one(3)
    assert ell_prime(2, 11).to_list() == [0] * 7 + [1, 1, 1, 2, 2]


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_alternating_identity(n):
    result = andrews_check(n, 96)
    assert result["pass"]
    assert not any(result["residual"])


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_minc_counts_agree(k):
    assert minc_agreement(k)["pass"]


def test_t_series_closed_form_value():
    assert t_series_closed(2, 3, 7).to_list() == [0, 0, 0, 1, 1, 2, 2, 3]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_t_series_identities(n):
    for i in range(6):
        result = t_series(n, i, 64)
        assert result["pass"], (n, i)


def test_dickson_series_and_short_exact_sequence():
    # D(1) = F_2[x], D(1)·x = (x)
    assert dickson_series(1, 1, 4).to_list() == [0, 1, 1, 1, 1]
    assert dickson_series(0, 5, 3) == TruncSeries.one(3)
    for n in (1, 2, 3):
        for i in (1, 2, 3):
            assert dickson_sequence_series(n, i, 40)["pass"]
    assert dickson_sequence_series(2, 1, 30)["module_counts_agree"]
    with pytest.raises(ValueError):
        dickson_sequence_series(0, 1, 10)
