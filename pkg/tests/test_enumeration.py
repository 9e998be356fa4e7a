"""Exact path counting: recurrence table against the backtracking oracle."""

import json
import math

import pytest

from dyckarea.enumeration import (
    AreaPolynomial,
    brute_force_area_polynomial,
    build_area_polynomials,
    catalan_number,
    eval_G_truncated,
    partition_series,
    table_to_csv,
    table_to_json,
)
from dyckarea.errors import DivergenceError, DomainError, ResourceLimitError
from dyckarea.qseries import EvalSettings, g_cfrac

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012, 742900, 2674440]


class TestBruteForce:
    def test_empty_path(self):
        assert brute_force_area_polynomial(0).coeffs == (1,)

    def test_single_arch(self):
        assert brute_force_area_polynomial(1).coeffs == (1,)

    def test_two_arches(self):
        # udud has area 0, uudd encloses one square
        assert brute_force_area_polynomial(2).coeffs == (1, 1)

    def test_semilength_nine(self):
        row = brute_force_area_polynomial(9)
        assert row.total() == 4862
        assert row.coeffs[10] > 0  # the area-10 class is populated

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            brute_force_area_polynomial(15)

    def test_negative(self):
        with pytest.raises(DomainError):
            brute_force_area_polynomial(-1)


class TestRecurrenceTable:
    def test_small_rows_frozen(self):
        table = build_area_polynomials(4)
        assert table.row(0).coeffs == (1,)
        assert table.row(1).coeffs == (1,)
        assert table.row(2).coeffs == (1, 1)
        assert table.row(3).coeffs == (1, 2, 1, 1)
        assert table.row(4).coeffs == (1, 3, 3, 3, 2, 1, 1)

    def test_matches_oracle(self):
        table = build_area_polynomials(10)
        for n in range(11):
            assert table.row(n).coeffs == brute_force_area_polynomial(n).coeffs

    @pytest.mark.parametrize("n", range(13))
    def test_row_invariants(self, n):
        row = build_area_polynomials(12).row(n)
        assert row.total() == catalan_number(n) == CATALAN[n]
        assert row.coeffs[0] == 1
        assert row.coeffs[-1] == 1
        assert len(row.coeffs) == n * (n - 1) // 2 + 1

    def test_monotone_consistency(self):
        small = build_area_polynomials(8)
        large = build_area_polynomials(14)
        for n in range(9):
            assert small.row(n).coeffs == large.row(n).coeffs

    def test_area_cap_consistency(self):
        capped = build_area_polynomials(20, m_max=6)
        full = build_area_polynomials(20)
        for n in range(21):
            want = full.row(n).coeffs[:7]
            assert tuple(capped.row(n).coeffs)[: len(want)] == want

    def test_column_access(self):
        table = build_area_polynomials(9)
        assert table.column(0) == [1] * 10
        assert table.column(1) == [0, 0, 1, 2, 3, 4, 5, 6, 7, 8]

    def test_resource_cap_names_n(self):
        with pytest.raises(ResourceLimitError, match="201"):
            build_area_polynomials(201)

    def test_negative(self):
        with pytest.raises(DomainError):
            build_area_polynomials(-1)

    def test_row_length_validation(self):
        with pytest.raises(DomainError):
            AreaPolynomial(n=3, coeffs=(1, 2, 1))


@pytest.fixture(scope="module")
def table():
    return build_area_polynomials(40)


class TestPartitionSeries:
    def test_zero_area_geometric(self, table):
        res = partition_series(table, 0, 0.5)
        partial = sum(0.5**n for n in range(41))
        assert res.value == pytest.approx(partial, rel=1e-14)
        assert res.coefficients == tuple([1] * 41)

    def test_area_one_at_origin(self, table):
        assert partition_series(table, 1, 0.0).value == 0.0

    def test_area_one_column(self, table):
        res = partition_series(table, 1, 0.3)
        assert res.coefficients[:6] == (0, 0, 1, 2, 3, 4)
        # c[1][n] = n-1 sums to t^2/(1-t)^2
        assert res.value == pytest.approx(0.09 / 0.49, rel=1e-10)
        assert res.tail_ok

    def test_tail_flag(self, table):
        res = partition_series(table, 3, 0.9, tol=1e-12)
        assert not res.tail_ok
        assert res.tail_estimate > 0.0

    def test_domain(self, table):
        with pytest.raises(DomainError):
            partition_series(table, -1, 0.3)
        with pytest.raises(DomainError):
            partition_series(table, 10**6, 0.3)
        with pytest.raises(DomainError):
            partition_series(table, 2, 1.0)


class TestTruncatedG:
    def test_origin(self):
        assert eval_G_truncated(0.0, 0.7, 20) == 1.0

    def test_catalan_limit(self):
        value = eval_G_truncated(0.2, 1.0, 60)
        assert value == pytest.approx(1.3819660112501051, abs=1e-8)

    def test_cross_method(self):
        value = eval_G_truncated(0.2, 0.5, 60)
        assert value == pytest.approx(g_cfrac(0.2, EvalSettings(q=0.5)), abs=1e-10)

    @pytest.mark.parametrize("t", [0.15, 0.2, 0.24])
    def test_catalan_convergence(self, t):
        # truncation levels kept low enough that the error stays above the
        # double-precision floor at every t
        closed = (1.0 - math.sqrt(1.0 - 4.0 * t)) / (2.0 * t)
        errs = [abs(eval_G_truncated(t, 1.0, N) - closed) for N in (8, 16, 32)]
        assert errs[0] > errs[1] > errs[2]

    def test_divergence_detected(self):
        with pytest.raises(DivergenceError):
            eval_G_truncated(0.3, 1.0, 60)

    def test_domain(self):
        with pytest.raises(DomainError):
            eval_G_truncated(0.2, 1.5, 20)


class TestSerialization:
    def test_csv(self):
        text = table_to_csv(build_area_polynomials(3))
        lines = text.strip().splitlines()
        assert lines[0] == "n,m,c"
        assert lines[1] == "0,0,1"
        assert "3,1,2" in lines

    def test_json_decimal_strings(self):
        payload = json.loads(table_to_json(build_area_polynomials(4)))
        assert payload["n_max"] == 4
        assert payload["rows"][4] == ["1", "3", "3", "3", "2", "1", "1"]
        assert all(isinstance(c, str) for row in payload["rows"] for c in row)
