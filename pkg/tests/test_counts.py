import math
import time
from fractions import Fraction
from types import SimpleNamespace

import pytest

from conftest import brute_dags, weakly_connected
from egcount import counts
from egcount.counts import (EdagCountProvider, ExactRatio, InternalInconsistency, NotCovered,
                            count_cdags, count_dags, count_edags, exact_cdag_dag_ratio,
                            read_edag_table, render_decimal, wright_conditions_report)
from egcount.known_values import EXACT_CDAG_DAG


def test_count_dags_examples():
    assert count_dags(1) == 1
    assert count_dags(3) == 25
    assert count_dags(4) == 543


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_counts_match_brute_force(n):
    dags = brute_dags(n)
    assert count_dags(n) == len(dags)
    assert count_cdags(n) == sum(weakly_connected(n, d) for d in dags)


def test_count_cdags_examples():
    assert [count_cdags(n) for n in (2, 3, 4)] == [2, 18, 446]


def test_cdag_recursion_is_integral_up_to_64():
    for n in range(1, 65):
        a = count_cdags(n)
        assert 0 < a <= count_dags(n)


def test_inexact_division_is_reported(monkeypatch):
    # k C(n,k)/n = C(n-1,k-1) makes the division exact for any integer input,
    # so only a broken binomial can trip the guard
    counts._dags.cache_clear()
    counts._cdags.cache_clear()
    monkeypatch.setattr(counts, "math", SimpleNamespace(comb=lambda n, k: math.comb(n, k) + 1))
    try:
        with pytest.raises(InternalInconsistency):
            counts._cdags(6)
    finally:
        monkeypatch.undo()
        counts._dags.cache_clear()
        counts._cdags.cache_clear()


def test_cdag_recursion_agrees_with_egf_logarithm():
    """a(x) = log A(x) as truncated power series with exact rationals."""
    N = 12
    A = [Fraction(count_dags(k) if k else 1, math.factorial(k)) for k in range(N + 1)]
    # log of a series with A[0] = 1: b_n = A_n - (1/n) sum_{k<n} k b_k A_{n-k}
    b = [Fraction(0)] * (N + 1)
    for m in range(1, N + 1):
        b[m] = A[m] - sum((k * b[k] * A[m - k] for k in range(1, m)), Fraction(0)) / m
    assert [b[k] * math.factorial(k) for k in range(1, N + 1)] == [count_cdags(k) for k in range(1, N + 1)]


def test_count_edags_examples():
    assert count_edags(2) == 1
    assert count_edags(3) == 4
    assert count_edags(4) == 59


def test_edag_counts_consistent_with_exact_ratios():
    # 0.36364 * 0.44000 * 25 = 4.0 and 0.31892 * 0.34070 * 543 = 59.0
    assert round(0.36364 * 0.44000 * 25) == count_edags(3)
    assert round(0.31892 * 0.34070 * 543) == count_edags(4)


def test_oracle_provider_and_coverage():
    p = EdagCountProvider.oracle()
    assert p.count(3) == 4
    assert not p.covers(6)
    with pytest.raises(NotCovered):
        p.count(6)
    with pytest.raises(NotCovered):
        count_edags(10)


def test_table_file_provider(tmp_path):
    path = tmp_path / "edags.csv"
    big = 10 ** 40 + 7
    path.write_text("n,count\n2,1\n3,4\n12," + str(big) + "\n")
    p = EdagCountProvider.from_file(path)
    assert p.count(12) == big
    assert p.count(3) == 4
    with pytest.raises(NotCovered):
        p.count(4)


def test_table_file_validated_against_oracle(tmp_path):
    path = tmp_path / "edags.csv"
    path.write_text("n,count\n4,60\n")
    with pytest.raises(ValueError, match="disagrees"):
        EdagCountProvider.from_file(path)


def test_table_file_header_required(tmp_path):
    path = tmp_path / "edags.csv"
    path.write_text("nodes,value\n2,1\n")
    with pytest.raises(ValueError):
        read_edag_table(path)


def test_shipped_table_is_oracle_checked():
    p = EdagCountProvider.default()
    assert [p.count(n) for n in range(1, 6)] == [1, 1, 4, 59, 2616]


def test_exact_ratio_examples():
    r = exact_cdag_dag_ratio(2)
    assert r == Fraction(2, 3)
    assert r.render() == "0.66667"
    assert exact_cdag_dag_ratio(5).render() == "0.90263"
    assert exact_cdag_dag_ratio(10).render() == "0.99708"


def test_exact_ratio_equality_is_cross_multiplication():
    assert ExactRatio(2, 4) == ExactRatio(1, 2)
    assert hash(ExactRatio(2, 4)) == hash(ExactRatio(1, 2))
    assert ExactRatio(1, 3) < ExactRatio(1, 2)
    with pytest.raises(ValueError):
        ExactRatio(1, 0)


@pytest.mark.parametrize("x, places, want", [
    (Fraction(1, 8), 2, "0.12"),   # tie goes to even
    (Fraction(3, 8), 2, "0.38"),
    (Fraction(2, 3), 5, "0.66667"),
    (Fraction(18, 25), 5, "0.72000"),
    (Fraction(1), 5, "1.00000"),
    (Fraction(5, 2), 0, "2"),
])
def test_render_half_even(x, places, want):
    assert render_decimal(x, places) == want


@pytest.mark.parametrize("n", range(2, 32))
def test_exact_column(n):
    assert exact_cdag_dag_ratio(n).render() == EXACT_CDAG_DAG[n]


def test_ratio_monotone_to_one():
    ratios = [exact_cdag_dag_ratio(n) for n in range(2, 32)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert 1 - ratios[-1].fraction < Fraction(1, 10 ** 5)


def test_wright_examples():
    rep = wright_conditions_report(4)
    row2 = rep.rows[0]
    assert row2.n == 2
    assert row2.log_growth == pytest.approx(math.log(1.5))
    assert row2.log_growth_bound == pytest.approx(0.0)
    assert row2.growth_exceeds_bound
    s1, s2 = rep.series
    assert s1.term == Fraction(2, 3) and s1.bound == 2
    assert s2.pair_ratio == Fraction(543, 9) and s2.pair_ratio_bound == 8


def test_wright_report_n31():
    rep = wright_conditions_report(31)
    assert [r.n for r in rep.rows] == list(range(2, 32))
    assert rep.rows[-1].log_convex is None
    assert all(r.log_convex for r in rep.rows[:-1])
    assert len(rep.series) == 15
    assert rep.ok
    for r in rep.rows:
        assert r.log_growth > r.log_growth_bound


def test_wright_bounds():
    with pytest.raises(ValueError):
        wright_conditions_report(1)
    with pytest.raises(ValueError):
        wright_conditions_report(41)


def test_recursions_are_fast():
    counts._dags.cache_clear()
    counts._cdags.cache_clear()
    start = time.perf_counter()
    count_cdags(64)
    assert time.perf_counter() - start < 1.0
