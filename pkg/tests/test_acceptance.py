"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]``/``[SKIP]`` line; run with
``pytest tests/test_acceptance.py -s`` to see them next to pytest's own
report. Criterion 9, and the full-size run of criterion 10, need
``EG_PAPER_SCALE=1`` (plus ``EG_EDAG_TABLE`` for criterion 9).
"""

import math
import os
import time
import warnings
from fractions import Fraction
from functools import lru_cache

import pytest

from egcount import counts, oracle
from egcount.counts import (EdagCountProvider, count_cdags, count_dags, exact_cdag_dag_ratio,
                            render_decimal, wright_conditions_report)
from egcount.estimator import estimate, records_from_graphs
from egcount.graph import canonical_key
from egcount.mcmc import ChainConfig, default_threads, kernel_is_symmetric, kernel_support_bfs, run_ensemble
from egcount.oracle import census, enumerate_egs
from egcount.verify import uniformity_check

PAPER_SCALE = os.environ.get("EG_PAPER_SCALE") == "1"


def verdict(capsys, num, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    assert ok, detail


def skipped(capsys, num, why):
    with capsys.disabled():
        print(f"\n[SKIP] criterion {num}: {why}")
    pytest.skip(why)


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def test_criterion_01_exact_count_parity(capsys):
    counts._dags.cache_clear()
    counts._cdags.cache_clear()
    oracle._classes.cache_clear()
    _, t_rec = timed(lambda: [count_cdags(n) for n in range(1, 65)])
    cen, t_census = timed(lambda: [census(n) for n in range(1, 6)])
    ok = [count_dags(n) for n in range(1, 6)] == [1, 3, 25, 543, 29281]
    ok &= all(c.n_dags == count_dags(c.n) and c.n_cdags == count_cdags(c.n) for c in cen)
    ok &= [c.n_cdags for c in cen[:4]] == [1, 2, 18, 446]
    # the connected-DAG numerator is divisible by n for every n up to 64
    for n in range(1, 65):
        num = sum(k * math.comb(n, k) * count_cdags(k) * count_dags(n - k) for k in range(1, n))
        ok &= num % n == 0 and count_cdags(n) == count_dags(n) - num // n
    ok &= t_rec < 1 and t_census < 60
    verdict(capsys, 1, ok, f"CDAGs n=5 {cen[4].n_cdags}; recursions {t_rec:.3f}s, census n<=5 {t_census:.1f}s")


CDAG_DAG_COLUMN = ["0.66667", "0.72000", "0.82136", "0.90263", "0.95115", "0.97605", "0.98821",
                   "0.99415", "0.99708", "0.99854", "0.99927", "0.99964", "0.99982", "0.99991",
                   "0.99995", "0.99998", "0.99999", "0.99999"] + ["1.00000"] * 12


def test_criterion_02_cdag_dag_column(capsys):
    counts._dags.cache_clear()
    counts._cdags.cache_clear()
    got, t = timed(lambda: [exact_cdag_dag_ratio(n).render() for n in range(2, 32)])
    bad = [(n, g, w) for n, g, w in zip(range(2, 32), got, CDAG_DAG_COLUMN) if g != w]
    verdict(capsys, 2, not bad and t < 1, f"n=2..31 rendered; mismatches {bad}; {t:.3f}s")


EXACT_EG_COLUMNS = {2: ("0.66667", "0.50000"), 3: ("0.44000", "0.36364"),
                    4: ("0.34070", "0.31892"), 5: ("0.29992", "0.29788")}


def test_criterion_03_census_ratios(capsys):
    oracle._classes.cache_clear()
    got, t = timed(lambda: {n: (render_decimal(Fraction(census(n).n_egs, census(n).n_dags)),
                                render_decimal(Fraction(census(n).n_edags, census(n).n_egs)))
                            for n in EXACT_EG_COLUMNS})
    verdict(capsys, 3, got == EXACT_EG_COLUMNS and t < 60, f"{got} in {t:.1f}s")


def test_criterion_04_ratio_tends_to_one(capsys):
    start = time.perf_counter()
    ratios = [exact_cdag_dag_ratio(n).fraction for n in range(2, 32)]
    gap = 1 - ratios[-1]
    increasing = all(a < b for a, b in zip(ratios, ratios[1:]))
    t = time.perf_counter() - start
    verdict(capsys, 4, gap < Fraction(1, 10 ** 5) and increasing and t < 1,
            f"1 - ratio(31) = {float(gap):.3e}, increasing={increasing}, {t:.3f}s")


def test_criterion_05_wright_conditions(capsys):
    rep, t = timed(wright_conditions_report, 31)
    growth = all(r.growth_exceeds_bound for r in rep.rows) and [r.n for r in rep.rows] == list(range(2, 32))
    convex = all(r.log_convex for r in rep.rows if r.n <= 30)
    terms = [s.k for s in rep.series] == list(range(1, 16)) and all(s.term_ok for s in rep.series)
    pairs = all(s.pair_ok for s in rep.series)
    # re-derive (iii) straight from the integer counts
    for k in range(1, 16):
        a_k, a_2k = count_dags(k), count_dags(2 * k)
        terms &= a_k ** 2 * math.factorial(2 * k) * k ** 3 <= (4 * k - 2) * a_2k * math.factorial(k) ** 2
        pairs &= a_2k >= k * k * math.comb(2 * k - 2, k - 1) * a_k ** 2
    verdict(capsys, 5, growth and convex and terms and pairs and t < 5,
            f"(i)={growth} (ii)={convex} (iii) terms={terms} pairs={pairs}; {t:.3f}s")


def test_criterion_06_kernel(capsys):
    start = time.perf_counter()
    sizes = [len(kernel_support_bfs(n)) for n in (2, 3, 4)]
    exact = all(kernel_support_bfs(n) == {canonical_key(g) for g in enumerate_egs(n)} for n in (2, 3, 4))
    sym = all(kernel_is_symmetric(n, enumerate_egs(n)) for n in (2, 3))
    t = time.perf_counter() - start
    verdict(capsys, 6, sizes == [2, 11, 185] and exact and sym and t < 300,
            f"reached {sizes}, symmetric={sym}, {t:.1f}s")


def test_criterion_07_uniformity(capsys):
    (tv, p, total, stray), t = timed(uniformity_check, 3, 2_000_000, 200, 10_000, 0)
    verdict(capsys, 7, tv < 0.02 and p > 0.001 and stray == 0 and t < 300,
            f"TV={tv:.4f}, chi-square p={p:.4f}, {total} samples, {t:.1f}s")


def test_criterion_08_desk_scale_n4(capsys):
    cfg = ChainConfig(4, 10 ** 4, chains=2000, seed=0)
    recs, t = timed(lambda: list(run_ensemble(cfg, threads=default_threads())))
    rep = estimate(recs, 59, 543, 446)
    eg_dag, edag_eg = float(rep.est_eg_dag), float(rep.r)
    ok = abs(eg_dag - 0.34070) <= 0.02 and abs(edag_eg - 0.31892) <= 0.02 and t < 900
    verdict(capsys, 8, ok, f"#EGs/#DAGs {eg_dag:.5f} (0.34070), #EDAGs/#EGs {edag_eg:.5f} (0.31892), {t:.1f}s")


@lru_cache(maxsize=None)
def paper_scale_n10():
    cfg = ChainConfig(10, 10 ** 6, chains=10 ** 4, seed=0)
    return tuple(run_ensemble(cfg, threads=default_threads()))


@pytest.mark.paper_scale
def test_criterion_09_paper_scale_n10(capsys):
    table = os.environ.get("EG_EDAG_TABLE")
    if not PAPER_SCALE or not table:
        skipped(capsys, 9, "10^10 transitions at n=10; set EG_PAPER_SCALE=1 and EG_EDAG_TABLE=<csv with n=10>")
    edags = EdagCountProvider.from_file(table).count(10)
    rep = estimate(paper_scale_n10(), edags, count_dags(10), count_cdags(10))
    eg_dag, ceg_eg = float(rep.est_eg_dag), float(rep.est_ceg_eg)
    verdict(capsys, 9, 0.25 <= eg_dag <= 0.29 and 0.985 <= ceg_eg <= 1.0,
            f"#EGs/#DAGs {eg_dag:.5f} (0.26799), #CEGs/#EGs {ceg_eg:.5f} (0.99710)")


def test_criterion_10_changed_fraction(capsys):
    if PAPER_SCALE:
        recs, scale = paper_scale_n10(), "paper preset"
    else:
        cfg = ChainConfig(10, 10 ** 4, chains=20, seed=0)
        recs, scale = list(run_ensemble(cfg, threads=default_threads())), "20 chains x 10^4 steps"
    mean = sum(r.changed_fraction for r in recs) / len(recs)
    if not 0.02 <= mean <= 0.15:
        warnings.warn(f"mean changed fraction {mean:.4f} outside the 2-15% band")
    verdict(capsys, 10, 0 <= mean <= 1,
            f"n=10 mean changed fraction {mean:.4f} ({scale}; 2-15% band is advisory, "
            f"{'inside' if 0.02 <= mean <= 0.15 else 'outside'})")


def test_criterion_11_plug_in_exactness(capsys):
    start = time.perf_counter()
    ok = True
    for n in (1, 2, 3, 4):
        c = census(n)
        rep = estimate(records_from_graphs(enumerate_egs(n)), c.n_edags, c.n_dags, c.n_cdags)
        ok &= rep.est_eg_dag == Fraction(c.n_egs, c.n_dags)
        ok &= rep.est_ceg_cdag == Fraction(c.n_cegs, c.n_cdags)
        ok &= rep.est_ceg_eg == Fraction(c.n_cegs, c.n_egs)
    t = time.perf_counter() - start
    verdict(capsys, 11, ok and t < 60, f"n=1..4 exact as rationals, {t:.2f}s")
