"""Ratio estimates from a sample of essential graphs.

With ``R`` the share of essential DAGs among sampled EGs and ``R'`` the
number of sampled essential DAGs per sampled connected EG:

    #EGs/#DAGs   ~ (#EDAGs/#DAGs)  / R
    #CEGs/#CDAGs ~ (#EDAGs/#CDAGs) / R'
    #CEGs/#EGs   ~ share of connected EGs in the sample

Counts enter as exact integers, so a sample that is an exact census
reproduces the exact ratios as fractions.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .counts import ExactRatio, render_decimal
from .graph import Pdag, canonical_key, is_connected
from .mcmc import SampleRecord

LOW_COUNT = 30


class DegenerateSample(ValueError):
    pass


@dataclass
class EstimateReport:
    n: int
    sample_size: int
    edag_records: int
    connected_records: int
    r: Fraction
    r_prime: Fraction
    est_eg_dag: Fraction
    est_ceg_cdag: Fraction
    est_ceg_eg: Fraction
    exact_cdag_dag: ExactRatio
    est_n_egs: Optional[Fraction] = None
    est_n_cegs: Optional[Fraction] = None
    se_r: Optional[float] = None
    se_eg_dag: Optional[float] = None
    se_ceg_eg: Optional[float] = None
    low_count_warning: bool = False
    strict_connected: bool = False
    mean_changed_fraction: Optional[float] = None
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def num(x):
            return None if x is None else float(x)

        return {
            "n": self.n,
            "sample_size": self.sample_size,
            "edag_records": self.edag_records,
            "connected_records": self.connected_records,
            "r": num(self.r),
            "r_prime": num(self.r_prime),
            "est_eg_dag": num(self.est_eg_dag),
            "est_ceg_cdag": num(self.est_ceg_cdag),
            "est_ceg_eg": num(self.est_ceg_eg),
            "exact_cdag_dag": {
                "numerator": str(self.exact_cdag_dag.numerator),
                "denominator": str(self.exact_cdag_dag.denominator),
                "value": float(self.exact_cdag_dag),
            },
            "est_n_egs": num(self.est_n_egs),
            "est_n_cegs": num(self.est_n_cegs),
            "se_r": self.se_r,
            "se_eg_dag": self.se_eg_dag,
            "se_ceg_eg": self.se_ceg_eg,
            "low_count_warning": self.low_count_warning,
            "strict_connected": self.strict_connected,
            "mean_changed_fraction": self.mean_changed_fraction,
            "table": self.table_row(),
            "metadata": self.metadata,
        }

    def table_row(self, places: int = 5) -> dict:
        """Five-decimal strings laid out like the published tables."""
        return {
            "eg_dag": render_decimal(self.est_eg_dag, places),
            "edag_eg": render_decimal(self.r, places),
            "ceg_cdag": render_decimal(self.est_ceg_cdag, places),
            "ceg_eg": render_decimal(self.est_ceg_eg, places),
            "cdag_dag": self.exact_cdag_dag.render(places),
        }


def estimate(records: Sequence[SampleRecord], edags: int, dags: int, cdags: int,
             strict_connected: bool = False) -> EstimateReport:
    """Fold sample records into the ratio estimates.

    ``strict_connected`` counts only connected essential DAGs in the
    numerator of ``R'``; by default every sampled essential DAG counts.
    """
    records = list(records)
    if not records:
        raise DegenerateSample("empty sample")
    n = records[0].n
    if any(rec.n != n for rec in records):
        raise ValueError("records mix different node counts")
    size = len(records)
    n_edag = sum(rec.is_edag for rec in records)
    n_conn = sum(rec.is_connected for rec in records)
    if n_edag == 0:
        raise DegenerateSample("no essential DAG in the sample; increase chains or steps")
    if n_conn == 0:
        raise DegenerateSample("no connected EG in the sample; increase chains or steps")
    if strict_connected:
        prime_num = sum(rec.is_edag and rec.is_connected for rec in records)
        if prime_num == 0:
            raise DegenerateSample("no connected essential DAG in the sample")
    else:
        prime_num = n_edag
    r = Fraction(n_edag, size)
    r_prime = Fraction(prime_num, n_conn)
    report = EstimateReport(
        n=n,
        sample_size=size,
        edag_records=n_edag,
        connected_records=n_conn,
        r=r,
        r_prime=r_prime,
        est_eg_dag=Fraction(edags, dags) / r,
        est_ceg_cdag=Fraction(edags, cdags) / r_prime,
        est_ceg_eg=Fraction(n_conn, size),
        exact_cdag_dag=ExactRatio(cdags, dags),
        strict_connected=strict_connected,
        mean_changed_fraction=sum(rec.changed_fraction for rec in records) / size,
    )
    approx_counts(report, dags)
    if size >= 2:
        standard_errors(report, edags, dags)
    return report


def approx_counts(report: EstimateReport, dags: int):
    """Fill and return ``(est_n_egs, est_n_cegs)``."""
    report.est_n_egs = report.est_eg_dag * dags
    report.est_n_cegs = report.est_ceg_eg * report.est_n_egs
    return report.est_n_egs, report.est_n_cegs


def standard_errors(report: EstimateReport, edags: int, dags: int) -> EstimateReport:
    """Binomial standard errors, delta-method for the EG/DAG ratio."""
    size = report.sample_size
    r = float(report.r)
    p = float(report.est_ceg_eg)
    report.se_r = math.sqrt(r * (1 - r) / size)
    report.se_eg_dag = (edags / dags) * report.se_r / (r * r)
    report.se_ceg_eg = math.sqrt(p * (1 - p) / size)
    report.low_count_warning = min(report.edag_records, report.connected_records) < LOW_COUNT
    return report


def records_from_graphs(graphs: Iterable[Pdag]) -> list:
    """Sample records for an explicit list of essential graphs (plug-in checks)."""
    out = []
    for i, g in enumerate(graphs):
        out.append(SampleRecord(
            n=g.n, chain_index=i, steps=0, is_edag=g.num_lines() == 0,
            is_connected=is_connected(g), changed_fraction=0.0, chain_seed=0,
            canonical_key=canonical_key(g)))
    return out
