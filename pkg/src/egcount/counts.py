"""Exact counts of labeled DAGs, connected DAGs and essential DAGs.

All counts are Python ints; ratios are :class:`fractions.Fraction` and only
become decimals when rendered.
"""

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Union

from .oracle import MAX_ORACLE_NODES, census

MAX_COUNT_NODES = 64


class InternalInconsistency(ArithmeticError):
    pass


class NotCovered(LookupError):
    pass


def _check(n: int) -> None:
    if not 1 <= n <= MAX_COUNT_NODES:
        raise ValueError(f"n must be in [1, {MAX_COUNT_NODES}], got {n}")


@lru_cache(maxsize=None)
def _dags(n: int) -> int:
    # A_n = sum_{k=1..n} (-1)^{k+1} C(n,k) 2^{k(n-k)} A_{n-k},  A_0 = 1
    if n == 0:
        return 1
    total = 0
    for k in range(1, n + 1):
        term = math.comb(n, k) * (1 << (k * (n - k))) * _dags(n - k)
        total += term if k % 2 else -term
    return total


def count_dags(n: int) -> int:
    """Number of labeled DAGs on ``n`` nodes (Robinson's recursion)."""
    _check(n)
    return _dags(n)


@lru_cache(maxsize=None)
def _cdags(n: int) -> int:
    # from A(x) = exp(a(x)):  n a_n = n A_n - sum_{k=1}^{n-1} k C(n,k) a_k A_{n-k}
    s = sum(k * math.comb(n, k) * _cdags(k) * _dags(n - k) for k in range(1, n))
    q, rem = divmod(s, n)
    if rem:
        raise InternalInconsistency(f"connected-DAG recursion not integral at n={n}")
    return _dags(n) - q


def count_cdags(n: int) -> int:
    """Number of weakly connected labeled DAGs on ``n`` nodes."""
    _check(n)
    return _cdags(n)


@dataclass(frozen=True)
class ExactRatio:
    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0 or self.numerator < 0:
            raise ValueError("ratio needs a nonnegative numerator and positive denominator")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __eq__(self, other):
        if isinstance(other, ExactRatio):
            return self.numerator * other.denominator == other.numerator * self.denominator
        if isinstance(other, (int, Fraction)):
            return self.fraction == other
        return NotImplemented

    def __hash__(self):
        return hash(self.fraction)

    def __lt__(self, other: "ExactRatio") -> bool:
        return self.numerator * other.denominator < other.numerator * self.denominator

    def __float__(self):
        return self.numerator / self.denominator

    def render(self, places: int = 5) -> str:
        return render_decimal(self.fraction, places)


def render_decimal(x: Fraction, places: int = 5) -> str:
    """Exact decimal rendering with round-half-even at ``places`` digits."""
    scaled = round(Fraction(x) * 10 ** places)  # Fraction.__round__ is half-even
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def exact_cdag_dag_ratio(n: int) -> ExactRatio:
    return ExactRatio(count_cdags(n), count_dags(n))


# -- essential DAG counts ----------------------------------------------------

DATA_TABLE = Path(__file__).with_name("data") / "edag_counts.csv"


def read_edag_table(path: Union[str, Path]) -> Dict[int, int]:
    """Parse a ``n,count`` CSV; counts may be arbitrarily long integers."""
    table: Dict[int, int] = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["n", "count"]:
            raise ValueError(f"{path}: expected header 'n,count'")
        for row in reader:
            n = int(row["n"])
            count = int(row["count"])
            if n < 1 or count < 0:
                raise ValueError(f"{path}: bad row {row}")
            if n in table and table[n] != count:
                raise ValueError(f"{path}: conflicting entries for n={n}")
            table[n] = count
    return table


@dataclass
class EdagCountProvider:
    """Source of exact essential-DAG counts.

    With no table the brute-force oracle answers for ``n <= 5``.  A table
    file extends coverage; its entries for ``n <= 5`` are checked against
    the oracle when the provider is built.
    """

    table: Optional[Dict[int, int]] = None
    source: str = "oracle"
    _oracle_cache: Dict[int, int] = field(default_factory=dict, repr=False)

    @classmethod
    def oracle(cls) -> "EdagCountProvider":
        return cls()

    @classmethod
    def from_file(cls, path: Union[str, Path], validate: bool = True) -> "EdagCountProvider":
        table = read_edag_table(path)
        provider = cls(table=table, source=str(path))
        if validate:
            provider.validate()
        return provider

    @classmethod
    def default(cls) -> "EdagCountProvider":
        """The table shipped with the package (oracle-computed, n <= 5)."""
        return cls.from_file(DATA_TABLE)

    def _oracle_count(self, n: int) -> int:
        if n not in self._oracle_cache:
            self._oracle_cache[n] = census(n).n_edags
        return self._oracle_cache[n]

    def validate(self) -> None:
        for n, count in sorted((self.table or {}).items()):
            if n <= MAX_ORACLE_NODES and count != self._oracle_count(n):
                raise ValueError(
                    f"{self.source}: n={n} count {count} disagrees with oracle {self._oracle_count(n)}")

    def covers(self, n: int) -> bool:
        if self.table is not None:
            return n in self.table
        return 1 <= n <= MAX_ORACLE_NODES

    def count(self, n: int) -> int:
        if not self.covers(n):
            raise NotCovered(f"no essential-DAG count for n={n} in {self.source}")
        if self.table is not None:
            return self.table[n]
        return self._oracle_count(n)


def count_edags(n: int, provider: Optional[EdagCountProvider] = None) -> int:
    """Number of essential DAGs on ``n`` nodes from ``provider`` (default: shipped table)."""
    if provider is None:
        provider = EdagCountProvider.default()
    return provider.count(n)


# -- finite-n checks of the connectivity asymptotics --------------------------

@dataclass
class WrightRow:
    n: int
    log_growth: float  # log((A_n/n!) / (A_{n-1}/(n-1)!))
    log_growth_bound: float  # log(2^{n-1}/n)
    growth_exceeds_bound: bool  # exact: A_n > 2^{n-1} A_{n-1}
    log_convex: Optional[bool]  # L_{n+1} >= L_n; None when A_{n+1} is out of range


@dataclass
class WrightSeriesRow:
    k: int
    term: Fraction  # (A_k/k!)^2 / (A_2k/(2k)!)
    bound: Fraction  # (4k-2)/k^3
    partial_sum: Fraction
    bound_partial_sum: Fraction
    pair_ratio: Fraction  # A_2k / A_k^2
    pair_ratio_bound: int  # k^2 C(2k-2, k-1)

    @property
    def term_ok(self) -> bool:
        return self.term <= self.bound

    @property
    def pair_ok(self) -> bool:
        return self.pair_ratio >= self.pair_ratio_bound


@dataclass
class WrightReport:
    N: int
    rows: List[WrightRow]
    series: List[WrightSeriesRow]

    @property
    def growth_ok(self) -> bool:
        return all(r.growth_exceeds_bound for r in self.rows)

    @property
    def convexity_ok(self) -> bool:
        return all(r.log_convex for r in self.rows if r.log_convex is not None)

    @property
    def series_ok(self) -> bool:
        return all(s.term_ok and s.pair_ok and s.partial_sum <= s.bound_partial_sum
                   for s in self.series)

    @property
    def ok(self) -> bool:
        return self.growth_ok and self.convexity_ok and self.series_ok


def wright_conditions_report(N: int) -> WrightReport:
    """Evaluate the three growth conditions exactly for all n <= N.

    Comparisons use integer cross-multiplication; the float logs are only
    for display.
    """
    if not 2 <= N <= 40:
        raise ValueError("N must be in [2, 40]")
    A = _dags
    rows = []
    for n in range(2, N + 1):
        lg = math.log(A(n)) - math.log(n) - math.log(A(n - 1))
        convex = None
        if n + 1 <= N:
            # L_{n+1} >= L_n  <=>  n A_{n+1} A_{n-1} >= (n+1) A_n^2
            convex = n * A(n + 1) * A(n - 1) >= (n + 1) * A(n) ** 2
        rows.append(WrightRow(
            n=n,
            log_growth=lg,
            log_growth_bound=(n - 1) * math.log(2) - math.log(n),
            growth_exceeds_bound=A(n) > (1 << (n - 1)) * A(n - 1),
            log_convex=convex,
        ))
    series = []
    partial = Fraction(0)
    bound_partial = Fraction(0)
    for k in range(1, N // 2 + 1):
        term = Fraction(A(k) ** 2 * math.factorial(2 * k), A(2 * k) * math.factorial(k) ** 2)
        bound = Fraction(4 * k - 2, k ** 3)
        partial += term
        bound_partial += bound
        series.append(WrightSeriesRow(
            k=k,
            term=term,
            bound=bound,
            partial_sum=partial,
            bound_partial_sum=bound_partial,
            pair_ratio=Fraction(A(2 * k), A(k) ** 2),
            pair_ratio_bound=k * k * math.comb(2 * k - 2, k - 1),
        ))
    return WrightReport(N=N, rows=rows, series=series)
