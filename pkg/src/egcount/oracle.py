"""Brute-force ground truth for small node counts.

Every labeled DAG on ``n <= 5`` nodes is enumerated, grouped into Markov
equivalence classes by the canonical key of its CPDAG, and tallied.
"""

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Tuple

from .equivalence import cpdag_of_dag
from .graph import Dag, Pdag, canonical_key, decode_key, is_connected

MAX_ORACLE_NODES = 5


class CapExceeded(ValueError):
    pass


def _check_cap(n: int, cap: int = MAX_ORACLE_NODES) -> None:
    if not 1 <= n <= cap:
        raise CapExceeded(f"exhaustive enumeration is capped at n={cap}, got n={n}")


def _extend_dags(dags: List[Tuple[List[int], List[int]]], k: int):
    """Add node ``k`` to each DAG on nodes ``0..k-1``.

    Each DAG is ``(children masks, reachability masks)``.  Node k gets a
    parent set P and child set C; the result is acyclic unless some child
    already reaches some parent.
    """
    out = []
    bit_k = 1 << k
    for ch, reach in dags:
        for marks in product((0, 1, 2), repeat=k):
            parents = children = 0
            for v, m in enumerate(marks):
                if m == 1:
                    parents |= 1 << v
                elif m == 2:
                    children |= 1 << v
            below = 0  # nodes reachable from k
            for v in range(k):
                if children >> v & 1:
                    below |= (1 << v) | reach[v]
            if below & parents:
                continue
            new_ch = [c | bit_k if parents >> v & 1 else c for v, c in enumerate(ch)]
            new_ch.append(children)
            new_reach = [r | bit_k | below if (r | (1 << v)) & parents else r
                         for v, r in enumerate(reach)]
            new_reach.append(below)
            out.append((new_ch, new_reach))
    return out


def enumerate_dags(n: int) -> Iterator[Dag]:
    """Yield every labeled DAG on ``n`` nodes exactly once."""
    _check_cap(n)
    dags = [([0], [0])]
    for k in range(1, n):
        dags = _extend_dags(dags, k)
    for ch, _ in dags:
        yield Dag.from_pdag(Pdag.from_masks(n, ch, [0] * n))


@dataclass
class OracleCensus:
    n: int
    n_dags: int
    n_cdags: int
    n_egs: int
    n_cegs: int
    n_edags: int
    class_size_histogram: Dict[int, int] = field(default_factory=dict)

    def check(self) -> None:
        h = self.class_size_histogram
        assert self.n_dags == sum(s * c for s, c in h.items())
        assert self.n_egs == sum(h.values())
        assert self.n_edags == h.get(1, 0)
        assert self.n_cdags <= self.n_dags and self.n_cegs <= self.n_egs
        assert self.n_edags <= self.n_egs

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "n_dags": self.n_dags,
            "n_cdags": self.n_cdags,
            "n_egs": self.n_egs,
            "n_cegs": self.n_cegs,
            "n_edags": self.n_edags,
            "class_size_histogram": sorted([s, c] for s, c in self.class_size_histogram.items()),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "OracleCensus":
        hist = {int(s): int(c) for s, c in obj["class_size_histogram"]}
        return cls(obj["n"], obj["n_dags"], obj["n_cdags"], obj["n_egs"], obj["n_cegs"],
                   obj["n_edags"], hist)


@lru_cache(maxsize=None)
def _classes(n: int) -> Tuple[Dict[bytes, int], int]:
    """Map canonical key of each EG to its class size; also the CDAG count."""
    sizes: Counter = Counter()
    n_cdags = 0
    for d in enumerate_dags(n):
        sizes[canonical_key(cpdag_of_dag(d))] += 1
        n_cdags += is_connected(d)
    return dict(sizes), n_cdags


def census(n: int) -> OracleCensus:
    _check_cap(n)
    sizes, n_cdags = _classes(n)
    hist = Counter(sizes.values())
    n_cegs = sum(1 for key in sizes if is_connected(decode_key(key)))
    result = OracleCensus(
        n=n,
        n_dags=sum(sizes.values()),
        n_cdags=n_cdags,
        n_egs=len(sizes),
        n_cegs=n_cegs,
        n_edags=hist.get(1, 0),
        class_size_histogram=dict(sorted(hist.items())),
    )
    result.check()
    return result


def enumerate_egs(n: int) -> Iterator[Pdag]:
    """Each distinct essential graph on ``n`` nodes, in canonical-key order."""
    _check_cap(n)
    sizes, _ = _classes(n)
    for key in sorted(sizes):
        yield decode_key(key)


def eg_class_sizes(n: int) -> Dict[Pdag, int]:
    _check_cap(n)
    sizes, _ = _classes(n)
    return {decode_key(k): v for k, v in sizes.items()}
