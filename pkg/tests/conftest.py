"""Shared brute-force helpers.

These deliberately avoid the package's own enumeration and Meek machinery:
digraphs are enumerated as raw arc subsets and equivalence classes are
formed by (skeleton, v-structures) computed from plain sets.
"""

from collections import defaultdict
from functools import lru_cache
from itertools import combinations

import pytest


def ordered_pairs(n):
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def acyclic(n, arcs):
    indeg = [0] * n
    out = defaultdict(list)
    for u, v in arcs:
        indeg[v] += 1
        out[u].append(v)
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        u = stack.pop()
        seen += 1
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                stack.append(v)
    return seen == n


@lru_cache(maxsize=None)
def brute_dags(n):
    """All DAGs on n nodes as frozensets of arcs, by filtering every digraph."""
    pairs = ordered_pairs(n)
    out = []
    for mask in range(1 << len(pairs)):
        arcs = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
        if any((v, u) in arcs for u, v in arcs):
            continue
        if acyclic(n, arcs):
            out.append(arcs)
    return tuple(out)


def arcs_skeleton(arcs):
    return frozenset(frozenset(a) for a in arcs)


def arcs_vstructs(arcs):
    skel = arcs_skeleton(arcs)
    parents = defaultdict(set)
    for u, v in arcs:
        parents[v].add(u)
    out = set()
    for c, ps in parents.items():
        for a, b in combinations(sorted(ps), 2):
            if frozenset((a, b)) not in skel:
                out.add((a, c, b))
    return frozenset(out)


def weakly_connected(n, edges):
    adj = defaultdict(set)
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


@lru_cache(maxsize=None)
def brute_classes(n):
    """Markov equivalence classes: {(skeleton, v-structures): [arc sets]}."""
    groups = defaultdict(list)
    for arcs in brute_dags(n):
        groups[(arcs_skeleton(arcs), arcs_vstructs(arcs))].append(arcs)
    return dict(groups)


def brute_essential(n, members):
    """(arcs, lines) of the essential graph: arcs shared by every member."""
    common = frozenset.intersection(*members)
    lines = {tuple(sorted(a)) for a in members[0]} - {tuple(sorted(a)) for a in common}
    return sorted(common), sorted(lines)


@pytest.fixture(scope="session")
def dags_small():
    return {n: brute_dags(n) for n in range(1, 5)}
