"""Markov equivalence: CPDAGs, consistent extensions and essential graphs.

Everything here works on per-node bitmasks internally.  Two DAGs are
equivalent when they share a skeleton and v-structures; the essential graph
(CPDAG) keeps an edge directed only when every member of the class orients
it the same way.
"""

from functools import lru_cache
from itertools import product
from typing import List, NamedTuple, Optional, Set, Tuple

from .graph import Dag, Pdag, pair_layout


class NoExtension(ValueError):
    """The PDAG has no consistent extension, so it is not an essential graph."""


class VStructure(NamedTuple):
    a: int
    c: int
    b: int


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def v_structures(d: Pdag) -> Set[VStructure]:
    """Colliders ``a -> c <- b`` with ``a < b`` non-adjacent.

    Only arcs are looked at, so this also works on a PDAG.
    """
    pa, _, _ = d.masks()
    adj = d.adjacency_masks()
    out = set()
    for c in range(d.n):
        parents = list(_bits(pa[c]))
        for x, a in enumerate(parents):
            for b in parents[x + 1:]:
                if not adj[a] >> b & 1:
                    out.add(VStructure(a, c, b))
    return out


def _meek_closure(n: int, pa: List[int], ch: List[int], ne: List[int], adj: List[int]) -> None:
    """Apply the four Meek rules in place until nothing changes."""

    def orient(u, v):
        ne[u] &= ~(1 << v)
        ne[v] &= ~(1 << u)
        ch[u] |= 1 << v
        pa[v] |= 1 << u

    changed = True
    while changed:
        changed = False
        # R1: a -> b -- c, a and c non-adjacent  =>  b -> c
        for b in range(n):
            for c in _bits(ne[b]):
                if pa[b] & ~adj[c] & ~(1 << c):
                    orient(b, c)
                    changed = True
        # R2: a -> b -> c and a -- c  =>  a -> c
        for a in range(n):
            for c in _bits(ne[a]):
                if ch[a] & pa[c]:
                    orient(a, c)
                    changed = True
        # R3: a -- b -> d, a -- c -> d, b and c non-adjacent, a -- d  =>  a -> d
        for a in range(n):
            for d in _bits(ne[a]):
                cand = ne[a] & pa[d]
                for b in _bits(cand):
                    if cand & ~adj[b] & ~(1 << b):
                        orient(a, d)
                        changed = True
                        break
        # R4: i -- k -> l -> j, k and j non-adjacent, i adjacent to l, i -- j  =>  i -> j
        for i in range(n):
            for j in _bits(ne[i]):
                for l in _bits(pa[j] & adj[i]):
                    if ne[i] & pa[l] & ~adj[j] & ~(1 << j):
                        orient(i, j)
                        changed = True
                        break


def _cpdag_masks(n: int, pa: List[int], adj: List[int]) -> Tuple[List[int], List[int], List[int]]:
    """CPDAG masks of the DAG given by parent masks ``pa``."""
    cpa = [0] * n
    cch = [0] * n
    for c in range(n):
        parents = pa[c]
        for a in _bits(parents):
            # a -> c is in a v-structure if c has another parent not adjacent to a
            if parents & ~adj[a] & ~(1 << a):
                cpa[c] |= 1 << a
                cch[a] |= 1 << c
    ne = [adj[v] & ~cpa[v] & ~cch[v] for v in range(n)]
    _meek_closure(n, cpa, cch, ne, adj)
    return cpa, cch, ne


def cpdag_of_dag(d: Pdag) -> Pdag:
    """Essential graph of the equivalence class of ``d``."""
    pa, _, ne = d.masks()
    if any(ne):
        raise ValueError("cpdag_of_dag expects a fully directed graph")
    adj = d.adjacency_masks()
    _, cch, cne = _cpdag_masks(d.n, pa, adj)
    return Pdag.from_masks(d.n, cch, cne)


def _extend(n: int, pa: List[int], ch: List[int], ne: List[int], adj: List[int]) -> Optional[List[int]]:
    """Dor-Tarsi sink peeling; returns parent masks of the extension or None.

    Among eligible sinks the largest node is removed first, so the smaller
    node ends up as the tail of any free orientation.
    """
    out_pa = list(pa)
    remaining = (1 << n) - 1
    for _ in range(n):
        for x in range(n - 1, -1, -1):
            if not remaining >> x & 1 or ch[x] & remaining:
                continue
            nbrs = ne[x] & remaining
            others = adj[x] & remaining
            ok = True
            for y in _bits(nbrs):
                if others & ~adj[y] & ~(1 << y):
                    ok = False
                    break
            if ok:
                out_pa[x] |= nbrs
                remaining &= ~(1 << x)
                break
        else:
            return None
    return out_pa


def consistent_extension(g: Pdag) -> Dag:
    """A DAG with g's skeleton and arcs, adding no v-structure.

    Deterministic; raises :class:`NoExtension` when none exists.
    """
    pa, ch, ne = g.masks()
    adj = g.adjacency_masks()
    out_pa = _extend(g.n, pa, ch, ne, adj)
    if out_pa is None:
        raise NoExtension(repr(g))
    out_ch = [0] * g.n
    for v in range(g.n):
        for u in _bits(out_pa[v]):
            out_ch[u] |= 1 << v
    return Dag.from_pdag(Pdag.from_masks(g.n, out_ch, [0] * g.n))


def _is_eg_masks(n, pa, ch, ne, adj) -> bool:
    ext = _extend(n, pa, ch, ne, adj)
    if ext is None:
        return False
    cpa, _, cne = _cpdag_masks(n, ext, adj)
    return cpa == pa and cne == ne


def _code_masks(n: int, code: int):
    pairs, _ = pair_layout(n)
    pa = [0] * n
    ch = [0] * n
    ne = [0] * n
    adj = [0] * n
    s = 2 * len(pairs)
    for i, j in pairs:
        s -= 2
        c = (code >> s) & 3
        if not c:
            continue
        adj[i] |= 1 << j
        adj[j] |= 1 << i
        if c == 1:
            ch[i] |= 1 << j
            pa[j] |= 1 << i
        elif c == 2:
            ch[j] |= 1 << i
            pa[i] |= 1 << j
        else:
            ne[i] |= 1 << j
            ne[j] |= 1 << i
    return pa, ch, ne, adj


@lru_cache(maxsize=1 << 18)
def is_essential_code(n: int, code: int) -> bool:
    """:func:`is_essential_graph` on a packed mark code (memoized)."""
    pa, ch, ne, adj = _code_masks(n, code)
    return _is_eg_masks(n, pa, ch, ne, adj)


def is_essential_graph(g: Pdag) -> bool:
    """True iff g is the CPDAG of its own consistent extension."""
    return is_essential_code(g.n, g.code)


def is_edag(g: Pdag) -> bool:
    """An essential graph with no undirected edge, i.e. a class of one DAG."""
    return g.num_lines() == 0


def class_size(d: Pdag) -> int:
    """Number of DAGs Markov equivalent to ``d`` (exhaustive; meant for small n)."""
    eg = cpdag_of_dag(d)
    target = v_structures(d)
    lines = eg.lines()
    base = Pdag.from_edges(d.n, eg.arcs())
    count = 0
    for flips in product((False, True), repeat=len(lines)):
        arcs = base.arcs() + [(j, i) if f else (i, j) for (i, j), f in zip(lines, flips)]
        cand = Pdag.from_edges(d.n, arcs)
        try:
            Dag.from_pdag(cand)
        except ValueError:
            continue
        if v_structures(cand) == target:
            count += 1
    return count
