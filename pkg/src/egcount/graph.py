"""Labeled partially directed graphs.

A :class:`Pdag` on ``n`` nodes stores one 2-bit mark per unordered pair
``(i, j)`` with ``i < j``, packed into a single Python int:

    00  absent
    01  i -> j
    10  j -> i
    11  i -- j  (undirected)

Pairs are laid out in lexicographic order with the first pair in the most
significant bits, so the int is exactly the bit string written by
:func:`canonical_key`.
"""

from enum import IntEnum
from functools import lru_cache
from typing import Iterable, Iterator, List, Sequence, Set, Tuple

MAX_NODES = 64


class Mark(IntEnum):
    ABSENT = 0
    FORWARD = 1  # i -> j for the pair (i, j), i < j
    BACKWARD = 2  # j -> i
    UNDIRECTED = 3


class CycleDetected(ValueError):
    pass


@lru_cache(maxsize=None)
def pair_layout(n: int) -> Tuple[Tuple[Tuple[int, int], ...], Tuple[Tuple[int, ...], ...]]:
    """Return ``(pairs, shift)`` for ``n`` nodes.

    ``pairs[p]`` is the p-th pair in lexicographic order and ``shift[i][j]``
    (symmetric) is the bit offset of the pair's mark inside the packed code.
    """
    pairs = tuple((i, j) for i in range(n) for j in range(i + 1, n))
    m = len(pairs)
    shift = [[-1] * n for _ in range(n)]
    for p, (i, j) in enumerate(pairs):
        s = 2 * (m - 1 - p)
        shift[i][j] = shift[j][i] = s
    return pairs, tuple(tuple(row) for row in shift)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_NODES:
        raise ValueError(f"node count must be in [1, {MAX_NODES}], got {n}")


class Pdag:
    """Immutable partially directed graph over nodes ``0..n-1``."""

    __slots__ = ("n", "code")

    def __init__(self, n: int, code: int = 0):
        _check_n(n)
        m = n * (n - 1) // 2
        if code < 0 or code >> (2 * m):
            raise ValueError("code does not fit the node count")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "code", code)

    def __setattr__(self, name, value):
        raise AttributeError("Pdag is immutable")

    @classmethod
    def empty(cls, n: int) -> "Pdag":
        return cls(n, 0)

    @classmethod
    def from_edges(cls, n: int, arcs: Iterable[Tuple[int, int]] = (),
                   lines: Iterable[Tuple[int, int]] = ()) -> "Pdag":
        """Build a graph from directed ``arcs`` (tail, head) and undirected ``lines``."""
        _check_n(n)
        _, shift = pair_layout(n)
        code = 0
        seen = set()
        for edges, undirected in ((arcs, False), (lines, True)):
            for u, v in edges:
                if u == v:
                    raise ValueError(f"self-loop at node {u}")
                if not (0 <= u < n and 0 <= v < n):
                    raise ValueError(f"node out of range in edge ({u}, {v})")
                key = (min(u, v), max(u, v))
                if key in seen:
                    raise ValueError(f"pair {key} given more than one mark")
                seen.add(key)
                if undirected:
                    mark = Mark.UNDIRECTED
                else:
                    mark = Mark.FORWARD if u < v else Mark.BACKWARD
                code |= int(mark) << shift[u][v]
        return cls(n, code)

    @classmethod
    def from_masks(cls, n: int, children: Sequence[int], neighbors: Sequence[int]) -> "Pdag":
        """Build from per-node bitmasks of directed children and undirected neighbors."""
        _, shift = pair_layout(n)
        code = 0
        for u in range(n):
            ch = children[u]
            while ch:
                low = ch & -ch
                v = low.bit_length() - 1
                ch ^= low
                code |= (1 if u < v else 2) << shift[u][v]
            ne = neighbors[u]
            while ne:
                low = ne & -ne
                v = low.bit_length() - 1
                ne ^= low
                if u < v:
                    code |= 3 << shift[u][v]
        return cls(n, code)

    # -- mark access ---------------------------------------------------

    def mark(self, i: int, j: int) -> Mark:
        """Mark of the pair, reported relative to ``(min(i, j), max(i, j))``."""
        if i == j:
            raise ValueError("no self-loops")
        return Mark((self.code >> pair_layout(self.n)[1][i][j]) & 3)

    def has_arc(self, u: int, v: int) -> bool:
        m = self.mark(u, v)
        return m == (Mark.FORWARD if u < v else Mark.BACKWARD)

    def has_line(self, u: int, v: int) -> bool:
        return self.mark(u, v) == Mark.UNDIRECTED

    def is_adjacent(self, u: int, v: int) -> bool:
        return self.mark(u, v) != Mark.ABSENT

    def with_mark(self, i: int, j: int, mark: Mark) -> "Pdag":
        s = pair_layout(self.n)[1][i][j]
        return Pdag(self.n, (self.code & ~(3 << s)) | (int(mark) << s))

    def with_arc(self, u: int, v: int) -> "Pdag":
        return self.with_mark(u, v, Mark.FORWARD if u < v else Mark.BACKWARD)

    def with_line(self, u: int, v: int) -> "Pdag":
        return self.with_mark(u, v, Mark.UNDIRECTED)

    def without_edge(self, u: int, v: int) -> "Pdag":
        return self.with_mark(u, v, Mark.ABSENT)

    def _iter_marks(self) -> Iterator[Tuple[int, int, int]]:
        pairs, shift = pair_layout(self.n)
        code = self.code
        for i, j in pairs:
            c = (code >> shift[i][j]) & 3
            if c:
                yield i, j, c

    def arcs(self) -> List[Tuple[int, int]]:
        """Directed edges as (tail, head), sorted."""
        out = [(i, j) if c == 1 else (j, i) for i, j, c in self._iter_marks() if c != 3]
        return sorted(out)

    def lines(self) -> List[Tuple[int, int]]:
        """Undirected edges as (i, j) with i < j, sorted."""
        return [(i, j) for i, j, c in self._iter_marks() if c == 3]

    def num_lines(self) -> int:
        return sum(1 for _, _, c in self._iter_marks() if c == 3)

    def masks(self) -> Tuple[List[int], List[int], List[int]]:
        """Per-node bitmasks ``(parents, children, neighbors)``; neighbors are undirected."""
        n = self.n
        pa = [0] * n
        ch = [0] * n
        ne = [0] * n
        for i, j, c in self._iter_marks():
            if c == 1:
                ch[i] |= 1 << j
                pa[j] |= 1 << i
            elif c == 2:
                ch[j] |= 1 << i
                pa[i] |= 1 << j
            else:
                ne[i] |= 1 << j
                ne[j] |= 1 << i
        return pa, ch, ne

    def adjacency_masks(self) -> List[int]:
        n = self.n
        adj = [0] * n
        for i, j, _ in self._iter_marks():
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj

    # -- value semantics -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Pdag):
            return NotImplemented
        return self.n == other.n and self.code == other.code

    def __hash__(self):
        return hash((self.n, self.code))

    def __repr__(self):
        parts = [f"{u}->{v}" for u, v in self.arcs()] + [f"{i}--{j}" for i, j in self.lines()]
        return f"{type(self).__name__}({self.n}, [{', '.join(parts)}])"


class Dag(Pdag):
    """A Pdag with no undirected edge and an acyclic arc relation.

    Construction validates both conditions.
    """

    __slots__ = ()

    def __init__(self, n: int, code: int = 0):
        super().__init__(n, code)
        if any(c == 3 for _, _, c in self._iter_marks()):
            raise ValueError("a Dag cannot contain undirected edges")
        topological_order(self)

    @classmethod
    def from_pdag(cls, g: Pdag) -> "Dag":
        return cls(g.n, g.code)


def skeleton(g: Pdag) -> Set[Tuple[int, int]]:
    """Pairs (i, j), i < j, that carry any edge."""
    return {(i, j) for i, j, _ in g._iter_marks()}


def is_connected(g: Pdag) -> bool:
    adj = g.adjacency_masks()
    full = (1 << g.n) - 1
    seen = frontier = 1
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        nxt = adj[low.bit_length() - 1] & ~seen
        seen |= nxt
        frontier |= nxt
    return seen == full


def topological_order(g: Pdag) -> List[int]:
    """Order of the nodes with every arc tail before its head.

    Ties go to the smallest available node.  Undirected edges are ignored.
    Raises :class:`CycleDetected` when the arcs contain a cycle.
    """
    pa, _, _ = g.masks()
    placed = 0
    order = []
    for _ in range(g.n):
        for v in range(g.n):
            if not placed >> v & 1 and pa[v] & ~placed == 0:
                order.append(v)
                placed |= 1 << v
                break
        else:
            raise CycleDetected(f"directed cycle among nodes {sorted(set(range(g.n)) - set(order))}")
    return order


def canonical_key(g: Pdag) -> bytes:
    """Stable byte encoding: one byte holding n, then the mark bit string.

    Marks follow pair order (0,1), (0,2), ..., (n-2,n-1), two bits each,
    most significant first; the final byte is zero-padded on the right.
    """
    nbits = g.n * (g.n - 1)
    nbytes = (nbits + 7) // 8
    pad = nbytes * 8 - nbits
    return bytes([g.n]) + (g.code << pad).to_bytes(nbytes, "big")


def decode_key(key: bytes) -> Pdag:
    n = key[0]
    nbits = n * (n - 1)
    nbytes = (nbits + 7) // 8
    if len(key) != 1 + nbytes:
        raise ValueError("key length does not match node count")
    pad = nbytes * 8 - nbits
    value = int.from_bytes(key[1:], "big")
    if value & ((1 << pad) - 1):
        raise ValueError("nonzero padding bits")
    return Pdag(n, value >> pad)


def relabel(g: Pdag, perm: Sequence[int]) -> Pdag:
    """Graph with node ``v`` renamed to ``perm[v]``."""
    arcs = [(perm[u], perm[v]) for u, v in g.arcs()]
    lines = [(perm[u], perm[v]) for u, v in g.lines()]
    return Pdag.from_edges(g.n, arcs, lines)
