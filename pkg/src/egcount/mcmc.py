"""Markov chain over essential graphs with a uniform stationary distribution.

Each transition draws one of seven modifications uniformly, together with an
ordered node pair ``(u, v)`` and (for the v-structure move) a third node
``w``.  The candidate replaces the current state only if it is an essential
graph; inapplicable or invalid candidates leave the state unchanged.  Every
modification has an inverse drawn with the same probability, so the
proposal is symmetric and the chain is uniform on the states it can reach.

Draws are packed into a single integer in ``[0, 7 * P * W)`` with
``P = n(n-1)`` ordered pairs and ``W = max(n-2, 1)`` third-node slots:

    draw = kind * P * W + pair * W + slot
"""

import base64
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from .equivalence import is_essential_code
from .graph import Pdag, canonical_key, is_connected, pair_layout
from .oracle import CapExceeded

MASK64 = (1 << 64) - 1
GOLDEN64 = 0x9E3779B97F4A7C15
BLOCK = 1 << 14


class MoveKind(IntEnum):
    NO_OP = 0
    ADD_UNDIRECTED = 1
    DELETE_UNDIRECTED = 2
    ADD_DIRECTED = 3
    DELETE_DIRECTED = 4
    REVERSE_DIRECTED = 5
    TOGGLE_V_STRUCTURE = 6


N_KINDS = len(MoveKind)


def splitmix64(x: int) -> int:
    x = (x + GOLDEN64) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def chain_seed(master_seed: int, chain_index: int) -> int:
    """Seed of chain ``chain_index``: splitmix64(master + golden * (index + 1))."""
    return splitmix64((master_seed + GOLDEN64 * (chain_index + 1)) & MASK64)


@dataclass(frozen=True)
class ChainConfig:
    n: int
    steps: int
    chains: int = 1
    seed: int = 0
    record_graphs: bool = False

    def __post_init__(self):
        if not 1 <= self.n <= 40:
            raise ValueError("n must be in [1, 40]")
        if self.steps < 1 or self.chains < 1:
            raise ValueError("steps and chains must be positive")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class SampleRecord:
    n: int
    chain_index: int
    steps: int
    is_edag: bool
    is_connected: bool
    changed_fraction: float
    chain_seed: int
    canonical_key: Optional[bytes] = None

    def to_json(self) -> str:
        obj = asdict(self)
        if self.canonical_key is not None:
            obj["canonical_key"] = base64.b64encode(self.canonical_key).decode("ascii")
        return json.dumps(obj, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "SampleRecord":
        obj = json.loads(line)
        key = obj.get("canonical_key")
        if key is not None:
            obj["canonical_key"] = base64.b64decode(key)
        return cls(**obj)


@lru_cache(maxsize=None)
def _tables(n: int):
    """Precomputed per-draw data: pair shifts/codes and v-structure slots."""
    _, shift = pair_layout(n)
    width = max(n - 2, 1)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    ptab = []  # (shift, code of u->v, code of v->u)
    vtab = []  # per (pair, slot): (s1, into-w code for u, s2, into-w code for v) or None
    for u, v in pairs:
        d = 1 if u < v else 2
        ptab.append((shift[u][v], d, 3 - d))
        others = [w for w in range(n) if w not in (u, v)]
        for slot in range(width):
            if slot < len(others):
                w = others[slot]
                vtab.append((shift[u][w], 1 if u < w else 2, shift[v][w], 1 if v < w else 2))
            else:
                vtab.append(None)
    return pairs, ptab, vtab, width


def draw_space(n: int) -> int:
    """Number of equally likely draws per transition."""
    if n < 2:
        return N_KINDS
    return N_KINDS * n * (n - 1) * max(n - 2, 1)


def decode_draw(n: int, draw: int) -> Tuple[MoveKind, int, int, Optional[int]]:
    """``(kind, u, v, w)``; ``w`` is None for non-v-structure kinds or n < 3."""
    if n < 2:
        return MoveKind(draw), 0, 0, None
    pairs, _, _, width = _tables(n)
    kind, rem = divmod(draw, len(pairs) * width)
    o, slot = divmod(rem, width)
    u, v = pairs[o]
    w = None
    if kind == MoveKind.TOGGLE_V_STRUCTURE and n >= 3:
        w = [x for x in range(n) if x not in (u, v)][slot]
    return MoveKind(kind), u, v, w


def _apply_code(n: int, code: int, draw: int) -> int:
    """Candidate code for ``draw``; returns ``code`` itself when inapplicable."""
    if n < 2:
        return code
    pairs, ptab, vtab, width = _tables(n)
    kind, rem = divmod(draw, len(pairs) * width)
    if kind == 0:
        return code
    if kind == 6:
        entry = vtab[rem]
        if entry is None:
            return code
        s1, in1, s2, in2 = entry
        c1 = (code >> s1) & 3
        c2 = (code >> s2) & 3
        base = code & ~((3 << s1) | (3 << s2))
        if c1 == 3 and c2 == 3:
            return base | (in1 << s1) | (in2 << s2)
        if c1 == in1 and c2 == in2:
            return base | (3 << s1) | (3 << s2)
        return code
    s, d, r = ptab[rem // width]
    c = (code >> s) & 3
    base = code & ~(3 << s)
    if kind == 1:
        return base | (3 << s) if c == 0 else code
    if kind == 2:
        return base if c == 3 else code
    if kind == 3:
        return base | (d << s) if c == 0 else code
    if kind == 4:
        return base if c == d else code
    # kind == 5
    return base | (r << s) if c == d else code


def apply_move(g: Pdag, kind: MoveKind, u: int, v: int, w: Optional[int] = None) -> Pdag:
    """Apply one modification by name; inapplicable moves return ``g``.

    ToggleVStructure turns ``u -- w -- v`` into ``u -> w <- v`` and back.
    """
    n = g.n
    if kind == MoveKind.NO_OP or n < 2:
        return g
    if u == v or not (0 <= u < n and 0 <= v < n):
        raise ValueError("u and v must be distinct nodes")
    pairs, _, _, width = _tables(n)
    o = pairs.index((u, v))
    slot = 0
    if kind == MoveKind.TOGGLE_V_STRUCTURE:
        if w is None or w in (u, v):
            raise ValueError("v-structure toggle needs a third node w")
        slot = [x for x in range(n) if x not in (u, v)].index(w)
    draw = int(kind) * len(pairs) * width + o * width + slot
    return Pdag(n, _apply_code(n, g.code, draw))


def _as_generator(rng):
    # anything with numpy's integers() works, e.g. a scripted stub in tests
    if hasattr(rng, "integers"):
        return rng
    return np.random.default_rng(rng)


def propose(g: Pdag, rng) -> Pdag:
    """Draw one modification uniformly and apply it to ``g``."""
    rng = _as_generator(rng)
    draw = int(rng.integers(draw_space(g.n)))
    return Pdag(g.n, _apply_code(g.n, g.code, draw))


def step(g: Pdag, rng) -> Pdag:
    """One transition: the proposal if it is an essential graph, else ``g``."""
    cand = propose(g, rng)
    if cand.code != g.code and is_essential_code(g.n, cand.code):
        return cand
    return g


def _walk(n: int, code: int, draws: Iterable[int]) -> Tuple[int, int]:
    """Run transitions for ``draws``; returns (final code, number of changes)."""
    is_eg = is_essential_code
    apply = _apply_code
    changed = 0
    for draw in draws:
        cand = apply(n, code, draw)
        if cand != code and is_eg(n, cand):
            code = cand
            changed += 1
    return code, changed


def _draw_blocks(rng: np.random.Generator, n: int, total: int) -> Iterator[List[int]]:
    space = draw_space(n)
    left = total
    while left > 0:
        size = min(BLOCK, left)
        left -= size
        yield rng.integers(0, space, size=size).tolist()


def run_chain(cfg: ChainConfig, chain_index: int) -> SampleRecord:
    """Run one chain from the empty graph and report its terminal state."""
    seed = chain_seed(cfg.seed, chain_index)
    rng = np.random.default_rng(seed)
    code = 0
    changed = 0
    for block in _draw_blocks(rng, cfg.n, cfg.steps):
        code, c = _walk(cfg.n, code, block)
        changed += c
    g = Pdag(cfg.n, code)
    return SampleRecord(
        n=cfg.n,
        chain_index=chain_index,
        steps=cfg.steps,
        is_edag=g.num_lines() == 0,
        is_connected=is_connected(g),
        changed_fraction=changed / cfg.steps,
        chain_seed=seed,
        canonical_key=canonical_key(g) if cfg.record_graphs else None,
    )


def _run_slice(args) -> List[SampleRecord]:
    cfg, indices = args
    return [run_chain(cfg, i) for i in indices]


def default_threads() -> int:
    env = os.environ.get("EG_CENSUS_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_ensemble(cfg: ChainConfig, threads: Optional[int] = None) -> Iterator[SampleRecord]:
    """Run ``cfg.chains`` independent chains; records come out in chain order.

    The result depends only on the config, not on ``threads``.
    """
    threads = threads or default_threads()
    if threads <= 1 or cfg.chains == 1:
        for i in range(cfg.chains):
            yield run_chain(cfg, i)
        return
    chunk = max(1, min(64, cfg.chains // (4 * threads)))
    slices = [(cfg, range(i, min(i + chunk, cfg.chains))) for i in range(0, cfg.chains, chunk)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for records in pool.map(_run_slice, slices):
            yield from records


def sample_thinned(n: int, steps: int, thin: int, burn_in: int, seed: int) -> Counter:
    """Single long chain; counts canonical keys of every ``thin``-th state after burn-in.

    Only used for uniformity checks; the default protocol samples terminal
    states of independent chains.
    """
    rng = np.random.default_rng(chain_seed(seed, 0))
    counts: Counter = Counter()
    code = 0
    done = 0
    for block in _draw_blocks(rng, n, steps):
        for draw in block:
            cand = _apply_code(n, code, draw)
            if cand != code and is_essential_code(n, cand):
                code = cand
            done += 1
            if done > burn_in and (done - burn_in) % thin == 0:
                counts[code] += 1
    return Counter({canonical_key(Pdag(n, c)): k for c, k in counts.items()})


def _successors(n: int, code: int) -> Iterator[int]:
    for draw in range(draw_space(n)):
        yield _apply_code(n, code, draw)


def kernel_support_bfs(n: int) -> set:
    """Canonical keys of every EG reachable from the empty graph."""
    if not 1 <= n <= 4:
        raise CapExceeded("kernel BFS is capped at n=4")
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for code in frontier:
            for cand in _successors(n, code):
                if cand not in seen and is_essential_code(n, cand):
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return {canonical_key(Pdag(n, c)) for c in seen}


def transition_counts(n: int, states: Iterable[Pdag]) -> Dict[Tuple[int, int], int]:
    """Number of draws moving x to y (x != y, both EGs), keyed by codes."""
    counts: Counter = Counter()
    for g in states:
        for cand in _successors(n, g.code):
            if cand != g.code and is_essential_code(n, cand):
                counts[(g.code, cand)] += 1
    return dict(counts)


def kernel_is_symmetric(n: int, states: Iterable[Pdag]) -> bool:
    counts = transition_counts(n, states)
    return all(counts.get((y, x), 0) == c for (x, y), c in counts.items())
