"""Naive reference implementations used as test oracles.

Nothing here imports the search or flow code under test; only ``Graph`` is
shared, for its adjacency lists.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np

from colnum.graph import Graph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def make_corpus(seed: int = 20241016, count: int = 200, n_max: int = 8) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng, rng.randint(3, n_max), rng.uniform(0.2, 0.8)) for _ in range(count)]


def positions(order, n: int) -> list[float]:
    """Position of each vertex; unordered vertices sit at +inf."""
    pos = [float("inf")] * n
    for i, v in enumerate(order):
        pos[v] = i
    return pos


def less(pos, a: int, b: int) -> bool:
    return pos[a] != float("inf") and pos[a] < pos[b]


def simple_paths(g: Graph, u: int, r: int):
    """Every simple path starting at u with 1..r edges, as vertex tuples."""
    stack = [(u,)]
    while stack:
        path = stack.pop()
        if len(path) > 1:
            yield path
        if len(path) <= r:
            for w in g.neighbors(path[-1]):
                if w not in path:
                    stack.append(path + (w,))


def qualifying_paths(g: Graph, pos, u: int, r: int, weak: bool = False):
    for p in simple_paths(g, u, r):
        v = p[-1]
        if v == u or less(pos, v, u):
            continue
        pivot = v if weak else u
        if all(less(pos, w, pivot) for w in p[1:-1]):
            yield p


def naive_reach(g: Graph, pos, u: int, r: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in qualifying_paths(g, pos, u, r):
        out[p[-1]] = min(out.get(p[-1], r + 1), len(p) - 1)
    return out


def naive_wreach(g: Graph, pos, u: int, r: int) -> set[int]:
    return {p[-1] for p in qualifying_paths(g, pos, u, r, weak=True)}


def max_packing(sets: list[frozenset]) -> int:
    """Largest number of pairwise disjoint sets, by plain recursion."""
    sets = sorted(set(sets), key=len)

    def go(i: int, used: frozenset) -> int:
        if i == len(sets):
            return 0
        best = go(i + 1, used)
        if not sets[i] & used:
            best = max(best, 1 + go(i + 1, used | sets[i]))
        return best

    return go(0, frozenset())


def naive_bcon(g: Graph, pos, u: int, r: int, shortest: bool = False) -> int:
    paths = list(qualifying_paths(g, pos, u, r))
    if shortest:
        dist = naive_reach(g, pos, u, r)
        paths = [p for p in paths if len(p) - 1 == dist[p[-1]]]
    return max_packing([frozenset(p[1:]) for p in paths])


# --- factorial permutation oracle --------------------------------------------


def _prefix_pos(mask: int, u: int, n: int):
    """An order placing ``mask`` (in id order) and then u; everything else unordered."""
    before = [v for v in range(n) if mask >> v & 1]
    return positions(before + [u], n)


def cost_tables(g: Graph, r: int):
    """Per (placed set, next vertex): |reach|, bcon and the back-weak-reach bitmask.

    The back set of v is every earlier u with a path of length <= r to v whose
    internals are all earlier than v; v lies in wreach(u) exactly for those u.
    """
    n = g.n
    size = 1 << n
    reach = np.zeros((size, n), dtype=np.int64)
    bcon = np.zeros((size, n), dtype=np.int64)
    back = np.zeros((size, n), dtype=np.int64)
    for mask in range(size):
        for v in range(n):
            if mask >> v & 1:
                continue
            pos = _prefix_pos(mask, v, n)
            reach[mask, v] = len(naive_reach(g, pos, v, r))
            bcon[mask, v] = naive_bcon(g, pos, v, r)
            bits = 0
            for p in simple_paths(g, v, r):
                a = p[-1]
                if mask >> a & 1 and all(mask >> w & 1 for w in p[1:-1]):
                    bits |= 1 << a
            back[mask, v] = bits
    return reach, bcon, back


@lru_cache(maxsize=None)
def _perm_arrays(n: int):
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    bits = np.left_shift(1, perms)
    before = np.cumsum(bits, axis=1) - bits
    return perms, before


def permutation_optima(g: Graph, r: int) -> dict[str, int]:
    """min over all n! orders of col_r, wcol_r and adm_r."""
    if g.n == 0:
        return {"col": 0, "wcol": 0, "adm": 0}
    reach, bcon, back = cost_tables(g, r)
    perms, before = _perm_arrays(g.n)
    col = reach[before, perms].max(axis=1).min()
    adm = bcon[before, perms].max(axis=1).min()
    backs = back[before, perms]
    counts = np.stack([((backs >> u) & 1).sum(axis=1) for u in range(g.n)], axis=1)
    wcol = counts.max(axis=1).min()
    return {"col": int(col), "wcol": int(wcol), "adm": int(adm)}


def peel_degeneracy(g: Graph) -> int:
    alive = set(g.vertices())
    best = 0
    while alive:
        v = min(alive, key=lambda x: (sum(w in alive for w in g.neighbors(x)), x))
        best = max(best, sum(w in alive for w in g.neighbors(v)))
        alive.remove(v)
    return best


# --- formulas ----------------------------------------------------------------


def random_clause_partition(rng: random.Random, lits: list[int], widths=(2, 3), tries: int = 200):
    """Split a literal multiset into clauses with widths from ``widths`` and no repeated variable."""
    for _ in range(tries):
        pool = lits[:]
        rng.shuffle(pool)
        clauses = []
        ok = True
        while pool:
            w = rng.choice([x for x in widths if x <= len(pool)] or [len(pool)])
            clause = pool[:w]
            if len({abs(x) for x in clause}) != len(clause) or w not in widths:
                ok = False
                break
            clauses.append(tuple(clause))
            pool = pool[w:]
        if ok:
            return clauses
    return None


def brute_satisfiable(n: int, clauses) -> list[bool] | None:
    """Plain 2^n enumeration; index 0 unused in the returned list."""
    for bits in itertools.product((False, True), repeat=n):
        values = [False, *bits]
        if all(any(values[abs(x)] == (x > 0) for x in c) for c in clauses):
            return values
    return None


def random_2c3s(rng: random.Random, n: int):
    """Clauses of width 2-3 in which every literal occurs exactly twice, or None."""
    lits = [s * j for j in range(1, n + 1) for s in (1, 1, -1, -1)]
    return random_clause_partition(rng, lits)


def random_exact(rng: random.Random, n: int, r: int, m: int):
    return [tuple(v * rng.choice((1, -1)) for v in rng.sample(range(1, n + 1), r)) for _ in range(m)]
