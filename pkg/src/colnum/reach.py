"""Prefix orders, (weak) r-reachability and per-order coloring numbers.

Orders follow the left-to-right convention: a vertex reaches to the right
using vertices to its left. Nothing is reachable from itself.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph


class PrefixOrder:
    """Placed vertices (leftmost first); everything else is unordered.

    ``a`` precedes ``b`` iff ``a`` is placed and ``b`` is either unordered or
    placed later. Two unordered vertices are incomparable.
    """

    __slots__ = ("n", "placed", "pos")

    def __init__(self, n: int, placed: Iterable[int] = ()):
        self.n = n
        self.placed: list[int] = []
        self.pos: list[int] = [-1] * n
        for v in placed:
            self.append(v)

    @classmethod
    def total(cls, order: Sequence[int]) -> "PrefixOrder":
        return cls(len(order), order)

    def append(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")
        if self.pos[v] >= 0:
            raise ValueError(f"vertex {v} placed twice")
        self.pos[v] = len(self.placed)
        self.placed.append(v)

    def copy(self) -> "PrefixOrder":
        other = PrefixOrder(self.n)
        other.placed = list(self.placed)
        other.pos = list(self.pos)
        return other

    def less(self, a: int, b: int) -> bool:
        pa = self.pos[a]
        if pa < 0:
            return False
        pb = self.pos[b]
        return pb < 0 or pa < pb

    def is_placed(self, v: int) -> bool:
        return self.pos[v] >= 0

    def is_total(self) -> bool:
        return len(self.placed) == self.n

    def unordered(self) -> list[int]:
        return [v for v in range(self.n) if self.pos[v] < 0]

    def before_mask(self, u: int) -> int:
        """Bitset of the vertices that precede ``u``."""
        p = self.pos[u]
        upto = self.placed if p < 0 else self.placed[:p]
        mask = 0
        for w in upto:
            mask |= 1 << w
        return mask

    def __len__(self) -> int:
        return len(self.placed)

    def __repr__(self) -> str:
        return f"PrefixOrder(n={self.n}, placed={self.placed})"


def reach_distances(g: Graph, sigma: PrefixOrder, u: int, r: int) -> dict[int, int]:
    """``{v: d_v}`` for every v in reach_r(u); d_v is the least i with v i-reachable."""
    if r < 1:
        raise ValueError("radius must be >= 1")
    less = sigma.less
    dist = {u: 0}
    queue = deque([u])
    found: dict[int, int] = {}
    while queue:
        x = queue.popleft()
        d = dist[x]
        if d == r:
            continue
        for y in g.adjacency[x]:
            if y in dist:
                continue
            dist[y] = d + 1
            if less(y, u):
                queue.append(y)
            else:
                found[y] = d + 1
    return found


def reach_set(g: Graph, sigma: PrefixOrder, u: int, r: int) -> set[int]:
    return set(reach_distances(g, sigma, u, r))


def wreach_set(g: Graph, sigma: PrefixOrder, u: int, r: int) -> set[int]:
    """Endpoints of weak r-qualifying paths from ``u``.

    Walks from ``u`` are labelled with the latest position of any internal
    vertex; ``v`` qualifies when some walk of length <= r reaches it with
    every internal vertex before ``v``. Shortcutting such a walk yields a
    path with a subset of its internals, so walks suffice.
    """
    if r < 1:
        raise ValueError("radius must be >= 1")
    inf = sigma.n + 1
    # unordered vertices sit after every placed one; as internals they never qualify
    rank = [p if p >= 0 else inf for p in sigma.pos]
    best = {u: -1}  # min over walks of the max internal rank
    frontier = {u: -1}
    for _ in range(r):
        nxt: dict[int, int] = {}
        for x, lab in frontier.items():
            through = lab if x == u else max(lab, rank[x])
            for y in g.adjacency[x]:
                if through < nxt.get(y, inf + 1):
                    nxt[y] = through
        for y, lab in nxt.items():
            if lab < best.get(y, inf + 1):
                best[y] = lab
        frontier = {y: lab for y, lab in nxt.items() if lab < inf}
        if not frontier:
            break
    out = set()
    for v, lab in best.items():
        if v == u or sigma.less(v, u):
            continue
        # an unordered v has rank inf, so its internals must all be placed
        if lab < rank[v]:
            out.add(v)
    return out


@dataclass
class ReachReport:
    r: int
    reach: list[dict[int, int]]  # reach[u] = {v: d_v}
    wreach: list[set[int]]

    @property
    def col(self) -> int:
        return max((len(s) for s in self.reach), default=0)

    @property
    def wcol(self) -> int:
        return max((len(s) for s in self.wreach), default=0)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "col": self.col,
            "wcol": self.wcol,
            "reach": {str(u): sorted(s) for u, s in enumerate(self.reach)},
            "wreach": {str(u): sorted(s) for u, s in enumerate(self.wreach)},
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _backward_wreach(g: Graph, sigma: PrefixOrder, v: int, r: int) -> list[int]:
    """All u before ``v`` that weakly reach ``v``: BFS from v through predecessors of v."""
    pv = sigma.pos[v]
    pos = sigma.pos
    dist = {v: 0}
    queue = deque([v])
    hits = []
    while queue:
        x = queue.popleft()
        d = dist[x]
        if d == r:
            continue
        for y in g.adjacency[x]:
            if y in dist:
                continue
            if pos[y] < pv:
                dist[y] = d + 1
                hits.append(y)
                queue.append(y)
    return hits


def evaluate_order(g: Graph, sigma: PrefixOrder | Sequence[int], r: int) -> ReachReport:
    """reach/wreach of every vertex under a total order, in O(n*m) per radius."""
    if not isinstance(sigma, PrefixOrder):
        sigma = as_total_order(g, sigma)
    if not sigma.is_total() or sigma.n != g.n:
        raise ValueError("evaluate_order needs a total order over all vertices")
    if r < 1:
        raise ValueError("radius must be >= 1")
    reach = [reach_distances(g, sigma, u, r) for u in g.vertices()]
    wreach: list[set[int]] = [set() for _ in g.vertices()]
    for v in g.vertices():
        for u in _backward_wreach(g, sigma, v, r):
            wreach[u].add(v)
    return ReachReport(r, reach, wreach)


def as_total_order(g: Graph, order: Sequence[int]) -> PrefixOrder:
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("order is not a permutation of the graph's vertices")
    return PrefixOrder.total(order)


def parse_order(text: str) -> list[int]:
    return [int(tok) for tok in text.split()]


def format_order(order: Sequence[int]) -> str:
    return " ".join(map(str, order)) + "\n"
