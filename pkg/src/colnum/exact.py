"""Exact decision and minimization of col_r, wcol_r and adm_r by prefix search.

For col and adm the cost of placing ``u`` depends only on the *set* of
vertices already placed, so the search runs over subsets and remembers
dead subsets. For wcol the search carries per-vertex weak-reach counters;
they only grow as the prefix grows, so exceeding ``k`` prunes soundly, and
the vertices a placed ``u`` will certainly still weakly reach give a lower
bound on its final count.

Vertices with identical (open or closed) neighborhoods are interchangeable
by an automorphism, so with ``symmetry=True`` each such twin class is placed
in increasing id order.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .backconn import bcon_from_mask, est_from_mask
from .graph import Graph, degeneracy
from .reach import as_total_order, evaluate_order

PARAMS = ("col", "wcol", "adm")


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    BUDGET = "budget_exhausted"


@dataclass
class SearchBudget:
    max_nodes: int = 5_000_000
    max_seconds: float | None = None

    def __post_init__(self):
        if self.max_nodes <= 0 or (self.max_seconds is not None and self.max_seconds <= 0):
            raise ValueError("search budget must be positive")


@dataclass
class DecisionResult:
    param: str
    r: int
    k: int
    answer: Answer
    order: list[int] | None = None
    value: int | None = None  # evaluated value of ``order``
    nodes_expanded: int = 0

    def to_dict(self) -> dict:
        return {
            "parameter": self.param,
            "r": self.r,
            "k": self.k,
            "answer": self.answer.value,
            "value": self.value,
            "order": self.order,
            "nodes_expanded": self.nodes_expanded,
        }


@dataclass
class MinimizeResult:
    param: str
    r: int
    value: int | None
    bracket: tuple[int, int]
    order: list[int]  # best witness found; its value is bracket[1]
    nodes_expanded: int = 0
    trace: list[tuple[int, str]] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        out = {
            "parameter": self.param,
            "r": self.r,
            "order": self.order,
            "nodes_expanded": self.nodes_expanded,
        }
        if self.value is not None:
            out["value"] = self.value
        else:
            out["bracket"] = list(self.bracket)
        return out


class _OutOfBudget(Exception):
    pass


# --- bitset kernels ----------------------------------------------------------


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def reach_mask(adj: Sequence[int], u: int, placed: int, r: int) -> int:
    """Unplaced vertices reachable from ``u`` by paths of length <= r with placed internals."""
    seen = 1 << u
    frontier = seen
    out = 0
    for _ in range(r):
        nxt = 0
        for w in _bits(frontier):
            nxt |= adj[w]
        nxt &= ~seen
        if not nxt:
            break
        seen |= nxt
        out |= nxt & ~placed
        frontier = nxt & placed
        if not frontier:
            break
    return out


def back_mask(adj: Sequence[int], v: int, placed: int, r: int) -> int:
    """Placed vertices within distance r of ``v`` through placed internals."""
    seen = 1 << v
    frontier = seen
    out = 0
    for _ in range(r):
        nxt = 0
        for w in _bits(frontier):
            nxt |= adj[w]
        nxt &= placed & ~seen
        if not nxt:
            break
        seen |= nxt
        out |= nxt
        frontier = nxt
    return out


def _balls(adj: Sequence[int], n: int, radius: int) -> list[int]:
    out = []
    for v in range(n):
        seen = frontier = 1 << v
        for _ in range(radius):
            nxt = 0
            for w in _bits(frontier):
                nxt |= adj[w]
            frontier = nxt & ~seen
            seen |= nxt
        out.append(seen & ~(1 << v))
    return out


def twin_predecessors(g: Graph) -> list[int]:
    """For each vertex, the next-smaller member of its twin class, or -1."""
    classes: dict[tuple, list[int]] = {}
    for v in g.vertices():
        classes.setdefault(("open", g.adj_masks[v]), []).append(v)
    for v in g.vertices():
        classes.setdefault(("closed", g.adj_masks[v] | 1 << v), []).append(v)
    pred = [-1] * g.n
    for members in classes.values():
        for a, b in zip(members, members[1:]):
            pred[b] = a
    return pred


# --- evaluation --------------------------------------------------------------


def order_value(g: Graph, order: Sequence[int], r: int, param: str) -> int:
    """col_r, wcol_r or adm_r of ``g`` under a fixed total order."""
    if param == "adm":
        as_total_order(g, order)
        placed = 0
        best = 0
        for u in order:
            best = max(best, bcon_from_mask(g, u, placed, r, None))
            placed |= 1 << u
        return best
    report = evaluate_order(g, order, r)
    if param == "col":
        return report.col
    if param == "wcol":
        return report.wcol
    raise ValueError(f"unknown parameter {param!r}")


# --- search ------------------------------------------------------------------


class _Search:
    def __init__(self, g: Graph, r: int, k: int, budget: SearchBudget, symmetry: bool, hint=None):
        self.g = g
        self.r = r
        self.k = k
        self.adj = g.adj_masks
        self.full = (1 << g.n) - 1
        self.budget = budget
        self.nodes = 0
        self.deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
        self.pred = twin_predecessors(g) if symmetry else [-1] * g.n
        self.hint = [0] * g.n
        if hint is not None:
            for i, v in enumerate(hint):
                self.hint[v] = i
        self.order: list[int] = []
        self.ball = _balls(self.adj, g.n, r)
        self._reach_cache: dict[tuple[int, int], int] = {}

    def reach_count(self, u: int, placed: int) -> int:
        """|reach_mask(u, placed)|; it only depends on which vertices of u's r-ball are placed."""
        key = (u, placed & self.ball[u])
        hit = self._reach_cache.get(key)
        if hit is None:
            if len(self._reach_cache) > 2_000_000:
                self._reach_cache.clear()
            hit = self._reach_cache[key] = reach_mask(self.adj, u, placed, self.r).bit_count()
        return hit

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfBudget
        if self.deadline is not None and not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise _OutOfBudget

    def candidates(self, placed: int) -> list[int]:
        out = []
        pred = self.pred
        for v in _bits(self.full & ~placed):
            p = pred[v]
            if p < 0 or placed >> p & 1:
                out.append(v)
        return out


class _SetSearch(_Search):
    """Subset search for col and adm, where a placement's cost depends only on the placed set."""

    def __init__(self, *args, param: str, **kwargs):
        super().__init__(*args, **kwargs)
        self.param = param
        self.dead: set[int] = set()

    def fits(self, u: int, placed: int) -> tuple[bool, int]:
        """(cost <= k, sort key)."""
        reach = self.reach_count(u, placed)
        if self.param == "col" or reach <= self.k:
            return reach <= self.k, reach
        # adm: est <= bcon <= |reach|
        if est_from_mask(self.g, u, placed, self.r) > self.k:
            return False, reach
        return bcon_from_mask(self.g, u, placed, self.r, None) <= self.k, reach

    def start_with(self, u: int) -> bool:
        if not self.fits(u, 0)[0]:
            return False
        self.order.append(u)
        return self.run(1 << u)

    def run(self, placed: int = 0) -> bool:
        if placed == self.full:
            return True
        if placed in self.dead:
            return False
        self.tick()
        options = []
        for u in self.candidates(placed):
            ok, key = self.fits(u, placed)
            if ok:
                options.append((key, self.hint[u], u))
        options.sort()
        for _, _, u in options:
            self.order.append(u)
            if self.run(placed | 1 << u):
                return True
            self.order.pop()
        self.dead.add(placed)
        return False


class _WcolSearch(_Search):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        n = self.g.n
        self.count = [0] * n
        self.near = _balls(self.adj, n, max(self.r - 1, 0))
        self.dead: set[tuple] = set()

    def key(self, placed: int) -> tuple:
        unplaced = self.full & ~placed
        ball = self.ball
        return placed, tuple(self.count[u] for u in _bits(placed) if ball[u] & unplaced)

    def start_with(self, v: int) -> bool:
        if self.reach_count(v, 0) > self.k:
            return False
        self.order.append(v)
        return self.run(1 << v)

    def run(self, placed: int = 0) -> bool:
        if placed == self.full:
            return True
        key = self.key(placed)
        if key in self.dead:
            return False
        self.tick()
        adj, r, k, count = self.adj, self.r, self.k, self.count
        options = []
        for v in self.candidates(placed):
            own = self.reach_count(v, placed)
            if own <= k:
                options.append((own, self.hint[v], v))
        options.sort()
        for _, _, v in options:
            hits = back_mask(adj, v, placed, r)
            if any(count[u] >= k for u in _bits(hits)):
                continue
            for u in _bits(hits):
                count[u] += 1
            after = placed | 1 << v
            ok = True
            for u in _bits((self.near[v] & after) | 1 << v):
                if count[u] + self.reach_count(u, after) > k:
                    ok = False
                    break
            if ok:
                self.order.append(v)
                if self.run(after):
                    return True
                self.order.pop()
            for u in _bits(hits):
                count[u] -= 1
        self.dead.add(key)
        return False


def _make_search(g, r, param, k, budget, symmetry, hint):
    if param == "wcol":
        return _WcolSearch(g, r, k, budget, symmetry, hint)
    if param in ("col", "adm"):
        return _SetSearch(g, r, k, budget, symmetry, hint, param=param)
    raise ValueError(f"unknown parameter {param!r}")


def _run_branch(args) -> tuple[str, list[int] | None, int]:
    g, r, param, k, budget, symmetry, hint, first = args
    search = _make_search(g, r, param, k, budget, symmetry, hint)
    try:
        ok = search.start_with(first)
    except _OutOfBudget:
        return Answer.BUDGET.value, None, search.nodes
    return (Answer.YES.value if ok else Answer.NO.value), (search.order if ok else None), search.nodes


def decide(
    g: Graph,
    r: int,
    param: str,
    k: int,
    budget: SearchBudget | None = None,
    symmetry: bool = True,
    workers: int = 1,
    hint: Sequence[int] | None = None,
) -> DecisionResult:
    """Is param_r(g) <= k?  "no" is only returned after exhausting the search."""
    if r < 1:
        raise ValueError("radius must be >= 1")
    if k < 0:
        raise ValueError("threshold must be non-negative")
    if param not in PARAMS:
        raise ValueError(f"unknown parameter {param!r}")
    budget = budget or SearchBudget()
    if workers > 1 and g.n > 1:
        return _decide_parallel(g, r, param, k, budget, symmetry, workers, hint)
    search = _make_search(g, r, param, k, budget, symmetry, hint)
    try:
        ok = search.run()
    except _OutOfBudget:
        return DecisionResult(param, r, k, Answer.BUDGET, nodes_expanded=search.nodes)
    if not ok:
        return DecisionResult(param, r, k, Answer.NO, nodes_expanded=search.nodes)
    return _certified(g, r, param, k, list(search.order), search.nodes)


def _certified(g, r, param, k, order, nodes) -> DecisionResult:
    value = order_value(g, order, r, param)
    if value > k:
        raise AssertionError(f"witness order has {param}_{r} = {value} > {k}")
    return DecisionResult(param, r, k, Answer.YES, order, value, nodes)


def _decide_parallel(g, r, param, k, budget, symmetry, workers, hint) -> DecisionResult:
    pred = twin_predecessors(g) if symmetry else [-1] * g.n
    firsts = [v for v in g.vertices() if pred[v] < 0]
    jobs = [(g, r, param, k, budget, symmetry, hint, v) for v in firsts]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_run_branch, jobs))
    nodes = sum(res[2] for res in results)
    for answer, order, _ in results:  # first-vertex order keeps the output deterministic
        if answer == Answer.YES.value:
            return _certified(g, r, param, k, order, nodes)
    if any(res[0] == Answer.BUDGET.value for res in results):
        return DecisionResult(param, r, k, Answer.BUDGET, nodes_expanded=nodes)
    return DecisionResult(param, r, k, Answer.NO, nodes_expanded=nodes)


def decide_col(g: Graph, r: int, k: int, budget: SearchBudget | None = None, **kw) -> DecisionResult:
    return decide(g, r, "col", k, budget, **kw)


def decide_wcol(g: Graph, r: int, k: int, budget: SearchBudget | None = None, **kw) -> DecisionResult:
    return decide(g, r, "wcol", k, budget, **kw)


def decide_adm(g: Graph, r: int, k: int, budget: SearchBudget | None = None, **kw) -> DecisionResult:
    return decide(g, r, "adm", k, budget, **kw)


def minimize(
    g: Graph,
    r: int,
    param: str,
    budget: SearchBudget | None = None,
    symmetry: bool = True,
    workers: int = 1,
) -> MinimizeResult:
    """Exact optimum by descending thresholds from the greedy order's value.

    The node budget is shared across all threshold decisions. On exhaustion
    the result carries ``value=None`` and the bracket ``[lo, hi]``.
    """
    from .greedy import bounded_coloring

    if param not in PARAMS:
        raise ValueError(f"unknown parameter {param!r}")
    budget = budget or SearchBudget()
    order = bounded_coloring(g, r).order
    hi = order_value(g, order, r, param)
    # adm_r >= adm_1 = degeneracy, and adm <= col <= wcol
    lo = degeneracy(g)
    nodes = 0
    trace: list[tuple[int, str]] = []
    start = time.monotonic()
    while hi > lo:
        remaining = SearchBudget(
            max_nodes=max(budget.max_nodes - nodes, 1),
            max_seconds=None if budget.max_seconds is None else max(budget.max_seconds - (time.monotonic() - start), 1e-3),
        )
        res = decide(g, r, param, hi - 1, remaining, symmetry, workers, hint=order)
        nodes += res.nodes_expanded
        trace.append((hi - 1, res.answer.value))
        if res.answer is Answer.YES:
            order, hi = res.order, res.value
        elif res.answer is Answer.NO:
            lo = hi
        else:
            return MinimizeResult(param, r, None, (lo, hi), order, nodes, trace)
    return MinimizeResult(param, r, hi, (hi, hi), order, nodes, trace)
