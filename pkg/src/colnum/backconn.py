"""Estimated and exact r-backconnectivity.

Every quantity here depends only on ``u`` and the set of vertices that
precede ``u``, so the workhorses take that set as a bitmask (``before``).
Internal path vertices must lie in ``before``; endpoints are any other
vertex except ``u``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import Graph
from .reach import PrefixOrder


class SizeGuardError(RuntimeError):
    """An exhaustive computation would exceed its configured size cap."""


@dataclass
class LevelDag:
    root: int
    r: int
    internal: dict[int, int] = field(default_factory=dict)  # vertex -> layer
    sinks: dict[int, int] = field(default_factory=dict)  # vertex -> d_v
    succ: dict[int, list[int]] = field(default_factory=dict)  # only layer i -> i+1 arcs

    def layers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.r + 1)]
        out[0].append(self.root)
        for v, d in self.internal.items():
            out[d].append(v)
        for v, d in self.sinks.items():
            out[d].append(v)
        return [sorted(layer) for layer in out]

    def dump(self) -> str:
        """One line per layer, sinks starred: ``1: 0 5* 8*``."""
        lines = []
        for d, layer in enumerate(self.layers()):
            tags = [f"{v}*" if v in self.sinks else str(v) for v in layer]
            lines.append(f"{d}: {' '.join(tags)}".rstrip())
        return "\n".join(lines)


def level_dag_from_mask(g: Graph, u: int, before: int, r: int) -> LevelDag:
    if r < 1:
        raise ValueError("radius must be >= 1")
    dag = LevelDag(u, r)
    layer = {u: 0}
    current = [u]
    for d in range(r):
        nxt = []
        for x in current:
            arcs = []
            for y in g.adjacency[x]:
                ly = layer.get(y)
                if ly is None:
                    layer[y] = ly = d + 1
                    if before >> y & 1:
                        if d + 1 < r:
                            dag.internal[y] = d + 1
                            nxt.append(y)
                    elif y != u:
                        dag.sinks[y] = d + 1
                if ly == d + 1 and (y in dag.sinks or y in dag.internal):
                    arcs.append(y)
            dag.succ[x] = arcs
        current = nxt
        if not current:
            break
    for x in current:
        dag.succ.setdefault(x, [])

    # drop internal vertices that lead to no sink, deepest first
    useful = set(dag.sinks)
    for x in sorted(dag.internal, key=dag.internal.get, reverse=True):
        arcs = [y for y in dag.succ.get(x, ()) if y in useful]
        if arcs:
            dag.succ[x] = arcs
            useful.add(x)
        else:
            del dag.internal[x]
            dag.succ.pop(x, None)
    dag.succ[u] = [y for y in dag.succ.get(u, ()) if y in useful]
    for v in dag.sinks:
        dag.succ.pop(v, None)
    return dag


def build_level_dag(g: Graph, sigma: PrefixOrder, u: int, r: int) -> LevelDag:
    return level_dag_from_mask(g, u, sigma.before_mask(u), r)


def _dag_max_flow(dag: LevelDag) -> int:
    """Unit vertex-capacity max flow from the root to all sinks.

    Internal vertex x is split into (x, in) -> (x, out); each sink carries one
    unit to the super-sink. Augmenting paths are found by BFS in the residual
    network.
    """
    if not dag.sinks:
        return 0
    source, target = ("s",), ("t",)
    cap: dict[tuple, dict[tuple, int]] = {}

    def arc(a, b):
        cap.setdefault(a, {})[b] = 1
        cap.setdefault(b, {}).setdefault(a, 0)

    def node_in(x):
        if x == dag.root:
            return source
        return (x, "in") if x in dag.internal else (x, "sink")

    def node_out(x):
        return source if x == dag.root else (x, "out")

    for x in dag.internal:
        arc((x, "in"), (x, "out"))
    for v in dag.sinks:
        arc((v, "sink"), target)
    for x, arcs in dag.succ.items():
        for y in arcs:
            arc(node_out(x), node_in(y))

    flow = 0
    limit = len(dag.succ.get(dag.root, ()))
    while flow < limit:
        parent = {source: None}
        queue = deque([source])
        while queue and target not in parent:
            a = queue.popleft()
            for b, c in cap[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if target not in parent:
            break
        b = target
        while parent[b] is not None:
            a = parent[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1
    return flow


def est_from_mask(g: Graph, u: int, before: int, r: int) -> int:
    return _dag_max_flow(level_dag_from_mask(g, u, before, r))


def estimated_bcon(g: Graph, sigma: PrefixOrder, u: int, r: int) -> int:
    """Max number of disjoint (aside from u) shortest r-qualifying paths from u."""
    return est_from_mask(g, u, sigma.before_mask(u), r)


def qualifying_paths(g: Graph, u: int, before: int, r: int, max_paths: int | None = None) -> list[tuple[int, int]]:
    """All r-qualifying paths from ``u`` as ``(first_vertex, vertex_mask)``; ``u`` is not in the mask."""
    out: list[tuple[int, int]] = []
    adj = g.adjacency

    def dfs(x: int, first: int, mask: int, depth: int) -> None:
        for y in adj[x]:
            if y == u or mask >> y & 1:
                continue
            f = y if first < 0 else first
            if before >> y & 1:
                if depth + 1 < r:
                    dfs(y, f, mask | 1 << y, depth + 1)
            else:
                out.append((f, mask | 1 << y))
                if max_paths is not None and len(out) > max_paths:
                    raise SizeGuardError(f"more than {max_paths} qualifying paths from vertex {u}")

    dfs(u, -1, 0, 0)
    return out


def max_disjoint_packing(paths: list[tuple[int, int]]) -> int:
    """Largest set of pairwise vertex-disjoint paths (exhaustive, memoized)."""
    masks = sorted({m for _, m in paths}, key=lambda m: (m.bit_count(), m))
    minimal: list[int] = []
    for m in masks:
        if not any(q & m == q for q in minimal):
            minimal.append(m)
    keep = set(minimal)
    groups: dict[int, list[int]] = {}
    for f, m in paths:
        if m in keep:
            groups.setdefault(f, [])
            if m not in groups[f]:
                groups[f].append(m)
    glist = sorted(groups.values(), key=len)
    memo: dict[tuple[int, int], int] = {}

    def best(i: int, used: int) -> int:
        if i == len(glist):
            return 0
        key = (i, used)
        hit = memo.get(key)
        if hit is not None:
            return hit
        value = best(i + 1, used)
        if value < len(glist) - i:
            for m in glist[i]:
                if not m & used:
                    value = max(value, 1 + best(i + 1, used | m))
                    if value == len(glist) - i:
                        break
        memo[key] = value
        return value

    return best(0, 0)


def bcon_from_mask(g: Graph, u: int, before: int, r: int, max_paths: int | None = 200_000) -> int:
    return max_disjoint_packing(qualifying_paths(g, u, before, r, max_paths))


def exact_bcon(g: Graph, sigma: PrefixOrder, u: int, r: int, max_paths: int | None = 200_000) -> int:
    """r-backconnectivity of ``u`` by path enumeration plus exhaustive packing.

    Flow would overcount here: a flow path may be longer than r once the
    shortest-path restriction is dropped.
    """
    if r < 1:
        raise ValueError("radius must be >= 1")
    return bcon_from_mask(g, u, sigma.before_mask(u), r, max_paths)


def exact_admissibility(g: Graph, r: int, k: int | None = None, budget=None):
    """adm_r(g) when ``k`` is None, otherwise whether adm_r(g) <= k.

    Raises SizeGuardError if the search budget runs out.
    """
    from .exact import Answer, decide, minimize

    if k is None:
        res = minimize(g, r, "adm", budget)
        if res.value is None:
            raise SizeGuardError(f"budget exhausted; adm_{r} in {res.bracket}")
        return res.value
    res = decide(g, r, "adm", k, budget)
    if res.answer is Answer.BUDGET:
        raise SizeGuardError("budget exhausted")
    return res.answer is Answer.YES
