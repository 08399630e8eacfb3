"""Simple undirected graphs with dense 0-based vertex ids."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Container, Iterable


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adjacency[v]`` is the sorted neighbor tuple of ``v``."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        # bitset form, used by the exhaustive solvers
        out = []
        for a in self.adjacency:
            mask = 0
            for w in a:
                mask |= 1 << w
            out.append(mask)
        return tuple(out)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj_masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def vertices(self) -> range:
        return range(self.n)

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")


class GraphBuilder:
    """Mutable accumulator used by the reduction builders and ``subdivide_edge``."""

    def __init__(self, n: int = 0):
        self.n = n
        self._edges: set[tuple[int, int]] = set()

    @classmethod
    def from_graph(cls, g: Graph) -> "GraphBuilder":
        b = cls(g.n)
        b._edges.update(g.edges())
        return b

    def add_vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        self._edges.add((min(u, v), max(u, v)))

    def remove_edge(self, u: int, v: int) -> None:
        self._edges.discard((min(u, v), max(u, v)))

    def subdivide(self, u: int, v: int, ell: int) -> list[int]:
        if ell < 0:
            raise ValueError("ell must be non-negative")
        if u == v:
            raise ValueError("cannot subdivide a self-loop")
        fresh = [self.add_vertex() for _ in range(ell)]
        path = [u, *fresh, v]
        for a, b in zip(path, path[1:]):
            self.add_edge(a, b)
        return fresh

    def build(self) -> Graph:
        return Graph.from_edges(self.n, self._edges)


def subdivide_edge(g: Graph, u: int, v: int, ell: int) -> tuple[Graph, list[int]]:
    """Add a ``u``-``v`` path with ``ell`` fresh internal vertices.

    ``ell == 0`` adds the plain edge. An existing ``uv`` edge is fine for
    ``ell >= 1``: the new path is internally disjoint from everything.
    """
    g.check_vertex(u)
    g.check_vertex(v)
    b = GraphBuilder.from_graph(g)
    fresh = b.subdivide(u, v, ell)
    return b.build(), fresh


def bfs_layers(
    g: Graph,
    root: int,
    allowed: Callable[[int], bool] | Container[int] | None = None,
    max_depth: int | None = None,
) -> dict[int, int]:
    """Shortest distances from ``root`` where only ``root`` and allowed vertices are expanded.

    Vertices failing ``allowed`` still receive a layer when first touched but
    are never expanded. Unreached vertices are absent from the result.
    ``allowed`` is a predicate or a collection of vertices.
    """
    g.check_vertex(root)
    if allowed is not None and not callable(allowed):
        allowed = allowed.__contains__
    layer = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        d = layer[x]
        if max_depth is not None and d >= max_depth:
            continue
        if x != root and allowed is not None and not allowed(x):
            continue
        for y in g.adjacency[x]:
            if y not in layer:
                layer[y] = d + 1
                queue.append(y)
    return layer


def degeneracy(g: Graph) -> int:
    """Classic bucket peel: repeatedly delete a minimum-degree vertex."""
    deg = [g.degree(v) for v in g.vertices()]
    buckets: list[set[int]] = [set() for _ in range(max(deg, default=0) + 1)]
    for v, d in enumerate(deg):
        buckets[d].add(v)
    removed = [False] * g.n
    best = 0
    low = 0
    for _ in range(g.n):
        low = max(low - 1, 0)
        while not buckets[low]:
            low += 1
        v = buckets[low].pop()
        best = max(best, low)
        removed[v] = True
        for w in g.adjacency[v]:
            if not removed[w]:
                buckets[deg[w]].remove(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
    return best


# --- text formats -----------------------------------------------------------


def _as_text(data: str | bytes) -> str:
    return data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data


def detect_format(data: str | bytes) -> str:
    for line in _as_text(data).splitlines():
        s = line.strip()
        if not s or s.startswith(("c", "#", "%")):
            continue
        return "dimacs" if s.startswith(("p", "e ")) else "edge_list"
    return "edge_list"


def parse_graph(data: str | bytes, format: str = "auto") -> Graph:
    text = _as_text(data)
    if format == "auto":
        format = detect_format(text)
    if format == "dimacs":
        return _parse_dimacs(text)
    if format in ("edge_list", "edges"):
        return _parse_edge_list(text)
    raise ValueError(f"unknown graph format {format!r}")


def _parse_dimacs(text: str) -> Graph:
    n = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphFormatError(f"line {lineno}: malformed header {line.strip()!r}")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: malformed header {line.strip()!r}") from None
            if n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: malformed edge line")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer vertex id") from None
            _check_edge(lineno, u, v, n, offset=1)
            edges.append((u, v))
        else:
            raise GraphFormatError(f"line {lineno}: unexpected line {line.strip()!r}")
    if n is None:
        raise GraphFormatError("missing 'p edge' header")
    return Graph.from_edges(n, edges)


def _parse_edge_list(text: str) -> Graph:
    n_hint = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body, _, comment = line.partition("#")
        tokens = comment.split()
        # "# vertices N" keeps trailing isolated vertices across a round trip
        if len(tokens) == 2 and tokens[0] == "vertices" and tokens[1].isdigit():
            n_hint = int(tokens[1])
        parts = body.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {body.strip()!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex id") from None
        _check_edge(lineno, u, v, None, offset=0)
        edges.append((u, v))
    n = max((max(e) for e in edges), default=-1) + 1
    if n_hint is not None:
        if n_hint < n:
            raise GraphFormatError(f"vertex count {n_hint} smaller than max id + 1 = {n}")
        n = n_hint
    return Graph.from_edges(n, edges)


def _check_edge(lineno: int, u: int, v: int, n: int | None, offset: int) -> None:
    for x in (u, v):
        if x < 0 or (n is not None and x >= n):
            raise GraphFormatError(f"line {lineno}: vertex id {x + offset} out of range")
    if u == v:
        raise GraphFormatError(f"line {lineno}: self-loop at vertex {u + offset}")


def to_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def to_edge_list(g: Graph) -> str:
    lines = [f"# vertices {g.n}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def serialize_graph(g: Graph, format: str = "edge_list") -> str:
    if format == "dimacs":
        return to_dimacs(g)
    if format in ("edge_list", "edges"):
        return to_edge_list(g)
    raise ValueError(f"unknown graph format {format!r}")
