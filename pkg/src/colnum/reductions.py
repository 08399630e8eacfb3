"""Graphs G(phi) whose coloring numbers encode satisfiability of phi.

Three constructions are provided:

* ``wcol2``: phi satisfiable iff wcol_2(G) <= 5 (2-Clause 3-SAT input).
* ``wcolr``: phi satisfiable iff wcol_r(G) <= 2r - 1, r >= 3 (Exact r-SAT input).
* ``colr``:  phi satisfiable iff col_r(G) <= 6, r >= 2 (2-Clause 3-SAT input).

Vertex ids are assigned in formula order (clauses, then variables, then the
clique, then subdivision vertices), so builds are reproducible.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, GraphBuilder
from .reach import evaluate_order
from .sat import CnfFormula

KINDS = ("wcol2", "wcolr", "colr")


@dataclass(frozen=True)
class Role:
    kind: str  # clause | literal_pos | literal_neg | filler | clique | subdivision
    index: tuple[int, ...]

    def label(self) -> str:
        return f"{self.kind}({','.join(map(str, self.index))})"

    @classmethod
    def parse(cls, text: str) -> "Role":
        kind, _, rest = text.partition("(")
        inner = rest.rstrip(")")
        return cls(kind, tuple(int(x) for x in inner.split(",")) if inner else ())


@dataclass
class ReductionGraph:
    kind: str
    r: int
    formula: CnfFormula
    graph: Graph
    roles: tuple[Role, ...]
    strict_shape: bool
    # (clause-side endpoint, literal-side endpoint, internal vertices in path order)
    connections: tuple[tuple[int, int, tuple[int, ...]], ...] = ()
    _index: dict[Role, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {role: v for v, role in enumerate(self.roles)}

    def vertex(self, kind: str, *index: int) -> int:
        return self._index[Role(kind, index)]

    def literal_vertex(self, j: int, positive: bool) -> int:
        return self.vertex("literal_pos" if positive else "literal_neg", j)

    @property
    def threshold(self) -> int:
        return {"wcol2": 5, "wcolr": 2 * self.r - 1, "colr": 6}[self.kind]

    @property
    def parameter(self) -> str:
        return "col" if self.kind == "colr" else "wcol"

    def roles_json(self) -> str:
        return json.dumps({str(v): role.label() for v, role in enumerate(self.roles)}, indent=1)

    def metadata(self) -> dict:
        return {
            "kind": self.kind,
            "r": self.r,
            "n": self.graph.n,
            "m": self.graph.m,
            "threshold": self.threshold,
            "parameter": self.parameter,
            "strict_shape": self.strict_shape,
        }


def _check_widths(phi: CnfFormula, lo: int, hi: int, what: str) -> None:
    for i, c in enumerate(phi.clauses):
        if not lo <= len(c) <= hi:
            raise ValueError(f"clause {i} has {len(c)} literals; {what}")


class _Layout:
    """Collects vertices with their roles."""

    def __init__(self):
        self.b = GraphBuilder()
        self.roles: list[Role] = []

    def add(self, kind: str, *index: int) -> int:
        self.roles.append(Role(kind, index))
        return self.b.add_vertex()

    def literals(self, n: int) -> dict[int, int]:
        """Vertices v_j, v'_j joined by an edge; keyed by signed literal."""
        lit = {}
        for j in range(1, n + 1):
            lit[j] = self.add("literal_pos", j)
            lit[-j] = self.add("literal_neg", j)
            self.b.add_edge(lit[j], lit[-j])
        return lit

    def subdivided(self, a: int, b: int, ell: int, conn: list) -> None:
        cid = len(conn)
        fresh = []
        for pos in range(1, ell + 1):
            fresh.append(self.add("subdivision", cid, pos))
        path = [a, *fresh, b]
        for x, y in zip(path, path[1:]):
            self.b.add_edge(x, y)
        conn.append((a, b, tuple(fresh)))


def build_wcol2(phi: CnfFormula) -> ReductionGraph:
    _check_widths(phi, 2, 3, "the wcol2 construction needs 2 or 3")
    lay = _Layout()
    blocks = []
    for i, c in enumerate(phi.clauses):
        us = [lay.add("clause", i, ell) for ell in range(1, 7)]
        fillers = [lay.add("filler", i, f) for f in (0, 1)] if len(c) == 2 else []
        for f in fillers:
            for u in us:
                lay.b.add_edge(f, u)
        blocks.append(us)
    lit = lay.literals(phi.n)
    for c, us in zip(phi.clauses, blocks):
        for x in c:
            for u in us:
                lay.b.add_edge(lit[x], u)
    return ReductionGraph("wcol2", 2, phi, lay.b.build(), tuple(lay.roles), phi.is_2clause3sat())


def build_wcolr(phi: CnfFormula, r: int) -> ReductionGraph:
    if r < 3:
        raise ValueError(
            f"the wcolr construction needs r >= 3 (got r={r}); use build_wcol2 for r = 2"
        )
    _check_widths(phi, r, r, f"the wcolr construction needs exactly r = {r}")
    lay = _Layout()
    blocks = [[lay.add("clause", i, ell) for ell in range(1, 2 * r + 1)] for i in range(phi.m)]
    lit = lay.literals(phi.n)
    conn: list = []
    for c, us in zip(phi.clauses, blocks):
        for u in us:
            for x in c:
                for _ in range(2):
                    lay.subdivided(u, lit[x], r - 2, conn)
    return ReductionGraph("wcolr", r, phi, lay.b.build(), tuple(lay.roles), True, tuple(conn))


def build_colr(phi: CnfFormula, r: int) -> ReductionGraph:
    if r < 2:
        raise ValueError(f"the colr construction needs r >= 2 (got r={r})")
    _check_widths(phi, 2, 3, "the colr construction needs 2 or 3")
    lay = _Layout()
    us = [lay.add("clause", i) for i in range(phi.m)]
    lit = lay.literals(phi.n)
    w = [None] + [lay.add("clique", t) for t in range(1, 8)]
    for a in range(1, 8):
        for b in range(a + 1, 8):
            lay.b.add_edge(w[a], w[b])
    for c, u in zip(phi.clauses, us):
        for t in range(1, 5):
            lay.b.add_edge(u, w[t])
        if len(c) == 2:
            lay.b.add_edge(u, w[5])
    for j in range(1, phi.n + 1):
        for t in (2, 3, 4):
            lay.b.add_edge(lit[j], w[t])
        for t in (5, 6, 7):
            lay.b.add_edge(lit[-j], w[t])
    conn: list = []
    for c, u in zip(phi.clauses, us):
        for x in c:
            lay.subdivided(u, lit[x], r - 1, conn)
    return ReductionGraph("colr", r, phi, lay.b.build(), tuple(lay.roles), phi.is_2clause3sat(), tuple(conn))


def build(phi: CnfFormula, kind: str, r: int | None = None) -> ReductionGraph:
    if kind == "wcol2":
        if r not in (None, 2):
            raise ValueError("the wcol2 construction is fixed at r = 2")
        return build_wcol2(phi)
    if kind == "wcolr":
        return build_wcolr(phi, 3 if r is None else r)
    if kind == "colr":
        return build_colr(phi, 2 if r is None else r)
    raise ValueError(f"unknown reduction kind {kind!r}")


# --- orders and assignments --------------------------------------------------


def witness_order(rg: ReductionGraph, assignment: Sequence[bool]) -> list[int]:
    """Total order meeting the construction's threshold, built from a satisfying assignment.

    ``assignment[j]`` is the value of x_j (index 0 unused).
    """
    phi = rg.formula
    if len(assignment) < phi.n + 1 or not phi.satisfied_by(assignment):
        raise ValueError("assignment does not satisfy the source formula")
    true_lit = {j: rg.literal_vertex(j, assignment[j]) for j in range(1, phi.n + 1)}
    false_lit = {j: rg.literal_vertex(j, not assignment[j]) for j in range(1, phi.n + 1)}
    subdivision = [v for v, role in enumerate(rg.roles) if role.kind == "subdivision"]

    if rg.kind == "wcol2":
        order = []
        for i, c in enumerate(phi.clauses):
            order += [rg.vertex("clause", i, ell) for ell in range(1, 7)]
            if len(c) == 2:
                order += [rg.vertex("filler", i, 0), rg.vertex("filler", i, 1)]
        for j in range(1, phi.n + 1):
            order += [false_lit[j], true_lit[j]]
        return order
    if rg.kind == "wcolr":
        order = sorted(subdivision)
        for i in range(phi.m):
            order += [rg.vertex("clause", i, ell) for ell in range(1, 2 * rg.r + 1)]
        for j in range(1, phi.n + 1):
            order += [false_lit[j], true_lit[j]]
        return order
    if rg.kind == "colr":
        order = sorted(subdivision)
        order += [true_lit[j] for j in range(1, phi.n + 1)]
        order += [rg.vertex("clause", i) for i in range(phi.m)]
        order += [false_lit[j] for j in range(1, phi.n + 1)]
        order += [rg.vertex("clique", t) for t in range(1, 8)]
        return order
    raise ValueError(f"unknown reduction kind {rg.kind!r}")


def witness_value(rg: ReductionGraph, order: Sequence[int]) -> int:
    report = evaluate_order(rg.graph, order, rg.r)
    return report.col if rg.parameter == "col" else report.wcol


def extract_assignment(rg: ReductionGraph, order: Sequence[int]) -> list[bool]:
    """Read x_j off the relative order of v_j and v'_j.

    wcol kinds: v_j first means x_j false. colr: v_j first means x_j true.
    """
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != rg.graph.n:
        raise ValueError("order must be a total order of the reduction graph")
    values = [False]
    for j in range(1, rg.formula.n + 1):
        pos_first = pos[rg.literal_vertex(j, True)] < pos[rg.literal_vertex(j, False)]
        values.append(pos_first if rg.kind == "colr" else not pos_first)
    return values


# --- audit -------------------------------------------------------------------


@dataclass
class AuditReport:
    census: dict
    expected_census: dict
    issues: list[str]

    @property
    def ok(self) -> bool:
        return not self.issues

    def to_dict(self) -> dict:
        return {"ok": self.ok, "census": self.census, "expected": self.expected_census, "issues": self.issues}


def expected_census(phi: CnfFormula, kind: str, r: int) -> dict:
    """Vertex/edge/role counts derived directly from the clause widths."""
    widths = [len(c) for c in phi.clauses]
    nv, mc = phi.n, phi.m
    two = sum(1 for w in widths if w == 2)
    if kind == "wcol2":
        roles = {"clause": 6 * mc, "filler": 2 * two, "literal_pos": nv, "literal_neg": nv}
        m = nv + sum(6 * w for w in widths) + 12 * two
    elif kind == "wcolr":
        paths = sum(2 * r * w * 2 for w in widths)
        roles = {"clause": 2 * r * mc, "literal_pos": nv, "literal_neg": nv, "subdivision": paths * (r - 2)}
        m = nv + paths * (r - 1)
    elif kind == "colr":
        links = sum(widths)
        roles = {"clause": mc, "literal_pos": nv, "literal_neg": nv, "clique": 7, "subdivision": links * (r - 1)}
        m = 21 + nv + links * r + 4 * mc + two + 6 * nv
    else:
        raise ValueError(f"unknown reduction kind {kind!r}")
    roles = {k: v for k, v in roles.items() if v}
    return {"n": sum(roles.values()), "m": m, "roles": roles}


def _expected_edges(rg: ReductionGraph) -> set[tuple[int, int]]:
    """Edge set re-derived from the roles and the formula."""
    phi, r = rg.formula, rg.r
    idx = {role: v for v, role in enumerate(rg.roles)}
    edges: set[tuple[int, int]] = set()

    def add(a, b):
        edges.add((min(a, b), max(a, b)))

    def lit(x):
        return idx[Role("literal_pos" if x > 0 else "literal_neg", (abs(x),))]

    for j in range(1, phi.n + 1):
        add(lit(j), lit(-j))

    subdiv: dict[int, list[tuple[int, int]]] = {}
    for v, role in enumerate(rg.roles):
        if role.kind == "subdivision":
            subdiv.setdefault(role.index[0], []).append((role.index[1], v))
    links: list[tuple[int, int]] = []

    if rg.kind == "wcol2":
        for i, c in enumerate(phi.clauses):
            us = [idx[Role("clause", (i, ell))] for ell in range(1, 7)]
            for u in us:
                for x in c:
                    add(u, lit(x))
                if len(c) == 2:
                    for f in (0, 1):
                        add(u, idx[Role("filler", (i, f))])
    elif rg.kind == "wcolr":
        for i, c in enumerate(phi.clauses):
            for ell in range(1, 2 * r + 1):
                for x in c:
                    links += [(idx[Role("clause", (i, ell))], lit(x))] * 2
    else:
        w = {t: idx[Role("clique", (t,))] for t in range(1, 8)}
        for a in range(1, 8):
            for b in range(a + 1, 8):
                add(w[a], w[b])
        for i, c in enumerate(phi.clauses):
            u = idx[Role("clause", (i,))]
            for t in range(1, 5 + (len(c) == 2)):
                add(u, w[t])
            links += [(u, lit(x)) for x in c]
        for j in range(1, phi.n + 1):
            for t in (2, 3, 4):
                add(lit(j), w[t])
            for t in (5, 6, 7):
                add(lit(-j), w[t])

    for cid, (a, b) in enumerate(links):
        inner = [v for _, v in sorted(subdiv.get(cid, []))]
        path = [a, *inner, b]
        for x, y in zip(path, path[1:]):
            add(x, y)
    return edges


def audit_structure(rg: ReductionGraph) -> AuditReport:
    issues: list[str] = []
    expected = expected_census(rg.formula, rg.kind, rg.r)
    g = rg.graph
    census = {"n": g.n, "m": g.m, "roles": dict(Counter(role.kind for role in rg.roles))}
    for key in ("n", "m"):
        if census[key] != expected[key]:
            issues.append(f"{key} is {census[key]}, expected {expected[key]}")
    if census["roles"] != expected["roles"]:
        issues.append(f"role census {census['roles']} differs from expected {expected['roles']}")
    if len(rg.roles) != g.n:
        issues.append(f"{len(rg.roles)} roles for {g.n} vertices")
        return AuditReport(census, expected, issues)
    try:
        want = _expected_edges(rg)
    except (KeyError, IndexError) as exc:
        issues.append(f"missing role {exc}")
        return AuditReport(census, expected, issues)
    have = set(g.edges())
    for u, v in sorted(want - have):
        issues.append(f"missing edge {u}-{v} ({rg.roles[u].label()} - {rg.roles[v].label()})")
    for u, v in sorted(have - want):
        issues.append(f"unexpected edge {u}-{v} ({rg.roles[u].label()} - {rg.roles[v].label()})")
    return AuditReport(census, expected, issues)
