import itertools
import json
import random

import pytest

from colnum.graph import Graph, bfs_layers
from colnum.reductions import (
    ReductionGraph,
    Role,
    audit_structure,
    build,
    build_colr,
    build_wcol2,
    build_wcolr,
    expected_census,
    extract_assignment,
    witness_order,
    witness_value,
)
from colnum.sat import CnfFormula

from oracles import brute_satisfiable, random_2c3s, random_exact

FIG2 = CnfFormula(4, [(1, 2, 3), (-3, 4)])
ONE_CLAUSE = CnfFormula(3, [(1, 2, 3)])


def _sat_2c3s(rng, count):
    out = []
    while len(out) < count:
        n = rng.randint(1, 5)
        clauses = random_2c3s(rng, n)
        if clauses is None:
            continue
        a = brute_satisfiable(n, clauses)
        if a is not None:
            out.append((CnfFormula(n, clauses), a))
    return out


def test_wcol2_fig2_census():
    rg = build_wcol2(FIG2)
    assert (rg.graph.n, rg.graph.m) == (22, 46)
    assert audit_structure(rg).ok


def test_wcol2_empty_formula():
    rg = build_wcol2(CnfFormula(3, []))
    assert rg.graph.edges() == [(0, 1), (2, 3), (4, 5)]


def test_wcol2_clause_degrees():
    rg = build_wcol2(FIG2)
    for i, c in enumerate(FIG2.clauses):
        for ell in range(1, 7):
            u = rg.vertex("clause", i, ell)
            assert rg.graph.degree(u) == len(c) + (2 if len(c) == 2 else 0)


def test_wcolr_single_clause_census():
    rg = build_wcolr(ONE_CLAUSE, 3)
    assert (rg.graph.n, rg.graph.m) == (48, 75)
    assert all(len(inner) == 1 for _, _, inner in rg.connections)
    assert audit_structure(rg).ok


@pytest.mark.parametrize("r", [3, 4])
def test_wcolr_clause_vertices_far_apart(r):
    phi = CnfFormula(r + 1, [tuple(range(1, r + 1)), tuple(-j for j in range(2, r + 2))])
    rg = build_wcolr(phi, r)
    clause_vs = [v for v, role in enumerate(rg.roles) if role.kind == "clause"]
    for a in clause_vs:
        dist = bfs_layers(rg.graph, a)
        assert all(dist.get(b, r + 1) > r for b in clause_vs if b != a)


def test_wcolr_radius_checks():
    with pytest.raises(ValueError, match="build_wcol2"):
        build_wcolr(CnfFormula(2, [(1, 2)]), 2)
    with pytest.raises(ValueError):
        build_wcolr(CnfFormula(3, [(1, 2)]), 3)


def test_colr_single_clause_census():
    rg = build_colr(ONE_CLAUSE, 2)
    assert (rg.graph.n, rg.graph.m) == (17, 52)
    w = [rg.vertex("clique", t) for t in range(1, 8)]
    assert all(rg.graph.has_edge(a, b) for a, b in itertools.combinations(w, 2))
    assert audit_structure(rg).ok


def test_colr_two_literal_clause_gets_w5():
    rg = build_colr(CnfFormula(2, [(1, 2), (-1, -2)]), 2)
    u = rg.vertex("clause", 0)
    assert rg.graph.has_edge(u, rg.vertex("clique", 5))
    rg3 = build_colr(ONE_CLAUSE, 2)
    assert not rg3.graph.has_edge(rg3.vertex("clause", 0), rg3.vertex("clique", 5))


def test_colr_rejects_radius_one():
    with pytest.raises(ValueError):
        build_colr(ONE_CLAUSE, 1)


def test_width_checks():
    with pytest.raises(ValueError):
        build_wcol2(CnfFormula(1, [(1,)]))
    with pytest.raises(ValueError):
        build_colr(CnfFormula(4, [(1, 2, 3, 4)]), 2)
    with pytest.raises(ValueError):
        build(ONE_CLAUSE, "nope")


@pytest.mark.parametrize("kind,r", [("wcol2", 2), ("wcolr", 3), ("wcolr", 4), ("colr", 2), ("colr", 3)])
def test_audit_catches_removed_edge(kind, r):
    phi = CnfFormula(4, [(1, 2, 3, 4)[:r], (-1, -2, -3, -4)[:r]]) if kind == "wcolr" else FIG2
    rg = build(phi, kind, r)
    assert audit_structure(rg).ok
    assert expected_census(phi, kind, r)["n"] == rg.graph.n
    u, v = rg.graph.edges()[0]
    edges = [e for e in rg.graph.edges() if e != (u, v)]
    broken = ReductionGraph(rg.kind, rg.r, phi, Graph.from_edges(rg.graph.n, edges), rg.roles, rg.strict_shape)
    report = audit_structure(broken)
    assert not report.ok
    assert any(f"missing edge {u}-{v}" in issue for issue in report.issues)


def test_roles_sidecar_round_trip():
    rg = build_colr(FIG2, 2)
    data = json.loads(rg.roles_json())
    assert len(data) == rg.graph.n
    assert [Role.parse(data[str(v)]) for v in range(rg.graph.n)] == list(rg.roles)


def test_strict_shape_flag():
    assert not build_wcol2(FIG2).strict_shape
    phi = CnfFormula(2, [(1, 2), (1, -2), (-1, 2), (-1, -2)])
    assert build_wcol2(phi).strict_shape and build_colr(phi, 2).strict_shape


@pytest.mark.parametrize("kind,r", [("wcol2", 2), ("wcolr", 3), ("colr", 2)])
def test_extraction_conventions(kind, r):
    phi = CnfFormula(3, [(1, 2, 3), (-1, -2, -3)])
    rg = build(phi, kind, r)
    pos, neg = rg.literal_vertex(1, True), rg.literal_vertex(1, False)
    rest = [v for v in range(rg.graph.n) if v not in (pos, neg)]
    # v_1 before v'_1 reads as false for the wcol kinds and true for colr
    assert extract_assignment(rg, [pos, neg, *rest])[1] is (kind == "colr")
    assert extract_assignment(rg, [neg, pos, *rest])[1] is (kind != "colr")


def test_witness_requires_satisfying_assignment():
    rg = build_wcol2(FIG2)
    with pytest.raises(ValueError):
        witness_order(rg, [False] * 5)


def test_fig2_witness():
    rg = build_wcol2(FIG2)
    a = [False, True, False, False, True]
    order = witness_order(rg, a)
    assert sorted(order) == list(range(rg.graph.n))
    assert witness_value(rg, order) <= 5


@pytest.mark.parametrize("kind,r", [("wcol2", 2), ("colr", 2), ("colr", 3)])
def test_witness_soundness_2c3s(kind, r):
    for phi, a in _sat_2c3s(random.Random(31 + r), 25):
        rg = build(phi, kind, r)
        assert rg.strict_shape and audit_structure(rg).ok
        order = witness_order(rg, a)
        assert witness_value(rg, order) <= rg.threshold
        assert phi.satisfied_by(extract_assignment(rg, order))


@pytest.mark.parametrize("r", [3, 4])
def test_witness_soundness_exact(r):
    rng = random.Random(40 + r)
    done = 0
    while done < 15:
        n = rng.randint(r, r + 2)
        clauses = random_exact(rng, n, r, rng.randint(1, 4))
        a = brute_satisfiable(n, clauses)
        if a is None:
            continue
        done += 1
        phi = CnfFormula(n, clauses)
        rg = build_wcolr(phi, r)
        order = witness_order(rg, a)
        assert witness_value(rg, order) <= 2 * r - 1
        assert phi.satisfied_by(extract_assignment(rg, order))
