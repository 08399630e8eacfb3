import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colnum.sat import (
    CnfFormatError,
    CnfFormula,
    OracleCapError,
    brute_force_sat,
    format_assignment,
    lift_assignment,
    normalize_to_2clause3sat,
    parse_assignment,
    parse_cnf,
    repair_exact_rsat,
    simplify,
)

from oracles import brute_satisfiable

FOUR_PATTERNS = CnfFormula(2, [(1, 2), (-1, 2), (1, -2), (-1, -2)])
# -x3 is the only literal occurring once; nothing is pure or unit
ONE_GADGET = CnfFormula(3, [(1, -2), (3, 2, -1), (-1, -3, 2), (1, 3, -2)])


def test_parse_basic():
    phi = parse_cnf("p cnf 2 1\n1 -2 0\n")
    assert phi.n == 2 and phi.clauses == ((1, -2),)


def test_parse_drops_tautology_and_collapses_repeats():
    phi = parse_cnf("c x\np cnf 3 3\n1 -1 2 0\n2 2 3 0\n-3 0\n")
    assert phi.clauses == ((2, 3), (-3,))


def test_parse_keeps_empty_clause():
    phi = parse_cnf("p cnf 1 1\n0\n")
    assert phi.has_empty_clause and brute_force_sat(phi) is None


@pytest.mark.parametrize(
    "text",
    ["1 2 0\n", "p cnf x 1\n", "p cnf 2 1\n1 3 0\n", "p cnf 2 1\n1 a 0\n", "p sat 2 1\n", "p cnf 2 1\np cnf 2 1\n"],
)
def test_parse_errors(text):
    with pytest.raises(CnfFormatError):
        parse_cnf(text)


def test_formula_rejects_repeated_variable():
    with pytest.raises(ValueError):
        CnfFormula(2, [(1, -1)])
    with pytest.raises(ValueError):
        CnfFormula(2, [(3,)])


@st.composite
def formulas(draw, max_n=6, max_width=3):
    n = draw(st.integers(0, max_n))
    if n == 0:
        return CnfFormula(0, [])
    clauses = []
    for _ in range(draw(st.integers(0, 8))):
        vs = draw(st.lists(st.integers(1, n), min_size=1, max_size=min(max_width, n), unique=True))
        clauses.append(tuple(v * draw(st.sampled_from((1, -1))) for v in vs))
    return CnfFormula(n, clauses)


@settings(max_examples=100, deadline=None)
@given(formulas())
def test_dimacs_round_trip(phi):
    assert parse_cnf(phi.to_dimacs()) == phi


@settings(max_examples=150, deadline=None)
@given(formulas(max_n=8))
def test_brute_force_agrees_with_plain_enumeration(phi):
    found = brute_force_sat(phi)
    expected = brute_satisfiable(phi.n, phi.clauses)
    assert (found is None) == (expected is None)
    if found is not None:
        assert phi.satisfied_by(found)


def test_brute_force_examples():
    assert brute_force_sat(CnfFormula(0, [])) == [False]
    assert brute_force_sat(FOUR_PATTERNS) is None
    with pytest.raises(OracleCapError):
        brute_force_sat(CnfFormula(30, []))
    assert brute_force_sat(CnfFormula(30, [(30,)]), cap=30)[30] is True


def test_gadget_with_x_false_is_satisfied_by_all_true():
    norm = normalize_to_2clause3sat(ONE_GADGET)
    gadget = norm.formula.clauses[-7:]
    ys = range(4, 9)
    values = [False] * 9
    for y in ys:
        values[y] = True
    # the gadget's literal is -x3; make it false
    values[3] = True
    assert all(any(values[abs(x)] == (x > 0) for x in c) for c in gadget)


def test_gadget_counts():
    norm = normalize_to_2clause3sat(ONE_GADGET)
    assert norm.gadgets == 1 and norm.fixed == {}
    assert norm.formula.n == ONE_GADGET.n + 5
    assert norm.formula.m == ONE_GADGET.m + 7
    assert norm.formula.is_2clause3sat()


def test_normalize_leaves_2c3s_alone():
    phi = CnfFormula(2, [(1, 2), (1, -2), (-1, 2), (-1, -2)])
    assert normalize_to_2clause3sat(phi).formula == phi


def test_normalize_rejects_unsupported_inputs():
    with pytest.raises(ValueError):
        normalize_to_2clause3sat(CnfFormula(4, [(1, 2, 3, 4)]))
    with pytest.raises(ValueError):
        normalize_to_2clause3sat(CnfFormula(3, [(1, 2), (1, 3), (1, -2), (-1, 3)]))


def test_simplify_detects_conflict():
    clauses, _ = simplify(CnfFormula(1, [(1,), (-1,)]))
    assert clauses == [()]
    norm = normalize_to_2clause3sat(CnfFormula(1, [(1,), (-1,)]))
    assert norm.unsatisfiable and norm.formula.has_empty_clause


def test_repair_examples():
    out = repair_exact_rsat(CnfFormula(2, [(1, 2)]), 3)
    assert out.n == 3 and out.clauses == ((1, 2, 3), (1, 2, -3))
    same = CnfFormula(3, [(1, 2, 3), (-1, -2, 3)])
    assert repair_exact_rsat(same, 3) == same
    with pytest.raises(ValueError):
        repair_exact_rsat(CnfFormula(4, [(1, 2, 3, 4)]), 3)


@settings(max_examples=100, deadline=None)
@given(formulas(max_n=6), st.integers(3, 4))
def test_repair_is_exact_and_preserves_satisfiability(phi, r):
    out = repair_exact_rsat(phi, r)
    assert out.is_exact(r)
    assert (brute_force_sat(phi) is None) == (brute_force_sat(out, cap=64) is None)


def test_assignment_io_and_lift():
    values = parse_assignment("v 1 -2\nv 3 0\n", 4)
    assert values == [False, True, False, True, False]
    assert parse_assignment(format_assignment(values), 4) == values
    with pytest.raises(ValueError):
        parse_assignment("5", 4)
    norm = normalize_to_2clause3sat(ONE_GADGET)
    solution = brute_force_sat(norm.formula)
    assert ONE_GADGET.satisfied_by(lift_assignment(norm, ONE_GADGET.n, solution))


def test_lift_includes_preprocessed_variables():
    rng = random.Random(21)
    done = 0
    while done < 50:
        n = rng.randint(2, 6)
        clauses = [tuple(v * rng.choice((1, -1)) for v in rng.sample(range(1, n + 1), rng.randint(1, min(3, n)))) for _ in range(rng.randint(1, 5))]
        phi = CnfFormula(n, clauses)
        try:
            norm = normalize_to_2clause3sat(phi)
        except ValueError:
            continue
        done += 1
        solution = None if norm.unsatisfiable else brute_force_sat(norm.formula, cap=200)
        assert (solution is None) == (brute_force_sat(phi) is None)
        if solution is not None:
            assert phi.satisfied_by(lift_assignment(norm, n, solution))
