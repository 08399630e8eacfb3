"""CNF formulas, normalization into 2-Clause 3-SAT and Exact r-SAT, and a brute-force oracle."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class CnfFormatError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    """Clauses of nonzero int literals over variables 1..n; no variable twice in a clause."""

    n: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            vs = [abs(lit) for lit in c]
            if any(lit == 0 or abs(lit) > self.n for lit in c):
                raise ValueError(f"clause {c} references a variable outside 1..{self.n}")
            if len(set(vs)) != len(vs):
                raise ValueError(f"clause {c} mentions a variable twice")

    @cached_property
    def occurrences(self) -> Counter:
        return Counter(lit for c in self.clauses for lit in c)

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def has_empty_clause(self) -> bool:
        return any(not c for c in self.clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[j]`` is the value of x_j; index 0 is unused."""
        return all(any(assignment[abs(lit)] == (lit > 0) for lit in c) for c in self.clauses)

    def is_2clause3sat(self) -> bool:
        if any(not 1 <= len(c) <= 3 for c in self.clauses):
            return False
        occ = self.occurrences
        return all(occ[j] == 2 and occ[-j] == 2 for j in range(1, self.n + 1))

    def is_exact(self, r: int) -> bool:
        return all(len(c) == r for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {self.m}"]
        lines += [" ".join(map(str, (*c, 0))) for c in self.clauses]
        return "\n".join(lines) + "\n"


def clean_clause(lits: Iterable[int]) -> tuple[int, ...] | None:
    """Collapse repeated literals; ``None`` for a tautology."""
    out: list[int] = []
    for lit in lits:
        if -lit in out:
            return None
        if lit not in out:
            out.append(lit)
    return tuple(out)


def parse_cnf(data: str | bytes) -> CnfFormula:
    """DIMACS CNF. Tautologies are dropped and repeated literals collapsed."""
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    n = None
    declared_m = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] in ("c", "%"):
            continue
        if parts[0] == "p":
            if n is not None or len(parts) != 4 or parts[1] != "cnf":
                raise CnfFormatError(f"line {lineno}: malformed header {line.strip()!r}")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise CnfFormatError(f"line {lineno}: malformed header {line.strip()!r}") from None
            if n < 0 or declared_m < 0:
                raise CnfFormatError(f"line {lineno}: negative counts in header")
            continue
        if n is None:
            raise CnfFormatError(f"line {lineno}: clause before header")
        for tok in parts:
            try:
                lit = int(tok)
            except ValueError:
                raise CnfFormatError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > n:
                raise CnfFormatError(f"line {lineno}: literal {lit} exceeds {n} variables")
            else:
                current.append(lit)
    if n is None:
        raise CnfFormatError("missing 'p cnf' header")
    if current:
        clauses.append(tuple(current))
    kept = [c for c in map(clean_clause, clauses) if c is not None]
    return CnfFormula(n, tuple(kept))


def parse_assignment(text: str, n: int) -> list[bool]:
    """Signed literals (``1 -2 3``), optionally on ``v`` lines and 0-terminated.

    Variables not mentioned default to false.
    """
    values = [False] * (n + 1)
    for tok in text.replace("v", " ").split():
        lit = int(tok)
        if lit == 0:
            continue
        if abs(lit) > n:
            raise ValueError(f"assignment literal {lit} exceeds {n} variables")
        values[abs(lit)] = lit > 0
    return values


def format_assignment(values: Sequence[bool]) -> str:
    return " ".join(str(j if values[j] else -j) for j in range(1, len(values))) + " 0\n"


# --- brute force -------------------------------------------------------------


class OracleCapError(RuntimeError):
    pass


def brute_force_sat(phi: CnfFormula, cap: int = 24) -> list[bool] | None:
    """A satisfying assignment, or ``None`` if none exists.

    Exhaustive clause-directed backtracking: take the first clause not yet
    satisfied and branch on making each of its free literals the first true
    one. Every assignment is covered by exactly one branch. Variables left
    free once all clauses hold are set to false. The result is re-checked
    clause by clause.
    """
    if phi.n > cap:
        raise OracleCapError(f"{phi.n} variables exceeds the oracle cap of {cap}")
    if phi.has_empty_clause:
        return None
    clauses = phi.clauses
    value: list[bool | None] = [None] * (phi.n + 1)

    def open_clause() -> tuple[int, ...] | None:
        for c in clauses:
            if not any(value[abs(lit)] == (lit > 0) for lit in c):
                return c
        return None

    def go() -> bool:
        c = open_clause()
        if c is None:
            return True
        free = [lit for lit in c if value[abs(lit)] is None]
        for i, lit in enumerate(free):
            for earlier in free[:i]:
                value[abs(earlier)] = earlier < 0
            value[abs(lit)] = lit > 0
            if go():
                return True
        for lit in free:
            value[abs(lit)] = None
        return False

    if not go():
        return None
    values = [bool(v) for v in value]
    values[0] = False
    if not phi.satisfied_by(values):
        raise AssertionError("oracle produced a non-satisfying assignment")
    return values


# --- transformations ---------------------------------------------------------


@dataclass
class Normalized:
    formula: CnfFormula
    var_map: dict[int, int]  # original variable -> variable in ``formula``
    fixed: dict[int, bool] = field(default_factory=dict)  # original variables settled by preprocessing
    gadgets: int = 0
    unsatisfiable: bool = False


def _gadget(x: int, y: Sequence[int]) -> list[tuple[int, ...]]:
    y1, y2, y3, y4, y5 = y
    return [
        (x, y1, -y2),
        (y1, y3, -y4),
        (-y1, y3, -y4),
        (-y1, y4, -y5),
        (y2, y4, -y5),
        (y2, -y3, y5),
        (-y2, -y3, y5),
    ]


def simplify(phi: CnfFormula) -> tuple[list[tuple[int, ...]], dict[int, bool]]:
    """Unit propagation and pure-literal elimination to a fixpoint.

    Returns the remaining clauses and the forced values. An empty clause in
    the output means the formula is unsatisfiable.
    """
    clauses = [list(c) for c in phi.clauses]
    fixed: dict[int, bool] = {}
    while True:
        if any(not c for c in clauses):
            return [()], fixed
        occ = Counter(lit for c in clauses for lit in c)
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is not None:
            lit = unit
        else:
            lit = next((x for x in sorted(occ, key=lambda t: (abs(t), t)) if -x not in occ), None)
            if lit is None:
                break
        fixed[abs(lit)] = lit > 0
        clauses = [[x for x in c if x != -lit] for c in clauses if lit not in c]
    return [tuple(c) for c in clauses], fixed


def normalize_to_2clause3sat(phi: CnfFormula) -> Normalized:
    """Rewrite a formula with <= 3 literals per clause and <= 3 occurrences per variable
    into one where every literal occurs exactly twice.

    Unit clauses and single-polarity variables are settled first. Each literal
    left with a single occurrence then receives the 7-clause gadget over 5
    fresh variables, whose first clause holds the literal.
    """
    if phi.is_2clause3sat() and all(len(c) >= 2 for c in phi.clauses):
        return Normalized(phi, {j: j for j in range(1, phi.n + 1)})
    if any(len(c) > 3 for c in phi.clauses):
        raise ValueError("normalization needs clauses with at most 3 literals")
    occ = phi.occurrences
    for j in range(1, phi.n + 1):
        # a 2+2 variable is already fine; otherwise at most 3 occurrences
        if occ[j] + occ[-j] > 3 and (occ[j] > 2 or occ[-j] > 2):
            raise ValueError(f"variable {j} occurs too often for normalization")

    clauses, fixed = simplify(phi)
    if clauses == [()]:
        return Normalized(CnfFormula(0, ((),)), {}, fixed, 0, unsatisfiable=True)
    used = sorted({abs(lit) for c in clauses for lit in c})
    var_map = {v: i for i, v in enumerate(used, 1)}
    renamed = [tuple((1 if lit > 0 else -1) * var_map[abs(lit)] for lit in c) for c in clauses]
    occ = Counter(lit for c in renamed for lit in c)
    n = len(used)
    out = list(renamed)
    gadgets = 0
    for j in range(1, len(used) + 1):
        for lit in (j, -j):
            if occ[lit] == 1:
                fresh = list(range(n + 1, n + 6))
                n += 5
                out.extend(_gadget(lit, fresh))
                gadgets += 1
    return Normalized(CnfFormula(n, tuple(out)), var_map, fixed, gadgets)


def repair_exact_rsat(phi: CnfFormula, r: int) -> CnfFormula:
    """Pad every clause to exactly r variables.

    A clause short by one variable is duplicated, with a fresh ``y`` added to
    one copy and its negation to the other; repeat until wide enough.
    """
    if r < 1:
        raise ValueError("clause width must be >= 1")
    n = phi.n
    out: list[tuple[int, ...]] = []
    for c in phi.clauses:
        if len(c) > r:
            raise ValueError(f"clause {c} is longer than {r}")
        group = [c]
        while len(group[0]) < r:
            n += 1
            group = [x + (s * n,) for x in group for s in (1, -1)]
        out.extend(group)
    return CnfFormula(n, tuple(out))


def lift_assignment(norm: Normalized, original_n: int, values: Sequence[bool]) -> list[bool]:
    """Map an assignment of ``norm.formula`` back onto the original variables."""
    out = [False] * (original_n + 1)
    for v, val in norm.fixed.items():
        out[v] = val
    for v, w in norm.var_map.items():
        out[v] = values[w]
    return out
