"""3-CNF instances: parsing, validation, clause ordering and structural sets.

Clauses hold exactly three literals over distinct variables, stored in
ascending variable order.  Variables are 1-based everywhere in this module's
API and I/O, matching DIMACS conventions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import HeaderMismatch, MalformedClause, VarOutOfRange

__all__ = [
    "Literal",
    "Clause3",
    "Formula",
    "SortedFormula",
    "StaticSets",
    "parse_dimacs",
    "to_dimacs",
    "formula_from_json",
    "formula_to_json",
    "sort_clauses",
    "relabel_by_frequency",
    "split_plus_minus",
    "subproblem",
    "static_sets",
]


class Literal(NamedTuple):
    var: int
    negated: bool

    @property
    def signed(self) -> int:
        return -self.var if self.negated else self.var

    @classmethod
    def from_signed(cls, lit: int) -> "Literal":
        if lit == 0:
            raise ValueError("literal 0 is reserved as the clause terminator")
        return cls(abs(lit), lit < 0)


@dataclass(frozen=True)
class Clause3:
    """Three literals with strictly ascending variable indices r < s < t."""

    lits: tuple[Literal, Literal, Literal]

    def __post_init__(self) -> None:
        vs = [l.var for l in self.lits]
        if len(self.lits) != 3 or not (vs[0] < vs[1] < vs[2]):
            raise MalformedClause(f"clause variables must satisfy r < s < t, got {vs}")

    @classmethod
    def from_signed(cls, lits: Iterable[int]) -> "Clause3":
        parsed = [Literal.from_signed(l) for l in lits]
        if len(parsed) != 3:
            raise MalformedClause(f"clause must have exactly 3 literals, got {len(parsed)}")
        parsed.sort(key=lambda l: l.var)
        if len({l.var for l in parsed}) != 3:
            raise MalformedClause(
                "clause mentions a variable twice (duplicate literal or tautology): "
                + " ".join(str(l.signed) for l in parsed)
            )
        return cls((parsed[0], parsed[1], parsed[2]))

    @property
    def r(self) -> int:
        return self.lits[0].var

    @property
    def s(self) -> int:
        return self.lits[1].var

    @property
    def t(self) -> int:
        return self.lits[2].var

    @property
    def top_negated(self) -> bool:
        return self.lits[2].negated

    def signed(self) -> tuple[int, int, int]:
        return tuple(l.signed for l in self.lits)  # type: ignore[return-value]

    def forbidden_triple(self) -> tuple[int, int, int]:
        """The unique non-satisfying values for (x_r, x_s, x_t)."""
        return tuple(1 if l.negated else 0 for l in self.lits)  # type: ignore[return-value]

    def satisfied_by_mask(self, assignment: int) -> bool:
        for l in self.lits:
            if ((assignment >> l.var) & 1) == (0 if l.negated else 1):
                return True  # a literal is true
        return False

    # A clause is false exactly on its forbidden triple.
    def falsified_by_mask(self, assignment: int) -> bool:
        return not self.satisfied_by_mask(assignment)


@dataclass(frozen=True)
class Formula:
    """A 3-CNF instance over variables 1..n."""

    n: int
    clauses: tuple[Clause3, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise VarOutOfRange(f"variable count must be >= 0, got {self.n}")
        for cl in self.clauses:
            if cl.t > self.n:
                raise VarOutOfRange(
                    f"clause {cl.signed()} uses variable {cl.t} > n = {self.n}"
                )

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def delta(self) -> Fraction:
        """Clause-to-variable ratio m/n."""
        if self.n == 0:
            return Fraction(0)
        return Fraction(self.m, self.n)

    def eval_mask(self, assignment: int) -> bool:
        return all(cl.satisfied_by_mask(assignment) for cl in self.clauses)


@dataclass(frozen=True)
class SortedFormula(Formula):
    """Formula whose clauses follow the (t ascending, negated-t first) order.

    ``witness`` maps sorted position k (0-based) to the clause's position in
    the pre-sort input.
    """

    witness: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        super().__post_init__()
        for a, b in zip(self.clauses, self.clauses[1:]):
            if _sort_key(a) > _sort_key(b):
                raise MalformedClause(
                    f"clauses {a.signed()} and {b.signed()} are out of order"
                )


def _sort_key(cl: Clause3) -> tuple[int, int]:
    # Negative occurrences of the top variable come first within a t-group.
    return (cl.t, 0 if cl.top_negated else 1)


def sort_clauses(f: Formula) -> SortedFormula:
    """Stable sort by (t ascending, negated-x_t before positive-x_t)."""
    order = sorted(range(f.m), key=lambda k: _sort_key(f.clauses[k]))
    return SortedFormula(
        n=f.n,
        clauses=tuple(f.clauses[k] for k in order),
        witness=tuple(order),
    )


def relabel_by_frequency(f: Formula) -> tuple[Formula, tuple[int, ...]]:
    """Rename variables so occurrence counts are non-increasing in the index.

    Returns (relabeled formula, perm) where ``perm[new - 1]`` is the old
    index now called ``new``.  Ties keep the old index order.
    """
    counts = [0] * (f.n + 1)
    for cl in f.clauses:
        for l in cl.lits:
            counts[l.var] += 1
    by_freq = sorted(range(1, f.n + 1), key=lambda v: (-counts[v], v))
    old_to_new = {old: new for new, old in enumerate(by_freq, start=1)}
    clauses = tuple(
        Clause3.from_signed(
            [(-1 if l.negated else 1) * old_to_new[l.var] for l in cl.lits]
        )
        for cl in f.clauses
    )
    return Formula(n=f.n, clauses=clauses), tuple(by_freq)


def split_plus_minus(f: SortedFormula, t: int) -> tuple[SortedFormula, SortedFormula]:
    """Clauses with highest variable t, split by the polarity of x_t."""
    if not 1 <= t <= f.n:
        raise VarOutOfRange(f"t must be in 1..{f.n}, got {t}")
    plus = tuple(cl for cl in f.clauses if cl.t == t and not cl.top_negated)
    minus = tuple(cl for cl in f.clauses if cl.t == t and cl.top_negated)
    return (
        SortedFormula(n=f.n, clauses=plus, witness=()),
        SortedFormula(n=f.n, clauses=minus, witness=()),
    )


def subproblem(f: SortedFormula, indices: Iterable[int]) -> SortedFormula:
    """Sub-formula with exactly the clauses at the given 1-based positions."""
    wanted = set(indices)
    for k in wanted:
        if not 1 <= k <= f.m:
            raise VarOutOfRange(f"clause index {k} outside 1..{f.m}")
    clauses = tuple(cl for pos, cl in enumerate(f.clauses, start=1) if pos in wanted)
    return SortedFormula(n=f.n, clauses=clauses, witness=())


@dataclass(frozen=True)
class StaticSets:
    """Per-variable structural sets of a sorted formula.

    ``cl[t]`` holds the 1-based positions of clauses whose highest variable
    is t; ``v[t]`` the variables occurring in those clauses; ``m_plus`` /
    ``m_minus`` count them by the polarity of x_t.
    """

    n: int
    cl: tuple[frozenset[int], ...] = field(repr=False)
    v: tuple[frozenset[int], ...] = field(repr=False)
    m_plus: tuple[int, ...]
    m_minus: tuple[int, ...]

    def cl_of(self, t: int) -> frozenset[int]:
        return self.cl[t]

    def v_of(self, t: int) -> frozenset[int]:
        return self.v[t]

    def v_up_to(self, t: int, i: int) -> frozenset[int]:
        """V(x_t) restricted to indices <= i."""
        return frozenset(x for x in self.v[t] if x <= i)


def static_sets(f: SortedFormula) -> StaticSets:
    cl: list[set[int]] = [set() for _ in range(f.n + 1)]
    v: list[set[int]] = [set() for _ in range(f.n + 1)]
    m_plus = [0] * (f.n + 1)
    m_minus = [0] * (f.n + 1)
    for pos, clause in enumerate(f.clauses, start=1):
        t = clause.t
        cl[t].add(pos)
        v[t].update(l.var for l in clause.lits)
        if clause.top_negated:
            m_minus[t] += 1
        else:
            m_plus[t] += 1
    return StaticSets(
        n=f.n,
        cl=tuple(frozenset(s) for s in cl),
        v=tuple(frozenset(s) for s in v),
        m_plus=tuple(m_plus),
        m_minus=tuple(m_minus),
    )


# --- DIMACS and JSON I/O ----------------------------------------------------


def parse_dimacs(text: str) -> Formula:
    """Parse DIMACS CNF text into a Formula.

    Accepts 'c' comment lines, arbitrary whitespace, clauses spanning lines,
    and the trailing '%' end marker found in some benchmark files.
    """
    n = None
    m = None
    tokens: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break  # benchmark-style end marker; ignore the rest
        if line.startswith("p"):
            if n is not None:
                raise HeaderMismatch("duplicate 'p' header line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise HeaderMismatch(f"bad problem line: {line!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise HeaderMismatch(f"bad problem line: {line!r}") from exc
            continue
        try:
            tokens.extend(int(tok) for tok in line.split())
        except ValueError as exc:
            raise MalformedClause(f"non-integer token in clause line: {line!r}") from exc
    if n is None or m is None:
        raise HeaderMismatch("missing 'p cnf n m' header")

    clauses: list[Clause3] = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            clauses.append(Clause3.from_signed(current))
            current = []
        else:
            current.append(tok)
    if current:
        raise HeaderMismatch("last clause is not 0-terminated")
    if len(clauses) != m:
        raise HeaderMismatch(f"header claims {m} clauses, body has {len(clauses)}")
    for cl in clauses:
        for l in cl.lits:
            if l.var > n:
                raise VarOutOfRange(f"literal {l.signed} exceeds n = {n}")
    return Formula(n=n, clauses=tuple(clauses))


def to_dimacs(f: Formula) -> str:
    lines = [f"p cnf {f.n} {f.m}"]
    for cl in f.clauses:
        lines.append(" ".join(str(l) for l in cl.signed()) + " 0")
    return "\n".join(lines) + "\n"


def formula_to_json(f: Formula) -> str:
    return json.dumps(
        {"n": f.n, "clauses": [list(cl.signed()) for cl in f.clauses]},
        sort_keys=True,
    )


def formula_from_json(text: str) -> Formula:
    data = json.loads(text)
    clauses = tuple(Clause3.from_signed(c) for c in data["clauses"])
    return Formula(n=int(data["n"]), clauses=clauses)
