"""Indicator polynomials of solution sets, in four equivalent constructions.

The indicator of a solution set values 1 exactly on solutions.  It can be
assembled from a descriptor (product of per-level agreement factors), from
the clauses (product of forbidden-cube complements), from an explicit
solution list, or from the per-variable factor sequence derived from the
positive/negative split of each variable's clause group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .anf import AnfPoly, IntPoly
from .cnf import Formula, SortedFormula, split_plus_minus
from .descriptor import Descriptor, build
from .errors import Property2Violation, ResourceCap
from .solutions import SolutionSet

__all__ = [
    "FactorSequence",
    "MONITORED_CLAIM",
    "factor_sequence",
    "indicator_from_descriptor",
    "indicator_from_clauses",
    "indicator_from_solutions",
    "indicator_from_factors",
    "clause_forbidden_monomial",
    "product_with_cap",
    "int_product_with_cap",
]

# That the factor-sequence product equals the true indicator is a monitored
# conjecture owned by the falsifier.
MONITORED_CLAIM = "INDICATOR6"

DEFAULT_TERM_CAP = 1 << 22


@dataclass(frozen=True)
class FactorSequence:
    """Per-variable factors g_t = [h_plus + x_t + 1] * [h_minus + x_t + 1].

    ``h_plus[t-1]`` / ``h_minus[t-1]`` are the top entries of the descriptors
    of the positive / negative clause groups at t (the variable itself when a
    group is empty, which makes the corresponding factor equal 1).  Factors
    are stored unexpanded; ``g(t)`` multiplies the pair on demand.
    """

    n: int
    h_plus: tuple[AnfPoly, ...]
    h_minus: tuple[AnfPoly, ...]
    plus_clauses: tuple[tuple[int, ...], ...]  # provenance: 1-based positions
    minus_clauses: tuple[tuple[int, ...], ...]

    def factor_plus(self, t: int) -> AnfPoly:
        return self.h_plus[t - 1] + AnfPoly.var(t) + AnfPoly.one()

    def factor_minus(self, t: int) -> AnfPoly:
        return self.h_minus[t - 1] + AnfPoly.var(t) + AnfPoly.one()

    def g(self, t: int) -> AnfPoly:
        return self.factor_plus(t) * self.factor_minus(t)

    def g_int(self, t: int) -> IntPoly:
        return IntPoly.lift(self.factor_plus(t)) * IntPoly.lift(self.factor_minus(t))

    def all_factors(self) -> list[AnfPoly]:
        out = []
        for t in range(1, self.n + 1):
            out.append(self.factor_plus(t))
            out.append(self.factor_minus(t))
        return out

    def g_list(self) -> list[AnfPoly]:
        return [self.g(t) for t in range(1, self.n + 1)]


def factor_sequence(f: SortedFormula) -> FactorSequence:
    """Build both one-sided descriptors per variable and package the factors.

    One-sided groups merge without any cascade; the closed forms
    h_plus(.., 1) = 1 and h_minus(.., 0) = 0 are asserted and any failure
    raises Property2Violation, signalling an engine bug.
    """
    h_plus: list[AnfPoly] = []
    h_minus: list[AnfPoly] = []
    plus_idx: list[tuple[int, ...]] = []
    minus_idx: list[tuple[int, ...]] = []
    for t in range(1, f.n + 1):
        plus, minus = split_plus_minus(f, t)
        plus_idx.append(
            tuple(k for k, cl in enumerate(f.clauses, start=1) if cl.t == t and not cl.top_negated)
        )
        minus_idx.append(
            tuple(k for k, cl in enumerate(f.clauses, start=1) if cl.t == t and cl.top_negated)
        )
        h_plus.append(_one_sided_entry(plus, t, positive=True))
        h_minus.append(_one_sided_entry(minus, t, positive=False))
    return FactorSequence(
        n=f.n,
        h_plus=tuple(h_plus),
        h_minus=tuple(h_minus),
        plus_clauses=tuple(plus_idx),
        minus_clauses=tuple(minus_idx),
    )


def _one_sided_entry(group: SortedFormula, t: int, *, positive: bool) -> AnfPoly:
    if group.m == 0:
        return AnfPoly.var(t)
    result = build(group)
    if not result.ok:
        raise Property2Violation(
            f"one-sided group at t={t} did not build cleanly: {result.status}"
        )
    assert result.descriptor is not None
    if any(s.chain for s in result.trace.steps):
        raise Property2Violation(f"one-sided group at t={t} triggered a cascade")
    h_t = result.descriptor.entry(t)
    for i in range(1, group.n + 1):
        if i != t and result.descriptor.entry(i) != AnfPoly.var(i):
            raise Property2Violation(
                f"one-sided group at t={t} disturbed entry {i}"
            )
    if positive and not h_t.restrict(t, 1).is_one():
        raise Property2Violation(f"h_plus at t={t} does not collapse to 1 at x_t=1")
    if not positive and not h_t.restrict(t, 0).is_zero():
        raise Property2Violation(f"h_minus at t={t} does not collapse to 0 at x_t=0")
    return h_t


def product_with_cap(factors: Iterable[AnfPoly], cap: int) -> AnfPoly:
    acc = AnfPoly.one()
    for factor in factors:
        acc = acc * factor
        if len(acc) > cap:
            raise ResourceCap(
                f"indicator expansion reached {len(acc)} terms (cap {cap})",
                where="indicator",
                size=len(acc),
            )
    return acc


def int_product_with_cap(factors: Iterable[IntPoly], cap: int) -> IntPoly:
    acc = IntPoly.one()
    for factor in factors:
        acc = acc * factor
        if len(acc) > cap:
            raise ResourceCap(
                f"indicator expansion reached {len(acc)} terms (cap {cap})",
                where="indicator",
                size=len(acc),
            )
    return acc


def indicator_from_descriptor(
    h: Descriptor, *, cap: int = DEFAULT_TERM_CAP
) -> AnfPoly:
    """Expand the product of [h_i + x_i + 1]; 1 exactly on fixed points of H."""
    factors = [
        h.entry(i) + AnfPoly.var(i) + AnfPoly.one() for i in range(1, h.n + 1)
    ]
    return product_with_cap(factors, cap)


def clause_forbidden_monomial(clause) -> AnfPoly:
    """Indicator of a clause's forbidden cube, e.g. (x1+1)(x2+1)x3."""
    out = AnfPoly.one()
    for lit, forbidden in zip(clause.lits, clause.forbidden_triple()):
        factor = AnfPoly.var(lit.var)
        if forbidden == 0:
            factor = factor + AnfPoly.one()
        out = out * factor
    return out


def indicator_from_clauses(
    f: Formula, mode: str = "gf2", *, cap: int = DEFAULT_TERM_CAP
) -> AnfPoly | IntPoly:
    """Expand the product over clauses of (forbidden-cube indicator + 1)."""
    if mode == "gf2":
        factors = [
            clause_forbidden_monomial(cl) + AnfPoly.one() for cl in f.clauses
        ]
        return product_with_cap(factors, cap)
    if mode == "int":
        int_factors = [
            IntPoly.lift(clause_forbidden_monomial(cl)) + IntPoly.one()
            for cl in f.clauses
        ]
        return int_product_with_cap(int_factors, cap)
    raise ValueError(f"mode must be 'gf2' or 'int', got {mode!r}")


def indicator_from_solutions(s: SolutionSet) -> AnfPoly:
    """Mod-2 sum of one-solution indicators prod x_i^{s_i} (x_i+1)^{1-s_i}."""
    acc = AnfPoly.zero()
    for sol in s.solutions:
        term = AnfPoly.one()
        for i, bit in enumerate(sol, start=1):
            factor = AnfPoly.var(i)
            if bit == 0:
                factor = factor + AnfPoly.one()
            term = term * factor
        acc = acc + term
    return acc


def indicator_from_factors(
    fs: FactorSequence, mode: str = "gf2", *, cap: int = DEFAULT_TERM_CAP
) -> AnfPoly | IntPoly:
    """Expand the product of all 2n one-sided factors."""
    if mode == "gf2":
        return product_with_cap(fs.all_factors(), cap)
    if mode == "int":
        return int_product_with_cap(
            [IntPoly.lift(p) for p in fs.all_factors()], cap
        )
    raise ValueError(f"mode must be 'gf2' or 'int', got {mode!r}")
