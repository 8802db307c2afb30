"""Sparse extraction of product coefficients and the bounded-count SAT test.

The coefficient of a monomial in the product g_1 * ... * g_n is computed by
a demand-driven backward recursion: the level-i query asks only for the
prefix-product coefficients that level i's own sparse factor can combine
into the demanded mask.  Because each factor touches only a small window of
variables, the set of masks ever demanded stays narrow on instances with
local structure; a configurable frontier cap reports blow-ups.

The satisfiability sweep queries every mask with at most k zero positions
(grade at least n - k).  Under the assumption that the instance has at most
2**k solutions, a nonzero coefficient among these is equivalent to
satisfiability; that equivalence itself is a monitored conjecture.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Optional

from .anf import AnfPoly, IntPoly
from .cnf import Formula, relabel_by_frequency, sort_clauses
from .errors import ResourceCap
from .indicator import FactorSequence, factor_sequence

__all__ = [
    "MONITORED_CLAIM",
    "CoefficientQuery",
    "SweepVerdict",
    "DecisionResult",
    "clause_coeffs",
    "coefficient",
    "sweep",
    "decide_sat_bounded",
]

MONITORED_CLAIM = "SWEEP_DECIDES"

DEFAULT_FRONTIER_CAP = 1 << 22


def clause_coeffs(g: AnfPoly | IntPoly) -> Dict[int, int]:
    """Sparse mask -> coefficient map of one factor."""
    if isinstance(g, AnfPoly):
        return {m: 1 for m in g.masks}
    return dict(g.coeffs)


class CoefficientQuery:
    """Memoized backward recursion over a factor list.

    ``factors[t-1]`` must only use variables 1..t.  Queries share one memo
    table, so a sweep reuses everything discovered by earlier masks.
    """

    def __init__(
        self,
        factors: list[AnfPoly] | list[IntPoly],
        mode: str = "gf2",
        *,
        frontier_cap: int = DEFAULT_FRONTIER_CAP,
    ):
        if mode not in ("gf2", "int"):
            raise ValueError(f"mode must be 'gf2' or 'int', got {mode!r}")
        self.mode = mode
        self.n = len(factors)
        self.frontier_cap = frontier_cap
        self._coeff_maps: list[Dict[int, int]] = []
        for t, factor in enumerate(factors, start=1):
            cm = clause_coeffs(factor)
            if any(m >> (t + 1) for m in cm):
                raise ValueError(f"factor {t} uses variables above {t}")
            self._coeff_maps.append(cm)
        self._memo: list[Dict[int, int]] = [dict() for _ in range(self.n + 1)]
        self.queries = 0

    @classmethod
    def from_factor_sequence(
        cls,
        fs: FactorSequence,
        mode: str = "gf2",
        *,
        frontier_cap: int = DEFAULT_FRONTIER_CAP,
    ) -> "CoefficientQuery":
        if mode == "gf2":
            return cls(fs.g_list(), "gf2", frontier_cap=frontier_cap)
        return cls(
            [fs.g_int(t) for t in range(1, fs.n + 1)], "int", frontier_cap=frontier_cap
        )

    def coefficient(self, delta_mask: int) -> int:
        """Coefficient of the monomial with variable set ``delta_mask``."""
        self.queries += 1
        return self._level_coeff(self.n, delta_mask)

    def _level_coeff(self, i: int, delta: int) -> int:
        if delta & 1:
            raise ValueError("bit 0 of a mask is unused; variables start at 1")
        # Variables above i can never be produced by factors 1..i.
        if delta >> (i + 1):
            return 0
        if i == 0:
            return 1 if delta == 0 else 0
        memo = self._memo[i]
        cached = memo.get(delta)
        if cached is not None:
            return cached
        bit = 1 << i
        want_top = delta & bit
        d_low = delta & ~bit
        total = 0
        for xi_mask, c in self._coeff_maps[i - 1].items():
            if (xi_mask & bit) != want_top:
                continue
            if xi_mask & ~delta:
                continue  # factor monomial sticks out of the demanded mask
            xi_low = xi_mask & ~bit
            required = d_low & ~xi_low  # prefix must supply what the factor lacks
            free = d_low & xi_low  # overlap positions may come from either side
            inner = 0
            sub = free
            while True:  # all submasks of 'free', including 0
                inner += self._level_coeff(i - 1, required | sub)
                if sub == 0:
                    break
                sub = (sub - 1) & free
            total += c * inner
        if self.mode == "gf2":
            total &= 1
        memo[delta] = total
        if len(memo) > self.frontier_cap:
            raise ResourceCap(
                f"frontier at level {i} holds {len(memo)} masks (cap {self.frontier_cap})",
                where=f"level {i}",
                size=len(memo),
            )
        return total

    def frontier_sizes(self) -> list[int]:
        """Number of memoized masks per level (index 0 unused)."""
        return [len(m) for m in self._memo]

    def max_frontier(self) -> int:
        return max(self.frontier_sizes())


def coefficient(
    fs: FactorSequence,
    delta_mask: int,
    mode: str = "gf2",
    *,
    frontier_cap: int = DEFAULT_FRONTIER_CAP,
) -> int:
    """One-shot coefficient of ``delta_mask`` in the factor-sequence product."""
    q = CoefficientQuery.from_factor_sequence(fs, mode, frontier_cap=frontier_cap)
    return q.coefficient(delta_mask)


@dataclass(frozen=True)
class SweepVerdict:
    """Outcome of the bounded-solution satisfiability sweep."""

    k: int
    satisfiable: bool
    witness_mask: Optional[int]  # variables with delta = 1, None when UNSAT
    mode: str
    queries: int
    max_frontier: int
    frontier_sizes: tuple[int, ...] = ()
    capped: bool = False

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "verdict": "SAT" if self.satisfiable else "UNSAT-under-assumption",
            "witness": sorted(_mask_vars(self.witness_mask))
            if self.witness_mask is not None
            else None,
            "mode": self.mode,
            "work": {
                "queries": self.queries,
                "max_frontier": self.max_frontier,
                "frontier_sizes": list(self.frontier_sizes),
            },
            "capped": self.capped,
        }


def _mask_vars(mask: int) -> list[int]:
    return [i for i in range(1, mask.bit_length()) if (mask >> i) & 1]


def sweep(
    fs: FactorSequence,
    k: int,
    mode: str = "gf2",
    *,
    frontier_cap: int = DEFAULT_FRONTIER_CAP,
) -> SweepVerdict:
    """Query every mask with at most k zeros, grade-descending, lex within grade.

    Stops at the first witness.  Both modes decide by parity: the indicator
    identity lives mod 2, so an even integer coefficient vanishes in it, and
    the two modes always return the same verdict.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    n = fs.n
    q = CoefficientQuery.from_factor_sequence(fs, mode, frontier_cap=frontier_cap)
    full = ((1 << (n + 1)) - 1) & ~1  # variables 1..n
    try:
        for zeros in range(0, min(k, n) + 1):
            for zero_positions in combinations(range(1, n + 1), zeros):
                mask = full
                for z in zero_positions:
                    mask &= ~(1 << z)
                value = q.coefficient(mask)
                if value % 2:
                    return SweepVerdict(
                        k=k,
                        satisfiable=True,
                        witness_mask=mask,
                        mode=mode,
                        queries=q.queries,
                        max_frontier=q.max_frontier(),
                        frontier_sizes=tuple(q.frontier_sizes()),
                    )
    except ResourceCap:
        return SweepVerdict(
            k=k,
            satisfiable=False,
            witness_mask=None,
            mode=mode,
            queries=q.queries,
            max_frontier=q.max_frontier(),
            frontier_sizes=tuple(q.frontier_sizes()),
            capped=True,
        )
    return SweepVerdict(
        k=k,
        satisfiable=False,
        witness_mask=None,
        mode=mode,
        queries=q.queries,
        max_frontier=q.max_frontier(),
        frontier_sizes=tuple(q.frontier_sizes()),
    )


@dataclass(frozen=True)
class DecisionResult:
    """Full-pipeline decision: relabel, sort, factor, sweep."""

    verdict: SweepVerdict
    relabel_perm: tuple[int, ...]  # perm[new - 1] = original variable
    witness_original_vars: Optional[tuple[int, ...]]

    def to_json(self) -> dict:
        data = self.verdict.to_json()
        data["relabel_perm"] = list(self.relabel_perm)
        data["witness_original_vars"] = (
            sorted(self.witness_original_vars)
            if self.witness_original_vars is not None
            else None
        )
        return data


def decide_sat_bounded(
    f: Formula,
    k: int,
    mode: str = "gf2",
    *,
    frontier_cap: int = DEFAULT_FRONTIER_CAP,
) -> DecisionResult:
    relabeled, perm = relabel_by_frequency(f)
    fs = factor_sequence(sort_clauses(relabeled))
    verdict = sweep(fs, k, mode, frontier_cap=frontier_cap)
    witness_orig = None
    if verdict.witness_mask is not None:
        witness_orig = tuple(
            sorted(perm[i - 1] for i in _mask_vars(verdict.witness_mask))
        )
    return DecisionResult(
        verdict=verdict, relabel_perm=perm, witness_original_vars=witness_orig
    )
