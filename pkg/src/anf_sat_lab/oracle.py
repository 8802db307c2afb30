"""Independent ground truth: exhaustive enumeration, full expansion, generators.

Everything here is deliberately direct.  The fast enumerator packs truth
tables into big integers; a second evaluator loops over assignments one by
one so the two can cross-check each other.  The product expander multiplies
factors outright, serving as the slow reference for the sparse coefficient
recursion.
"""

from __future__ import annotations

import random
from typing import Sequence

from .anf import AnfPoly, IntPoly, all_ones_column, var_columns
from .cnf import Clause3, Formula
from .errors import GenerationError, TooLarge
from .solutions import SolutionSet

__all__ = [
    "BRUTE_LIMIT",
    "EXPAND_LIMIT",
    "brute_column",
    "brute_solutions",
    "brute_solutions_slow",
    "brute_count",
    "expand_product",
    "anf_from_truth_column",
    "random_formula",
    "random_formula_rng",
]

BRUTE_LIMIT = 25
EXPAND_LIMIT = 14


def brute_column(f: Formula) -> int:
    """Truth table of the formula packed into an int (bit a = assignment a).

    Assignment ``a`` sets variable i to ``(a >> (i-1)) & 1``.
    """
    if f.n > BRUTE_LIMIT:
        raise TooLarge(f"brute force over {f.n} > {BRUTE_LIMIT} variables")
    cols = var_columns(f.n)
    ones = all_ones_column(f.n)
    acc = ones
    for cl in f.clauses:
        clause_col = 0
        for lit in cl.lits:
            col = cols[lit.var]
            clause_col |= (ones ^ col) if lit.negated else col
        acc &= clause_col
        if not acc:
            break
    return acc


def brute_solutions(f: Formula) -> SolutionSet:
    """Exact solution set by exhaustive evaluation."""
    col = brute_column(f)
    masks = []
    a = 0
    col_copy = col
    while col_copy:
        if col_copy & 1:
            mask = 0
            for i in range(1, f.n + 1):
                if (a >> (i - 1)) & 1:
                    mask |= 1 << i
            masks.append(mask)
        col_copy >>= 1
        a += 1
    return SolutionSet.from_masks(f.n, masks)


def brute_solutions_slow(f: Formula) -> SolutionSet:
    """Second, independently coded enumerator (per-assignment clause loop)."""
    if f.n > BRUTE_LIMIT:
        raise TooLarge(f"brute force over {f.n} > {BRUTE_LIMIT} variables")
    masks = []
    for a in range(1 << f.n):
        assignment = 0
        for i in range(1, f.n + 1):
            if (a >> (i - 1)) & 1:
                assignment |= 1 << i
        ok = True
        for cl in f.clauses:
            sat = False
            for lit in cl.lits:
                value = (assignment >> lit.var) & 1
                if value != (1 if lit.negated else 0):
                    sat = True
                    break
            if not sat:
                ok = False
                break
        if ok:
            masks.append(assignment)
    return SolutionSet.from_masks(f.n, masks)


def brute_count(f: Formula) -> int:
    return bin(brute_column(f)).count("1")


def expand_product(
    factors: Sequence[AnfPoly] | Sequence[IntPoly],
    mode: str = "gf2",
    *,
    limit: int = EXPAND_LIMIT,
) -> AnfPoly | IntPoly:
    """Full multiplication of a factor list; the slow reference path."""
    max_var = 0
    for p in factors:
        if isinstance(p, AnfPoly):
            max_var = max(max_var, p.max_var())
        else:
            max_var = max(
                max_var, max((m.bit_length() - 1 for m in p.coeffs), default=0)
            )
    if max_var > limit:
        raise TooLarge(f"expansion over {max_var} > {limit} variables")
    if mode == "gf2":
        acc: AnfPoly | IntPoly = AnfPoly.one()
        for p in factors:
            q = p if isinstance(p, AnfPoly) else p.reduce_mod2()
            acc = acc * q
        return acc
    if mode == "int":
        acc = IntPoly.one()
        for p in factors:
            q = p if isinstance(p, IntPoly) else IntPoly.lift(p)
            acc = acc * q
        return acc
    raise ValueError(f"mode must be 'gf2' or 'int', got {mode!r}")


def anf_from_truth_column(column: int, n: int) -> AnfPoly:
    """Unique multilinear GF(2) polynomial with the given truth table.

    Moebius transform over the subset lattice; used as a test oracle.
    """
    bits = [(column >> a) & 1 for a in range(1 << n)]
    for i in range(n):
        step = 1 << i
        for a in range(1 << n):
            if a & step:
                bits[a] ^= bits[a ^ step]
    masks = []
    for a in range(1 << n):
        if bits[a]:
            mask = 0
            for i in range(1, n + 1):
                if (a >> (i - 1)) & 1:
                    mask |= 1 << i
            masks.append(mask)
    return AnfPoly(masks)


def random_formula_rng(n: int, m: int, rng: random.Random) -> Formula:
    """Uniform 3-CNF: distinct variables, independent signs, distinct clauses."""
    if n < 3:
        raise GenerationError(f"need n >= 3 variables, got {n}")
    max_clauses = 8 * (n * (n - 1) * (n - 2) // 6)
    if m > max_clauses:
        raise GenerationError(f"cannot draw {m} distinct clauses over {n} variables")
    seen: set[tuple[int, int, int]] = set()
    clauses: list[Clause3] = []
    while len(clauses) < m:
        vs = rng.sample(range(1, n + 1), 3)
        vs.sort()
        lits = tuple(
            v if rng.getrandbits(1) else -v for v in vs
        )
        if lits in seen:
            continue
        seen.add(lits)  # type: ignore[arg-type]
        clauses.append(Clause3.from_signed(lits))
    return Formula(n=n, clauses=tuple(clauses))


def random_formula(n: int, m: int, seed: int) -> Formula:
    """Seed-stable uniform instance generator."""
    return random_formula_rng(n, m, random.Random(seed))
