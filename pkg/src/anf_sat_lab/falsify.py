"""Claim monitoring: run conjectured identities against the oracle and shrink
any divergence to a clause-minimal reproducer.

Three identities are monitored rather than asserted: that the clause-merge
build produces exactly the brute-force solution set, that the one-sided
factor product equals the true indicator, and that the coefficient sweep
decides satisfiability under its solution-count assumption.  A divergence is
a finding, not a crash: it is minimized (clause removal only), re-verified
for 1-minimality, and reported.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from . import descriptor as _descriptor_mod
from . import indicator as _indicator_mod
from . import coeffs as _coeffs_mod
from .anf import all_ones_column
from .cnf import Clause3, Formula, sort_clauses, to_dimacs
from .coeffs import decide_sat_bounded
from .descriptor import build
from .errors import AnfSatError
from .indicator import factor_sequence
from .oracle import brute_column, brute_count, random_formula

__all__ = [
    "CLAIM_IDS",
    "FalsificationReport",
    "FalsifyStats",
    "check_claim",
    "falsify",
    "minimize_formula",
    "compact_variables",
]

# Registry of monitored claims; must cover every claim the other modules name.
CLAIM_IDS = ("MERGE_SOUNDNESS", "INDICATOR6", "SWEEP_DECIDES")

assert set(CLAIM_IDS) == {
    _descriptor_mod.MONITORED_CLAIM,
    _indicator_mod.MONITORED_CLAIM,
    _coeffs_mod.MONITORED_CLAIM,
}, "claim registry out of sync with the owning modules"


@dataclass(frozen=True)
class FalsificationReport:
    claim_id: str
    seed: int
    instance_index: int
    instance_dimacs: str
    minimized_dimacs: str
    expected: str
    got: str

    def to_json(self) -> dict:
        return {
            "claim": self.claim_id,
            "seed": self.seed,
            "instance_index": self.instance_index,
            "expected": self.expected,
            "got": self.got,
            "instance": self.instance_dimacs,
            "minimized": self.minimized_dimacs,
        }


@dataclass
class FalsifyStats:
    instances: int = 0
    divergences: int = 0
    skipped_capped: int = 0
    per_claim: dict = field(default_factory=dict)


def _image_indices(descriptor) -> set[int]:
    """Image of a descriptor as assignment indices (var i = bit i-1)."""
    n = descriptor.n
    cols = [descriptor.entry(i).truth_column(n) for i in range(1, n + 1)]
    out: set[int] = set()
    for a in range(1 << n):
        x = 0
        for i, col in enumerate(cols):
            if (col >> a) & 1:
                x |= 1 << i
        out.add(x)
    return out


def _check_merge_soundness(f: Formula) -> Optional[tuple[str, str]]:
    """Does the built descriptor's image equal the brute-force solution set?"""
    expected_col = brute_column(f)
    result = build(sort_clauses(f))
    if result.capped:
        return None  # capped runs are skipped, not divergent
    if result.unsat:
        if expected_col == 0:
            return None
        return (f"{bin(expected_col).count('1')} solutions", "UNSAT")
    assert result.descriptor is not None
    got = _image_indices(result.descriptor)
    expected = {a for a in range(1 << f.n) if (expected_col >> a) & 1}
    if got == expected:
        return None
    return (
        f"solution set of size {len(expected)}",
        f"image of size {len(got)} (symmetric difference {len(got ^ expected)})",
    )


def _check_indicator6(f: Formula) -> Optional[tuple[str, str]]:
    """Does the product of one-sided factors match the true indicator?"""
    sorted_f = sort_clauses(f)
    fs = factor_sequence(sorted_f)
    acc = all_ones_column(f.n)
    for t in range(1, f.n + 1):
        acc &= fs.g(t).truth_column(f.n)
        if not acc:
            break
    expected = brute_column(f)
    if acc == expected:
        return None
    return (
        f"indicator with {bin(expected).count('1')} ones",
        f"factor product with {bin(acc).count('1')} ones",
    )


def _choose_k(count: int) -> int:
    if count <= 1:
        return 0
    return max(0, math.ceil(math.log2(count)))


def _check_sweep_decides(f: Formula) -> Optional[tuple[str, str]]:
    """Does the sweep verdict match brute-force SAT when #S <= 2^k holds?"""
    count = brute_count(f)
    k = _choose_k(count)
    decision = decide_sat_bounded(f, k)
    if decision.verdict.capped:
        return None
    got_sat = decision.verdict.satisfiable
    expected_sat = count > 0
    if got_sat == expected_sat:
        return None
    return (
        f"{'SAT' if expected_sat else 'UNSAT'} ({count} solutions, k={k})",
        "SAT" if got_sat else "UNSAT-under-assumption",
    )


_CHECKERS: dict[str, Callable[[Formula], Optional[tuple[str, str]]]] = {
    "MERGE_SOUNDNESS": _check_merge_soundness,
    "INDICATOR6": _check_indicator6,
    "SWEEP_DECIDES": _check_sweep_decides,
}

assert set(_CHECKERS) == set(CLAIM_IDS)


def check_claim(claim_id: str, f: Formula) -> Optional[tuple[str, str]]:
    """Run one monitored claim; None means no divergence."""
    return _CHECKERS[claim_id](f)


def compact_variables(f: Formula) -> Formula:
    """Renumber variables 1..n' to close gaps left by clause removal."""
    used = sorted({l.var for cl in f.clauses for l in cl.lits})
    remap = {old: new for new, old in enumerate(used, start=1)}
    clauses = tuple(
        Clause3.from_signed(
            [(-1 if l.negated else 1) * remap[l.var] for l in cl.lits]
        )
        for cl in f.clauses
    )
    return Formula(n=len(used), clauses=clauses)


def minimize_formula(
    f: Formula, diverges: Callable[[Formula], bool]
) -> Formula:
    """Clause removal to a 1-minimal reproducer.

    Only clauses are removed; variables are re-compacted before each re-run.
    A chunked reduction shrinks the instance quickly, then single removals
    run to a fixed point, which makes the result 1-minimal by construction.
    """
    cache: dict[tuple, bool] = {}

    def still_diverges(clause_list: list) -> bool:
        key = tuple(cl.signed() for cl in clause_list)
        hit = cache.get(key)
        if hit is None:
            hit = diverges(compact_variables(Formula(n=f.n, clauses=tuple(clause_list))))
            cache[key] = hit
        return hit

    clauses = list(f.clauses)
    # Chunked pass: try dropping progressively smaller blocks.
    chunk = max(1, len(clauses) // 2)
    while chunk >= 1 and len(clauses) > 1:
        start = 0
        removed_any = False
        while start < len(clauses):
            candidate = clauses[:start] + clauses[start + chunk :]
            if candidate and still_diverges(candidate):
                clauses = candidate
                removed_any = True
            else:
                start += chunk
        if chunk == 1 and not removed_any:
            break
        chunk = max(1, chunk // 2) if (chunk > 1 or removed_any) else 0
    # Single-removal fixed point (1-minimality).
    changed = True
    while changed:
        changed = False
        for idx in range(len(clauses)):
            candidate = clauses[:idx] + clauses[idx + 1 :]
            if candidate and still_diverges(candidate):
                clauses = candidate
                changed = True
                break
    return compact_variables(Formula(n=f.n, clauses=tuple(clauses)))


def verify_one_minimal(
    f: Formula, diverges: Callable[[Formula], bool]
) -> bool:
    """The instance diverges, and no single-clause removal still does."""
    if not diverges(f):
        return False
    for idx in range(f.m):
        candidate = f.clauses[:idx] + f.clauses[idx + 1 :]
        if not candidate:
            continue
        cand_f = compact_variables(Formula(n=f.n, clauses=tuple(candidate)))
        if diverges(cand_f):
            return False
    return True


def falsify(
    claims: Iterable[str],
    *,
    count: int,
    n: int,
    ratio: float,
    seed: int,
    report_dir: Optional[str] = None,
) -> tuple[list[FalsificationReport], FalsifyStats]:
    """Run each claim over seeded random instances; minimize any divergence."""
    claim_list = list(claims)
    for c in claim_list:
        if c not in _CHECKERS:
            raise ValueError(f"unknown claim id {c!r}")
    m = max(1, round(ratio * n))
    stats = FalsifyStats(per_claim={c: 0 for c in claim_list})
    reports: list[FalsificationReport] = []
    for index in range(count):
        instance_seed = seed + index
        f = random_formula(n, m, instance_seed)
        stats.instances += 1
        for claim_id in claim_list:
            checker = _CHECKERS[claim_id]
            try:
                divergence = checker(f)
            except AnfSatError:
                stats.skipped_capped += 1
                continue
            if divergence is None:
                continue
            stats.divergences += 1
            stats.per_claim[claim_id] += 1

            def diverges(candidate: Formula, _c=checker) -> bool:
                try:
                    return _c(candidate) is not None
                except AnfSatError:
                    return False

            minimized = minimize_formula(f, diverges)
            if not verify_one_minimal(minimized, diverges):
                raise AssertionError(
                    f"minimized instance for {claim_id} is not 1-minimal"
                )
            final = checker(minimized)
            assert final is not None
            reports.append(
                FalsificationReport(
                    claim_id=claim_id,
                    seed=instance_seed,
                    instance_index=index,
                    instance_dimacs=to_dimacs(f),
                    minimized_dimacs=to_dimacs(minimized),
                    expected=final[0],
                    got=final[1],
                )
            )
    if report_dir is not None and reports:
        _write_reports(reports, report_dir)
    return reports, stats


def _write_reports(reports: list[FalsificationReport], report_dir: str) -> None:
    os.makedirs(report_dir, exist_ok=True)
    lines_path = os.path.join(report_dir, "reports.jsonl")
    with open(lines_path, "w", encoding="utf-8") as fh:
        for i, rep in enumerate(reports):
            fh.write(json.dumps(rep.to_json(), sort_keys=True) + "\n")
            cnf_path = os.path.join(
                report_dir, f"{rep.claim_id.lower()}_{rep.seed}_{i}.cnf"
            )
            with open(cnf_path, "w", encoding="utf-8") as cf:
                cf.write(rep.minimized_dimacs)
