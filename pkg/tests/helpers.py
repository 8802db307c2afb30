"""Independent oracle helpers for the test suite.

These deliberately recompute things the slow way (pointwise evaluation and
enumeration) so engine paths are always checked against something simpler.
"""

from __future__ import annotations

import random
from itertools import product

from anf_sat_lab.anf import AnfPoly
from anf_sat_lab.cnf import Formula
from anf_sat_lab.descriptor import Descriptor
from anf_sat_lab.smatrix import NEUTRAL, SMatrix


def mask_from_bits(bits) -> int:
    """Assignment mask (bit i = variable i) from a bit vector."""
    m = 0
    for i, b in enumerate(bits, start=1):
        if b:
            m |= 1 << i
    return m


def truth_table(p: AnfPoly, n: int) -> tuple[int, ...]:
    """Pointwise evaluation over all assignments, in bit-vector order."""
    out = []
    for bits in product((0, 1), repeat=n):
        out.append(p.eval_mask(mask_from_bits(bits)))
    return tuple(out)


def cnf_truth_table(f: Formula) -> tuple[int, ...]:
    """Clause-by-clause CNF evaluation on every assignment."""
    out = []
    for bits in product((0, 1), repeat=f.n):
        mask = mask_from_bits(bits)
        out.append(1 if f.eval_mask(mask) else 0)
    return tuple(out)


def descriptor_image_masks(h: Descriptor) -> frozenset[int]:
    """Exhaustive image of a descriptor as assignment masks."""
    seen = set()
    for bits in product((0, 1), repeat=h.n):
        seen.add(h.apply_mask(mask_from_bits(bits)))
    return frozenset(seen)


def descriptor_fixed_points(h: Descriptor) -> frozenset[int]:
    out = set()
    for bits in product((0, 1), repeat=h.n):
        mask = mask_from_bits(bits)
        if h.apply_mask(mask) == mask:
            out.add(mask)
    return frozenset(out)


def solution_masks(f: Formula) -> frozenset[int]:
    """Brute-force solution set by direct clause evaluation."""
    out = set()
    for bits in product((0, 1), repeat=f.n):
        mask = mask_from_bits(bits)
        if f.eval_mask(mask):
            out.add(mask)
    return frozenset(out)


def random_smatrix(rng: random.Random, n: int, max_rows: int = 8) -> SMatrix:
    support = tuple(range(1, n + 1))
    rows = []
    for _ in range(rng.randrange(max_rows + 1)):
        rows.append(tuple(rng.choice((0, 1, NEUTRAL)) for _ in range(n)))
    return SMatrix(support, tuple(rows))


def random_instance(rng: random.Random, n: int, max_m: int) -> Formula:
    """Random formula with m clamped to the distinct-clause capacity."""
    from anf_sat_lab.oracle import random_formula

    cap = 8 * (n * (n - 1) * (n - 2) // 6)
    m = rng.randrange(1, max(2, min(max_m, cap) + 1))
    return random_formula(n, m, rng.randrange(10**9))


def random_poly(rng: random.Random, n: int, max_terms: int = 6) -> AnfPoly:
    masks = []
    for _ in range(rng.randrange(max_terms + 1)):
        mask = 0
        for v in range(1, n + 1):
            if rng.getrandbits(1):
                mask |= 1 << v
        masks.append(mask)
    return AnfPoly(masks)
