"""Multilinear polynomial arithmetic over GF(2), plus an integer-coefficient variant.

A polynomial is a set of monomials; a monomial is a product of distinct
variables (x^2 = x).  Monomials are encoded as int bitmasks with bit ``i``
standing for variable ``i`` (variables are numbered from 1, bit 0 is unused,
mask 0 is the constant monomial 1).  Python ints are unbounded, so there is
no variable-count limit.

Two variable families share this index space: ``a<i>`` (argument space of
descriptor functions) and ``x<i>`` (solution space).  They are the same
polynomials; only the text rendering differs.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Iterator, Sequence

from .errors import UncoveredVariable

__all__ = [
    "AnfPoly",
    "IntPoly",
    "mask_of_vars",
    "vars_of_mask",
    "var_columns",
    "all_ones_column",
]


def mask_of_vars(vars_: Iterable[int]) -> int:
    """Bitmask for a monomial given its variable indices (1-based)."""
    m = 0
    for v in vars_:
        if v < 1:
            raise ValueError(f"variable index must be >= 1, got {v}")
        m |= 1 << v
    return m


def vars_of_mask(mask: int) -> tuple[int, ...]:
    """Sorted variable indices of a monomial bitmask."""
    out = []
    v = 1
    m = mask >> 1
    while m:
        if m & 1:
            out.append(v)
        v += 1
        m >>= 1
    return tuple(out)


_TERM_RE = re.compile(r"^(?:(\d+)\s*\*?\s*)?((?:[ax]\d+)(?:\s*\*\s*[ax]\d+)*)?$")


def _parse_term(term: str) -> tuple[int, int]:
    """Parse one additive term into (coefficient, mask)."""
    term = term.strip()
    if not term:
        raise ValueError("empty term")
    m = _TERM_RE.match(term)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ValueError(f"cannot parse polynomial term {term!r}")
    coeff = int(m.group(1)) if m.group(1) is not None else 1
    mask = 0
    if m.group(2):
        for piece in m.group(2).split("*"):
            mask |= 1 << int(piece.strip()[1:])
    return coeff, mask


class AnfPoly:
    """Immutable multilinear polynomial over GF(2) (set of monomial masks)."""

    __slots__ = ("_masks",)

    def __init__(self, masks: Iterable[int] = ()):
        s = set()
        for m in masks:
            if m in s:  # additive duplicates cancel mod 2
                s.discard(m)
            else:
                s.add(m)
        self._masks = frozenset(s)

    @classmethod
    def _wrap(cls, masks: frozenset[int]) -> "AnfPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "_masks", masks)
        return p

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "AnfPoly":
        return _ZERO

    @classmethod
    def one(cls) -> "AnfPoly":
        return _ONE

    @classmethod
    def var(cls, i: int) -> "AnfPoly":
        if i < 1:
            raise ValueError(f"variable index must be >= 1, got {i}")
        return cls._wrap(frozenset((1 << i,)))

    @classmethod
    def from_terms(cls, terms: Iterable[Iterable[int]]) -> "AnfPoly":
        """Build from an iterable of variable-index lists, e.g. [[1,3],[]] = a1*a3 + 1."""
        return cls(mask_of_vars(t) for t in terms)

    @classmethod
    def parse(cls, text: str) -> "AnfPoly":
        """Parse text like ``1 + a1 + a1*a2*a3`` (``x`` prefixes accepted too)."""
        text = text.strip()
        if text == "0":
            return _ZERO
        masks = []
        for term in text.split("+"):
            coeff, mask = _parse_term(term)
            if coeff % 2:
                masks.append(mask)
        return cls(masks)

    # --- basic queries ----------------------------------------------------

    @property
    def masks(self) -> frozenset[int]:
        return self._masks

    def is_zero(self) -> bool:
        return not self._masks

    def is_one(self) -> bool:
        return self._masks == _ONE._masks

    def __len__(self) -> int:
        """Number of monomials (len(0) == 0, len(1) == 1)."""
        return len(self._masks)

    def __iter__(self) -> Iterator[int]:
        return iter(self._masks)

    def __bool__(self) -> bool:
        return bool(self._masks)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AnfPoly) and self._masks == other._masks

    def __hash__(self) -> int:
        return hash(self._masks)

    def support(self) -> frozenset[int]:
        """Variables that occur in at least one monomial."""
        m = 0
        for mask in self._masks:
            m |= mask
        return frozenset(vars_of_mask(m))

    def support_mask(self) -> int:
        m = 0
        for mask in self._masks:
            m |= mask
        return m

    def max_var(self) -> int:
        """Highest occurring variable index, 0 for constants."""
        m = self.support_mask()
        return m.bit_length() - 1 if m else 0

    # --- ring operations --------------------------------------------------

    def __add__(self, other: "AnfPoly") -> "AnfPoly":
        return AnfPoly._wrap(self._masks ^ other._masks)

    def __mul__(self, other: "AnfPoly") -> "AnfPoly":
        if not self._masks or not other._masks:
            return _ZERO
        a, b = self._masks, other._masks
        if len(a) < len(b):
            a, b = b, a
        acc: set[int] = set()
        add = acc.add
        discard = acc.discard
        for m2 in b:
            for m1 in a:  # duplicate products must cancel pairwise (mod 2)
                m = m1 | m2
                if m in acc:
                    discard(m)
                else:
                    add(m)
        return AnfPoly._wrap(frozenset(acc))

    def restrict(self, i: int, b: int) -> "AnfPoly":
        """Fix variable ``i`` to the bit ``b`` and simplify."""
        bit = 1 << i
        acc: set[int] = set()
        for m in self._masks:
            if m & bit:
                if b == 0:
                    continue
                m ^= bit
            if m in acc:
                acc.discard(m)
            else:
                acc.add(m)
        return AnfPoly._wrap(frozenset(acc))

    def substitute(self, i: int, q: "AnfPoly") -> "AnfPoly":
        """Replace variable ``i`` by the polynomial ``q``, multilinearly."""
        bit = 1 << i
        if not any(m & bit for m in self._masks):
            return self
        keep: set[int] = set()
        cof: set[int] = set()
        for m in self._masks:
            if m & bit:
                cof.add(m ^ bit)
            else:
                keep.add(m)
        part = AnfPoly._wrap(frozenset(cof)) * q
        return AnfPoly._wrap(frozenset(keep) ^ part._masks)

    # --- evaluation -------------------------------------------------------

    def eval_mask(self, assignment: int) -> int:
        """Evaluate at an assignment bitmask (bit i = value of variable i)."""
        acc = 0
        for m in self._masks:
            if m & assignment == m:
                acc ^= 1
        return acc

    def eval(self, assignment: Sequence[int]) -> int:
        """Evaluate at a bit vector (position i-1 = variable i).

        Raises UncoveredVariable when the vector is shorter than the support.
        """
        if self.max_var() > len(assignment):
            raise UncoveredVariable(
                f"assignment of length {len(assignment)} does not cover "
                f"variable {self.max_var()}"
            )
        mask = 0
        for pos, bit in enumerate(assignment, start=1):
            if bit:
                mask |= 1 << pos
        return self.eval_mask(mask)

    def truth_column(self, n: int) -> int:
        """Truth table over all 2**n assignments packed into one int.

        Bit ``a`` of the result is the value at the assignment whose
        variable ``i`` equals ``(a >> (i - 1)) & 1``.
        """
        cols = var_columns(n)
        ones = all_ones_column(n)
        acc = 0
        for m in self._masks:
            col = ones
            for v in vars_of_mask(m):
                col &= cols[v]
            acc ^= col
        return acc

    # --- rendering --------------------------------------------------------

    def sorted_masks(self) -> list[int]:
        """Graded-lexicographic order: by degree, then by ascending variables."""
        return sorted(self._masks, key=lambda m: (bin(m).count("1"), vars_of_mask(m)))

    def to_text(self, prefix: str = "a") -> str:
        if not self._masks:
            return "0"
        parts = []
        for m in self.sorted_masks():
            if m == 0:
                parts.append("1")
            else:
                parts.append("*".join(f"{prefix}{v}" for v in vars_of_mask(m)))
        return " + ".join(parts)

    def to_json(self) -> list[list[int]]:
        """Sorted list of sorted variable-index lists."""
        return [list(vars_of_mask(m)) for m in self.sorted_masks()]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "AnfPoly":
        return cls.from_terms(data)

    def __repr__(self) -> str:
        return f"AnfPoly({self.to_text()})"


_ZERO = AnfPoly._wrap(frozenset())
_ONE = AnfPoly._wrap(frozenset((0,)))


class IntPoly:
    """Multilinear polynomial with unbounded integer coefficients (x^2 = x).

    Used to reproduce pre-mod-2 integer expansions exactly; coefficients can
    exceed 64 bits.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Dict[int, int] | None = None):
        self._coeffs = {m: c for m, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls()

    @classmethod
    def one(cls) -> "IntPoly":
        return cls({0: 1})

    @classmethod
    def lift(cls, p: AnfPoly) -> "IntPoly":
        """Lift a GF(2) polynomial to integer coefficients 1."""
        return cls({m: 1 for m in p.masks})

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        text = text.strip()
        if text == "0":
            return cls()
        coeffs: Dict[int, int] = {}
        for term in text.split("+"):
            coeff, mask = _parse_term(term)
            coeffs[mask] = coeffs.get(mask, 0) + coeff
        return cls(coeffs)

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._coeffs)

    def coefficient(self, mask: int) -> int:
        return self._coeffs.get(mask, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPoly) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return IntPoly._wrap(out)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        out: Dict[int, int] = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                m = m1 | m2
                nc = out.get(m, 0) + c1 * c2
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return IntPoly._wrap(out)

    @classmethod
    def _wrap(cls, coeffs: Dict[int, int]) -> "IntPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "_coeffs", coeffs)
        return p

    def reduce_mod2(self) -> AnfPoly:
        """Keep monomials with odd coefficients."""
        return AnfPoly(m for m, c in self._coeffs.items() if c % 2)

    def eval_mask(self, assignment: int) -> int:
        return sum(c for m, c in self._coeffs.items() if m & assignment == m)

    def eval(self, assignment: Sequence[int]) -> int:
        max_var = max((m.bit_length() - 1 for m in self._coeffs), default=0)
        if max_var > len(assignment):
            raise UncoveredVariable(
                f"assignment of length {len(assignment)} does not cover "
                f"variable {max_var}"
            )
        mask = 0
        for pos, bit in enumerate(assignment, start=1):
            if bit:
                mask |= 1 << pos
        return self.eval_mask(mask)

    def to_text(self, prefix: str = "x") -> str:
        if not self._coeffs:
            return "0"
        order = sorted(self._coeffs, key=lambda m: (bin(m).count("1"), vars_of_mask(m)))
        parts = []
        for m in order:
            c = self._coeffs[m]
            body = "*".join(f"{prefix}{v}" for v in vars_of_mask(m))
            if m == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"IntPoly({self.to_text()})"


# Truth-column helpers (shared by polynomials and the brute-force oracles).

_COLUMN_CACHE: Dict[int, tuple[int, ...]] = {}


def var_columns(n: int) -> tuple[int, ...]:
    """Per-variable truth columns over 2**n assignments.

    Entry ``i`` (1-based) has bit ``a`` set iff variable ``i`` is 1 in
    assignment ``a``, i.e. iff ``(a >> (i-1)) & 1``.
    """
    cached = _COLUMN_CACHE.get(n)
    if cached is not None:
        return cached
    cols = [0] * (n + 1)
    for i in range(1, n + 1):
        half = 1 << (i - 1)
        block = ((1 << half) - 1) << half  # 'half' zeros then 'half' ones
        period = half << 1
        col = 0
        for start in range(0, 1 << n, period):
            col |= block << start
        cols[i] = col
    result = tuple(cols)
    _COLUMN_CACHE[n] = result
    return result


def all_ones_column(n: int) -> int:
    return (1 << (1 << n)) - 1
