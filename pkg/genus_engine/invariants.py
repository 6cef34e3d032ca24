#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Genus Engine - Fibration Invariants
Xiao's formulas taking singularity indices of a hyperelliptic fibration
to its relative invariants (chi_f, K_f^2, e_f, n), in exact arithmetic.

Index convention: a fibration of genus g has indices s_2, s_3, ..., s_{g+2}.
In the "direct" formulas every j in [3, g+1] belongs to exactly one of the
odd (j = 2k+1, k <= g//2) or even (j = 2k, 2 <= k <= (g+1)//2) sums, and
s_{g+2} only appears in its own term. In the formulas through n, the odd
sum runs to k = (g+1)//2, so for odd g its last term is s_{g+2}.
"""

import re
import logging
from fractions import Fraction
from functools import lru_cache
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from . import config
from .exceptions import (
    ConsistencyError,
    NotGeometricError,
    ParseError,
    ValidationError,
)
from .utils import Rational, format_rational

logger = logging.getLogger(__name__)

# ============================================================================
# Domain Types
# ============================================================================

def _check_genus_ceiling(g: int):
    if g > config.MAX_GENUS:
        raise ValidationError(f"genus g={g} exceeds the ceiling {config.MAX_GENUS} (GENUS_ENGINE_MAX_GENUS)")


@dataclass(frozen=True, order=True)
class SingularityIndices:
    """
    Genus g plus the dense vector (s_2, ..., s_{g+2}).

    s_2 may be negative; s_j >= 0 for j >= 3; s_{g+2} = 0 when g is even.

    Example:
        >>> si = SingularityIndices.from_mapping(7, {2: 30, 6: 1})
        >>> si[6]
        1
    """

    g: int
    s: Tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.g, int) or isinstance(self.g, bool) or self.g < 2:
            raise ValidationError(f"genus must be an integer >= 2, got {self.g!r}")
        _check_genus_ceiling(self.g)
        if len(self.s) != self.g + 1:
            raise ValidationError(
                f"expected {self.g + 1} indices s_2..s_{self.g + 2}, got {len(self.s)}"
            )
        for offset, value in enumerate(self.s):
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValidationError(f"s_{offset + 2} must be an integer, got {value!r}")
            if offset >= 1 and value < 0:
                raise ValidationError(f"s_{offset + 2} = {value} is negative")
        if self.g % 2 == 0 and self.s[self.g] != 0:
            raise ValidationError(
                f"s_{self.g + 2} must vanish for even genus g={self.g}"
            )

    @classmethod
    def from_mapping(cls, g: int, mapping: Mapping[int, int]) -> "SingularityIndices":
        """Build from {j: s_j}; absent indices are 0"""
        if not isinstance(g, int) or g < 2:
            raise ValidationError(f"genus must be an integer >= 2, got {g!r}")
        _check_genus_ceiling(g)
        dense = [0] * (g + 1)
        for j, value in mapping.items():
            if not 2 <= j <= g + 2:
                raise ValidationError(f"index s_{j} outside s_2..s_{g + 2} for g={g}")
            dense[j - 2] = value
        return cls(g, tuple(dense))

    @classmethod
    def zero(cls, g: int) -> "SingularityIndices":
        _check_genus_ceiling(g)
        return cls(g, (0,) * (g + 1))

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "SingularityIndices":
        """
        Parse command-line tokens such as ``g=7 s2=30 s6=1``.

        Raises:
            ParseError: malformed token, missing g, repeated index
        """
        g: Optional[int] = None
        mapping: Dict[int, int] = {}
        for token in tokens:
            for part in token.replace(",", " ").split():
                match = re.fullmatch(r"(g|s(\d+))=([+-]?\d+)", part.strip())
                if not match:
                    raise ParseError(f"Cannot parse index token {part!r} (expected g=N or sJ=N)")
                value = int(match.group(3))
                if match.group(1) == "g":
                    if g is not None:
                        raise ParseError("g given twice")
                    g = value
                else:
                    j = int(match.group(2))
                    if j in mapping:
                        raise ParseError(f"s{j} given twice")
                    mapping[j] = value
        if g is None:
            raise ParseError("missing g=<genus>")
        return cls.from_mapping(g, mapping)

    def __getitem__(self, j: int) -> int:
        if not 2 <= j <= self.g + 2:
            raise KeyError(j)
        return self.s[j - 2]

    def get(self, j: int) -> int:
        """s_j, or 0 outside 2..g+2"""
        return self.s[j - 2] if 2 <= j <= self.g + 2 else 0

    def nonzero(self) -> Dict[int, int]:
        return {j: v for j, v in enumerate(self.s, start=2) if v != 0}

    def to_dict(self) -> Dict[str, object]:
        return {"g": self.g, "s": {f"s{j}": v for j, v in self.nonzero().items()}}

    def __str__(self) -> str:
        parts = [f"g={self.g}"] + [f"s{j}={v}" for j, v in self.nonzero().items()]
        return " ".join(parts)


@dataclass(frozen=True)
class FibrationNumerics:
    """Exact relative invariants of one fibration datum"""

    g: int
    b: int
    n: Fraction
    chi: Fraction
    ksq: Fraction
    e: Fraction
    lam: Optional[Fraction]

    def to_dict(self) -> Dict[str, object]:
        return {
            "g": self.g,
            "b": self.b,
            "n": self.n,
            "chi": self.chi,
            "ksq": self.ksq,
            "e": self.e,
            "lambda": self.lam,
        }

# ============================================================================
# Index Ranges
# ============================================================================

def _direct_odd(g: int) -> Iterator[Tuple[int, int]]:
    """(k, j=2k+1) for k = 1..g//2"""
    for k in range(1, g // 2 + 1):
        yield k, 2 * k + 1


def _direct_even(g: int) -> Iterator[Tuple[int, int]]:
    """(k, j=2k) for k = 2..(g+1)//2"""
    for k in range(2, (g + 1) // 2 + 1):
        yield k, 2 * k


def _via_n_odd(g: int) -> Iterator[Tuple[int, int]]:
    """(k, j=2k+1) for k = 1..(g+1)//2; reaches j = g+2 when g is odd"""
    for k in range(1, (g + 1) // 2 + 1):
        yield k, 2 * k + 1


def _table(g: int, top, odd, even, s2=None) -> Dict[int, Fraction]:
    """Per-index coefficients of a direct formula, keyed by j"""
    table: Dict[int, Fraction] = {}
    if s2 is not None:
        table[2] = Fraction(s2)
    table[g + 2] = Fraction(top)
    for k, j in _direct_odd(g):
        table[j] = Fraction(odd(k))
    for k, j in _direct_even(g):
        table[j] = Fraction(even(k))
    return table

# ============================================================================
# Coefficient Tables
# ============================================================================

@lru_cache(maxsize=None)
def cleared_chi_coefficients(g: int) -> Dict[int, int]:
    """
    Integer coefficients c_j with 4(2g+1)*chi_f = sum c_j s_j.

    c_2 = g, c_{g+2} = g^2-2g-1, c_{2k+1} = 4k(g-k), c_{2k} = 2k(g-k+1).
    """
    raw = _table(
        g,
        top=g * g - 2 * g - 1,
        odd=lambda k: 4 * k * (g - k),
        even=lambda k: 2 * k * (g - k + 1),
        s2=g,
    )
    return {j: int(c) for j, c in raw.items()}


@lru_cache(maxsize=None)
def cleared_excess_coefficients(g: int) -> Dict[int, int]:
    """
    Integer coefficients d_j (j >= 3) with g*(K^2 - 4(g-1)/g*chi) = sum d_j s_j.

    All of them are positive for g >= 2, which bounds every s_j once the
    slope is capped.
    """
    raw = _table(
        g,
        top=g * g - 1,
        odd=lambda k: 4 * k * (g - k) - g,
        even=lambda k: 2 * k * (g - k + 1) - 2 * g,
    )
    return {j: int(c) for j, c in raw.items()}


@lru_cache(maxsize=None)
def _chi_table(g: int) -> Dict[int, Fraction]:
    return _table(
        g,
        top=Fraction(g * g - 2 * g - 1, 4 * (2 * g + 1)),
        odd=lambda k: Fraction(k * (g - k), 2 * g + 1),
        even=lambda k: Fraction(k * (g - k + 1), 2 * (2 * g + 1)),
        s2=Fraction(g, 4 * (2 * g + 1)),
    )


@lru_cache(maxsize=None)
def _ksq_table(g: int) -> Dict[int, Fraction]:
    return _table(
        g,
        top=Fraction((g - 1) * (3 * g + 1), 2 * g + 1),
        odd=lambda k: Fraction(12 * k * (g - k) - 2 * g - 1, 2 * g + 1),
        even=lambda k: Fraction(6 * k * (g - k + 1) - 4 * g - 2, 2 * g + 1),
        s2=Fraction(g - 1, 2 * g + 1),
    )


@lru_cache(maxsize=None)
def _e_table(g: int) -> Dict[int, Fraction]:
    return _table(g, top=-2, odd=lambda k: 1, even=lambda k: 2, s2=1)


@lru_cache(maxsize=None)
def _n_extra_table(g: int) -> Dict[int, Fraction]:
    """Terms added to e_f in 2n(2g+1) = e_f + ..."""
    return _table(
        g,
        top=(g + 1) * (2 * g + 4),
        odd=lambda k: 8 * k * k + 4 * k - 1,
        even=lambda k: 4 * k * k - 2 * k - 2,
    )


@lru_cache(maxsize=None)
def _slope_identity_table(g: int) -> Dict[int, Fraction]:
    """Right-hand side of K^2 - 4chi + 2n = (2g+2)s_{g+2} + sum (4k-1)s_{2k+1} + sum 2(k-1)s_{2k}"""
    return _table(g, top=2 * g + 2, odd=lambda k: 4 * k - 1, even=lambda k: 2 * (k - 1))


def _apply(table: Mapping[int, Rational], si: SingularityIndices) -> Fraction:
    return sum((Fraction(c) * si.get(j) for j, c in table.items()), Fraction(0))

# ============================================================================
# Xiao's Formulas
# ============================================================================

def e_from_indices(si: SingularityIndices) -> int:
    """e_f = s_2 - 2s_{g+2} + sum s_{2k+1} + 2 sum s_{2k}"""
    return int(_apply(_e_table(si.g), si))


def n_from_indices(si: SingularityIndices) -> Fraction:
    """
    n from 2n(2g+1) = e_f + (g+1)(2g+4)s_{g+2} + sum (8k^2+4k-1)s_{2k+1}
    + sum (4k^2-2k-2)s_{2k}.

    Integrality and parity are checked separately by validate_n.
    """
    g = si.g
    total = e_from_indices(si) + _apply(_n_extra_table(g), si)
    return Fraction(total, 2 * (2 * g + 1))


def validate_n(g: int, n: Rational, require_parity: bool = True) -> bool:
    """
    True iff n is a positive integer (and even when g is odd).

    Args:
        g: Genus
        n: Candidate value of R^2/(4(g+1))
        require_parity: Enforce the odd-genus evenness of n
    """
    n = Fraction(n)
    if n.denominator != 1 or n <= 0:
        return False
    if require_parity and g % 2 == 1 and n.numerator % 2 != 0:
        return False
    return True


def chi_from_indices(si: SingularityIndices) -> Fraction:
    return _apply(_chi_table(si.g), si)


def chi_via_n(si: SingularityIndices, n: Rational) -> Fraction:
    """chi_f = gn/2 - sum k^2 s_{2k+1} - sum k(k-1)/2 s_{2k}, odd sum up to k=(g+1)//2"""
    g = si.g
    value = Fraction(g) * Fraction(n) / 2
    for k, j in _via_n_odd(g):
        value -= k * k * si.get(j)
    for k, j in _direct_even(g):
        value -= Fraction(k * (k - 1), 2) * si.get(j)
    return value


def ksq_from_indices(si: SingularityIndices) -> Fraction:
    return _apply(_ksq_table(si.g), si)


def ksq_via_n(si: SingularityIndices, n: Rational) -> Fraction:
    """K_f^2 = (2g-2)n + s_{g+2} - sum (2k-1)^2 s_{2k+1} - sum 2(k-1)^2 s_{2k}"""
    g = si.g
    value = (2 * g - 2) * Fraction(n) + si.get(g + 2)
    for k, j in _via_n_odd(g):
        value -= (2 * k - 1) ** 2 * si.get(j)
    for k, j in _direct_even(g):
        value -= 2 * (k - 1) ** 2 * si.get(j)
    return value


def slope_excess(si: SingularityIndices) -> Fraction:
    """K_f^2 - 4(g-1)/g * chi_f, evaluated term by term"""
    table = cleared_excess_coefficients(si.g)
    return _apply(table, si) / si.g


def slope_identity_rhs(si: SingularityIndices) -> Fraction:
    """Value that K_f^2 - 4chi_f + 2n must equal for every valid vector"""
    return _apply(_slope_identity_table(si.g), si)


def numerics(si: SingularityIndices, b: int, require_parity: bool = True) -> FibrationNumerics:
    """
    Compose the formulas into a FibrationNumerics record.

    Both chi and K^2 are evaluated by the two independent routes and must
    agree exactly.

    Raises:
        ValidationError: b < 0
        NotGeometricError: n not a positive integer (or odd for odd g)
        ConsistencyError: the two formula families disagree
    """
    if not isinstance(b, int) or b < 0:
        raise ValidationError(f"base genus b must be an integer >= 0, got {b!r}")

    n = n_from_indices(si)
    if not validate_n(si.g, n, require_parity=require_parity):
        raise NotGeometricError(
            f"not a geometric index vector: n={format_rational(n)} for g={si.g}"
        )

    chi = chi_from_indices(si)
    chi_n = chi_via_n(si, n)
    if chi != chi_n:
        raise ConsistencyError(f"chi mismatch for {si}: {chi} != {chi_n}")

    ksq = ksq_from_indices(si)
    ksq_n = ksq_via_n(si, n)
    if ksq != ksq_n:
        raise ConsistencyError(f"K^2 mismatch for {si}: {ksq} != {ksq_n}")

    e = Fraction(e_from_indices(si))
    if 12 * chi != ksq + e:
        raise ConsistencyError(f"Noether equality fails for {si}")

    lam = ksq / chi if chi > 0 else None
    logger.debug(f"numerics({si}, b={b}): chi={chi} ksq={ksq} n={n}")
    return FibrationNumerics(g=si.g, b=b, n=n, chi=chi, ksq=ksq, e=e, lam=lam)

# ============================================================================
# Testing
# ============================================================================

if __name__ == "__main__":
    print("Testing Fibration Invariants")
    print("=" * 60)

    si = SingularityIndices.from_mapping(7, {2: 30, 6: 1})
    assert e_from_indices(si) == 32
    assert n_from_indices(si) == 2
    print("✓ e_f and n work")

    record = numerics(si, b=1)
    assert (record.chi, record.ksq, record.lam) == (4, 16, 4)
    print("✓ numerics works")

    si = SingularityIndices.from_mapping(13, {2: 4, 15: 1})
    n = n_from_indices(si)
    assert chi_via_n(si, n) == chi_from_indices(si)
    print("✓ dual chi formulas agree at j = g+2")

    print("\nAll invariant tests passed!")
