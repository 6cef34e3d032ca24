#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Genus Engine - Genus and Slope Bounds
Closed-form upper bounds on the fiber genus of a hyperelliptic fibration,
evaluated exactly and tagged with the hypotheses they were proved under.
"""

import logging
from enum import Enum
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional

from .exceptions import DomainError, ValidationError
from .invariants import SingularityIndices, cleared_excess_coefficients
from .utils import Rational, floor_rational

logger = logging.getLogger(__name__)

# ============================================================================
# Domain Types
# ============================================================================

class BoundSource(str, Enum):
    """Which closed form produced a GenusBound"""

    SLOPE_LINEAR = "slope_linear"                 # 4chi/(4chi-K^2)
    LOW_SLOPE = "low_slope"                       # (4chi+4)/(2+4chi-K^2), lambda <= 4
    RATIONAL_BASE = "rational_base"               # 2chi+1, b = 0
    ELLIPTIC_BASE = "elliptic_base"               # 25/4 chi^2 + 19/2 chi + 2, b = 1
    HIGHER_BASE = "higher_base"                   # 16 chi^2 + 14 chi + 2, b >= 2
    SHARP_N = "sharp_n"                           # g(lambda, chi, n)
    LARGE_GENUS_EVEN = "large_genus_even"
    LARGE_GENUS_ODD = "large_genus_odd"
    ELLIPTIC_BASE_PARITY = "elliptic_base_parity"  # large-genus form at lambda = 9
    HIGHER_BASE_PARITY = "higher_base_parity"      # large-genus form at lambda = 12
    HODGE_POSITIVITY = "hodge_positivity"          # chi(O_S)/(b-1) + 1


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of(cls, g: int) -> "Parity":
        return cls.EVEN if g % 2 == 0 else cls.ODD


@dataclass(frozen=True)
class GenusBound:
    """An evaluated upper bound for g with its provenance"""

    value: Fraction
    source: BoundSource
    params: Dict[str, object] = field(default_factory=dict)
    in_domain: bool = True
    note: str = ""

    @property
    def floor_value(self) -> int:
        return floor_rational(self.value)

    def to_dict(self) -> Dict[str, object]:
        return {
            "value": self.value,
            "floor": self.floor_value,
            "source": self.source.value,
            "params": self.params,
            "in_domain": self.in_domain,
            "note": self.note,
        }


@dataclass(frozen=True)
class GBoundExtremes:
    """Extremes of g_bound_fn over an integer range of n (smallest n wins ties)"""

    min_value: Fraction
    min_n: int
    max_value: Fraction
    max_n: int
    values: Dict[int, Fraction]

# ============================================================================
# Slope Inequalities
# ============================================================================

def _require_genus(g: int):
    if not isinstance(g, int) or g < 2:
        raise ValidationError(f"genus must be an integer >= 2, got {g!r}")


def slope_lower(g: int) -> Fraction:
    """lambda_f >= 4(g-1)/g"""
    _require_genus(g)
    return Fraction(4 * (g - 1), g)


def hyperelliptic_slope_cap(g: int) -> Fraction:
    """12 - (8g+4)/g^2 for even g, 12 - (8g+4)/(g^2-1) for odd g"""
    _require_genus(g)
    denominator = g * g if g % 2 == 0 else g * g - 1
    return 12 - Fraction(8 * g + 4, denominator)


def slope_upper(g: int, b: int) -> Fraction:
    """
    Upper slope cap; over an elliptic base the Miyaoka-Yau cap 9 also applies.

    Args:
        g: Genus >= 2
        b: Base genus >= 0
    """
    if b < 0:
        raise ValidationError(f"base genus must be >= 0, got {b}")
    cap = hyperelliptic_slope_cap(g)
    if b == 1:
        return min(Fraction(9), cap)
    return cap

# ============================================================================
# Genus Bound in Terms of (lambda, chi, n)
# ============================================================================

def g_bound_fn(lam: Rational, chi: Rational, n: int, relaxed: bool = False) -> Fraction:
    """
    g <= (lambda-4)^2/(4n) chi^2 + (lambda - 4 + lambda/(2n)) chi + n + 1.

    Proved for lambda > 4; relaxed=True evaluates the expression anyway
    (equality checks at lambda = 4 and below).

    Raises:
        DomainError: n <= 0, or lambda <= 4 without relaxed
    """
    lam, chi = Fraction(lam), Fraction(chi)
    if n <= 0:
        raise DomainError(f"n must be positive, got {n}")
    if lam <= 4 and not relaxed:
        raise DomainError(f"lambda={lam} <= 4 is outside the bound's hypothesis")
    n = Fraction(n)
    return (lam - 4) ** 2 / (4 * n) * chi ** 2 + (lam - 4 + lam / (2 * n)) * chi + n + 1


def bound_sharp(lam: Rational, chi: Rational, n: int) -> GenusBound:
    lam, chi = Fraction(lam), Fraction(chi)
    return GenusBound(
        value=g_bound_fn(lam, chi, n, relaxed=True),
        source=BoundSource.SHARP_N,
        params={"lambda": lam, "chi": chi, "n": n},
        in_domain=lam > 4,
        note="" if lam > 4 else "lambda <= 4: evaluated outside hypothesis",
    )


def n_upper(lam: Rational, chi: Rational, g: int) -> Fraction:
    """n <= ((lambda-4)/2 + lambda/(g-1)) chi"""
    lam, chi = Fraction(lam), Fraction(chi)
    _require_genus(g)
    if lam <= 4:
        raise DomainError(f"lambda={lam} must exceed 4")
    if chi <= 0:
        raise DomainError(f"chi={chi} must be positive")
    return ((lam - 4) / 2 + lam / (g - 1)) * chi


def n_le_3chi(lam: Rational, chi: Rational, g: int) -> bool:
    """True when the n cap forces n <= 3chi (holds at lambda <= 9 once g >= 18)"""
    cap = n_upper(lam, chi, g)
    return cap < 3 * Fraction(chi) + 1


def gbound_extremes(lam: Rational, chi: Rational, n_lo: int, n_hi: int) -> GBoundExtremes:
    """
    Minimum and maximum of g_bound_fn over n in [n_lo, n_hi].

    g(n) is convex in n, so the maximum always sits at an endpoint; the
    full scan also yields the minimum.
    """
    lam, chi = Fraction(lam), Fraction(chi)
    if lam <= 4 or chi <= 0:
        raise DomainError(f"need lambda > 4 and chi > 0, got lambda={lam}, chi={chi}")
    if n_lo < 1 or n_hi < n_lo:
        raise DomainError(f"empty or non-positive n range [{n_lo}, {n_hi}]")

    values = {n: g_bound_fn(lam, chi, n) for n in range(n_lo, n_hi + 1)}
    min_n = min(values, key=lambda n: (values[n], n))
    max_n = min(values, key=lambda n: (-values[n], n))
    return GBoundExtremes(
        min_value=values[min_n], min_n=min_n,
        max_value=values[max_n], max_n=max_n,
        values=values,
    )


def sharpness_pattern(si: SingularityIndices) -> bool:
    """Exactly one s_{2k} = 1 with 2 <= k, 2k <= g+1, and every other s_j (j >= 3) zero"""
    nonzero = {j: v for j, v in si.nonzero().items() if j >= 3}
    if len(nonzero) != 1:
        return False
    (j, value), = nonzero.items()
    return value == 1 and j % 2 == 0 and 4 <= j <= si.g + 1

# ============================================================================
# Bounds in Terms of (chi, b, K^2)
# ============================================================================

def bound_case1(chi: Rational, ksq: Rational) -> GenusBound:
    """g <= (4chi+4)/(2+4chi-K^2) for lambda <= 4"""
    chi, ksq = Fraction(chi), Fraction(ksq)
    denominator = 2 + 4 * chi - ksq
    if denominator <= 0:
        raise DomainError(
            f"2+4chi-K^2 = {denominator} <= 0: lambda > 4, use the quadratic bound"
        )
    return GenusBound(
        value=(4 * chi + 4) / denominator,
        source=BoundSource.LOW_SLOPE,
        params={"chi": chi, "ksq": ksq},
        in_domain=ksq <= 4 * chi,
    )


def bound_slope_linear(chi: Rational, ksq: Rational) -> GenusBound:
    """g <= 4chi/(4chi-K^2), straight from the slope inequality"""
    chi, ksq = Fraction(chi), Fraction(ksq)
    if ksq >= 4 * chi:
        raise DomainError(f"needs K^2 < 4chi, got K^2={ksq}, chi={chi}")
    return GenusBound(
        value=4 * chi / (4 * chi - ksq),
        source=BoundSource.SLOPE_LINEAR,
        params={"chi": chi, "ksq": ksq},
        note="superseded by low_slope",
    )


def locally_nontrivial_bound(chi: Rational, b: int, ksq: Optional[Rational] = None) -> GenusBound:
    """
    Genus bound for a locally non-trivial hyperelliptic fibration.

    With K^2 <= 4chi known the low-slope branch applies; otherwise the bound
    depends only on the base genus.

    Args:
        chi: chi_f > 0
        b: Base genus >= 0
        ksq: K_f^2 if known

    Returns:
        GenusBound tagged with the branch used
    """
    chi = Fraction(chi)
    if b < 0:
        raise ValidationError(f"base genus must be >= 0, got {b}")
    if chi <= 0:
        raise DomainError(f"chi must be positive, got {chi}")

    if ksq is not None and Fraction(ksq) <= 4 * chi:
        return bound_case1(chi, ksq)

    params = {"chi": chi, "b": b}
    if ksq is not None:
        params["ksq"] = Fraction(ksq)
    if b == 0:
        return GenusBound(2 * chi + 1, BoundSource.RATIONAL_BASE, params)
    if b == 1:
        value = Fraction(25, 4) * chi ** 2 + Fraction(19, 2) * chi + 2
        return GenusBound(value, BoundSource.ELLIPTIC_BASE, params)
    return GenusBound(16 * chi ** 2 + 14 * chi + 2, BoundSource.HIGHER_BASE, params)


def bound_hodge(chi_surface: Rational, b: int) -> GenusBound:
    """
    g <= chi(O_S)/(b-1) + 1 for an Albanese fibration over a base of genus b >= 2.

    Note the input is chi(O_S), not chi_f.
    """
    chi_surface = Fraction(chi_surface)
    if b < 2:
        raise DomainError(f"Hodge positivity bound needs b >= 2, got {b}")
    return GenusBound(
        value=chi_surface / (b - 1) + 1,
        source=BoundSource.HODGE_POSITIVITY,
        params={"chi_surface": chi_surface, "b": b},
        note="input read as chi(O_S)",
    )


def large_genus_bound(lam: Rational, chi: Rational, parity: Parity) -> Fraction:
    """
    Parity-refined bound valid for g >= 25, chi >= 4.

    even: (lambda-4)^2/4 chi^2 + (3lambda/2 - 4) chi + 2
    odd:  (lambda-4)^2/8 chi^2 + (5lambda/4 - 4) chi + 3
    """
    lam, chi = Fraction(lam), Fraction(chi)
    if Parity(parity) is Parity.EVEN:
        return (lam - 4) ** 2 / 4 * chi ** 2 + (Fraction(3, 2) * lam - 4) * chi + 2
    return (lam - 4) ** 2 / 8 * chi ** 2 + (Fraction(5, 4) * lam - 4) * chi + 3


def bound_large_genus(lam: Rational, chi: Rational, parity: Parity) -> GenusBound:
    lam, chi = Fraction(lam), Fraction(chi)
    parity = Parity(parity)
    source = BoundSource.LARGE_GENUS_EVEN if parity is Parity.EVEN else BoundSource.LARGE_GENUS_ODD
    return GenusBound(
        value=large_genus_bound(lam, chi, parity),
        source=source,
        params={"lambda": lam, "chi": chi, "parity": parity.value},
        in_domain=chi >= 4,
        note="valid for g >= 25, chi >= 4",
    )


def parity_bound(chi: Rational, b: int, parity: Parity) -> GenusBound:
    """large_genus_bound at the slope cap: lambda = 9 for b = 1, lambda = 12 for b >= 2"""
    chi = Fraction(chi)
    if b < 1:
        raise DomainError(f"parity bound needs b >= 1, got {b}")
    lam = Fraction(9) if b == 1 else Fraction(12)
    source = BoundSource.ELLIPTIC_BASE_PARITY if b == 1 else BoundSource.HIGHER_BASE_PARITY
    parity = Parity(parity)
    return GenusBound(
        value=large_genus_bound(lam, chi, parity),
        source=source,
        params={"chi": chi, "b": b, "lambda": lam, "parity": parity.value},
        in_domain=chi >= 4,
        note="valid for g >= 25, chi >= 4",
    )

# ============================================================================
# Index Constraints
# ============================================================================

def _cap_denominator(g: int, b: int) -> int:
    if b == 0:
        raise DomainError("chi lower bound needs b >= 1")
    if b < 0:
        raise ValidationError(f"base genus must be >= 0, got {b}")
    # g * (cap - 4(g-1)/g) with cap 9 (b = 1) or 12 (b >= 2)
    return 5 * g + 4 if b == 1 else 8 * g + 4


def chi_lower_from_indices(si: SingularityIndices, b: int) -> Fraction:
    """
    Lower bound for chi_f obtained by capping the slope (9 for b = 1, 12 for b >= 2).

    Numerator: (g^2-1)s_{g+2} + sum((4k-1)g - 4k^2)s_{2k+1} + sum 2(k-1)(g-k)s_{2k}.
    """
    denominator = _cap_denominator(si.g, b)
    coefficients = cleared_excess_coefficients(si.g)
    numerator = sum(c * si.get(j) for j, c in coefficients.items())
    return Fraction(numerator, denominator)


def forced_zero_indices(g: int, chi: Rational, b: int) -> FrozenSet[int]:
    """Indices j whose single-unit contribution to chi_lower_from_indices already exceeds chi"""
    _require_genus(g)
    chi = Fraction(chi)
    denominator = _cap_denominator(g, b)
    coefficients = cleared_excess_coefficients(g)
    return frozenset(
        j for j, c in coefficients.items()
        if Fraction(c, denominator) > chi
    )


def minus_curve_ksq_cap(m: int, chi: Rational) -> Fraction:
    """
    K^2 <= 9chi - (m+1)^2/(4m) on a surface carrying a smooth rational (-m)-curve.

    Raises:
        ValidationError: m < 1
    """
    if m < 1:
        raise ValidationError(f"self-intersection must be -m with m >= 1, got m={m}")
    return 9 * Fraction(chi) - Fraction((m + 1) ** 2, 4 * m)


def s2_negative_genus_cap(ksq: Rational, chi: Rational) -> Optional[Fraction]:
    """
    Largest real g with (g-2)/(2(g-1)) <= K^2 - (8g-14)/(g-1) chi.

    Cleared: g(1 + 16chi - 2K^2) <= 2 + 28chi - 2K^2. Returns None when the
    left coefficient is not positive, i.e. every g >= 2 satisfies it.
    """
    ksq, chi = Fraction(ksq), Fraction(chi)
    slope = 1 + 16 * chi - 2 * ksq
    if slope <= 0:
        return None
    return (2 + 28 * chi - 2 * ksq) / slope

# ============================================================================
# Aggregation
# ============================================================================

def bounds_for(
    chi: Rational,
    b: int,
    ksq: Optional[Rational] = None,
    lam: Optional[Rational] = None,
    n: Optional[int] = None,
) -> List[GenusBound]:
    """
    Every bound applicable to the given data, in a fixed order.

    Raises:
        ValidationError: lambda and K^2 both given but lambda != K^2/chi
    """
    chi = Fraction(chi)
    if ksq is not None and lam is not None and Fraction(lam) != Fraction(ksq) / chi:
        raise ValidationError(f"inconsistent flags: lambda={lam} but K^2/chi={Fraction(ksq) / chi}")
    if lam is None and ksq is not None:
        lam = Fraction(ksq) / chi

    bounds = [locally_nontrivial_bound(chi, b, ksq)]
    if ksq is not None and Fraction(ksq) < 4 * chi:
        bounds.append(bound_slope_linear(chi, ksq))
    if b >= 2:
        bounds.append(bound_hodge(chi, b))
    if b >= 1:
        bounds.extend(parity_bound(chi, b, parity) for parity in Parity)
    if lam is not None:
        lam = Fraction(lam)
        if lam > 4:
            bounds.extend(bound_large_genus(lam, chi, parity) for parity in Parity)
        if n is not None:
            bounds.append(bound_sharp(lam, chi, n))
    elif n is not None:
        raise ValidationError("--n needs --lambda or --ksq")

    logger.debug(f"bounds_for(chi={chi}, b={b}): {len(bounds)} bounds")
    return bounds

# ============================================================================
# Testing
# ============================================================================

if __name__ == "__main__":
    print("Testing Genus Bounds")
    print("=" * 60)

    assert g_bound_fn(9, 1, 1) == Fraction(71, 4)
    assert g_bound_fn(4, 4, 2, relaxed=True) == 7
    print("✓ g_bound_fn works")

    assert locally_nontrivial_bound(6, 1, 24).value == 14
    assert locally_nontrivial_bound(1, 1).floor_value == 17
    print("✓ locally_nontrivial_bound works")

    assert s2_negative_genus_cap(7, 1) == Fraction(16, 3)
    print("✓ s2_negative_genus_cap works")

    print("\nAll bound tests passed!")
