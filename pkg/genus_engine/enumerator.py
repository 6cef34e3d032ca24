#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Genus Engine - Feasibility Enumerator
Exhaustive search for singularity-index vectors compatible with a given
chi_f and base genus, reproducing the (K^2, g) classification for
surfaces with p_g = q = 1.

For each genus the search runs over s_j (j >= 3) inside the box cut out by
the slope cap: g*(K^2 - 4(g-1)/g*chi) = sum d_j s_j with every d_j > 0, so
sum d_j s_j <= (g*cap - 4(g-1))*chi. s_2 is then solved exactly from the
cleared chi equation 4(2g+1)chi = g*s_2 + sum c_j s_j. The box does not
depend on the sign of s_2, so both branches are searched completely.
"""

import logging
from enum import Enum
from fractions import Fraction
from dataclasses import dataclass, field
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import config
from .bounds import hyperelliptic_slope_cap, minus_curve_ksq_cap, slope_lower, slope_upper
from .exceptions import GenusEngineError, ValidationError
from .invariants import (
    FibrationNumerics,
    SingularityIndices,
    cleared_chi_coefficients,
    cleared_excess_coefficients,
    e_from_indices,
    n_from_indices,
    numerics,
    slope_identity_rhs,
    validate_n,
)
from .utils import floor_rational

logger = logging.getLogger(__name__)

# ============================================================================
# Domain Types
# ============================================================================

class S2Mode(str, Enum):
    NON_NEGATIVE = "nonnegative"
    NEGATIVE = "negative"
    ANY = "any"


class SlopeCapKind(str, Enum):
    MIYAOKA_YAU = "miyaoka_yau"        # min(9, hyperelliptic cap); elliptic base
    HYPERELLIPTIC = "hyperelliptic"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SlopeCap:
    kind: SlopeCapKind
    value: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind is SlopeCapKind.CUSTOM:
            if self.value is None:
                raise ValidationError("custom slope cap needs a value")
            object.__setattr__(self, "value", Fraction(self.value))

    @classmethod
    def default_for(cls, b: int) -> "SlopeCap":
        return cls(SlopeCapKind.MIYAOKA_YAU if b == 1 else SlopeCapKind.HYPERELLIPTIC)

    def at(self, g: int) -> Fraction:
        if self.kind is SlopeCapKind.MIYAOKA_YAU:
            return slope_upper(g, 1)
        if self.kind is SlopeCapKind.HYPERELLIPTIC:
            return hyperelliptic_slope_cap(g)
        return self.value

    def describe(self) -> str:
        if self.kind is SlopeCapKind.CUSTOM:
            return f"custom slope cap {self.value}"
        return f"{self.kind.value} slope cap"


@dataclass(frozen=True)
class SearchSpec:
    """
    Hypothesis bundle for one enumeration.

    Example:
        >>> SearchSpec(chi=1, b=1, g_lo=13, g_hi=40)
    """

    chi: Fraction
    b: int
    g_lo: int = 2
    g_hi: int = config.DEFAULT_G_CEILING
    s2_mode: S2Mode = S2Mode.ANY
    slope_cap: Optional[SlopeCap] = None
    require_n_parity: bool = True
    ksq_range: Optional[Tuple[int, int]] = None
    minus_curve_m: int = config.NEGATIVE_BRANCH_MINUS_CURVE

    def __post_init__(self):
        object.__setattr__(self, "chi", Fraction(self.chi))
        object.__setattr__(self, "s2_mode", S2Mode(self.s2_mode))
        if self.slope_cap is None:
            object.__setattr__(self, "slope_cap", SlopeCap.default_for(self.b))
        if self.chi <= 0:
            raise ValidationError(f"chi must be positive, got {self.chi}")
        if self.b < 1:
            raise ValidationError(f"base genus must be >= 1, got {self.b}")
        if self.g_lo < 2 or self.g_hi < self.g_lo:
            raise ValidationError(f"invalid genus range [{self.g_lo}, {self.g_hi}]")
        if self.g_hi > config.MAX_GENUS:
            raise ValidationError(f"g_hi={self.g_hi} exceeds the genus ceiling {config.MAX_GENUS}")
        if self.ksq_range is not None:
            lo, hi = self.ksq_range
            if hi < lo:
                raise ValidationError(f"invalid K^2 range [{lo}, {hi}]")
        if self.minus_curve_m < 1:
            raise ValidationError(f"minus_curve_m must be >= 1, got {self.minus_curve_m}")

    @property
    def genera(self) -> range:
        return range(self.g_lo, self.g_hi + 1)

    def negative_ksq_cap(self) -> int:
        """Floor of the (-m)-curve cap applied to every case with s_2 < 0"""
        return floor_rational(minus_curve_ksq_cap(self.minus_curve_m, self.chi))

    def constraint_families(self, negative: bool) -> List[str]:
        families = [
            "chi equation",
            "n positive integer",
            "s_{g+2}=0 for even g",
            "integral K^2",
            "slope lower bound 4(g-1)/g",
            self.slope_cap.describe(),
            "e_f >= 0",
        ]
        if self.require_n_parity:
            families.append("n even for odd g")
        if self.ksq_range is not None:
            families.append(f"K^2 in [{self.ksq_range[0]}, {self.ksq_range[1]}]")
        if negative:
            families.append(f"(-{self.minus_curve_m})-curve cap K^2 <= {self.negative_ksq_cap()}")
        return families


@dataclass(frozen=True)
class FeasibleCase:
    """One index vector surviving every constraint of a SearchSpec"""

    g: int
    ksq: int
    n: int
    indices: SingularityIndices
    numerics: FibrationNumerics
    branch: S2Mode

    @property
    def sort_key(self):
        return (self.g, self.ksq, self.indices.s)

    def to_dict(self) -> Dict[str, object]:
        return {
            "g": self.g,
            "ksq": self.ksq,
            "n": self.n,
            "branch": self.branch.value,
            "indices": self.indices.to_dict(),
            "numerics": self.numerics.to_dict(),
        }


@dataclass
class DiscrepancyReport:
    """Comparison of an enumerated (K^2, g) table with the published one"""

    surplus: List[Tuple[int, int]] = field(default_factory=list)
    missing: List[Tuple[int, int]] = field(default_factory=list)
    witnesses: Dict[Tuple[int, int], List[FeasibleCase]] = field(default_factory=dict)
    families: Dict[Tuple[int, int], List[str]] = field(default_factory=dict)

    @property
    def matches(self) -> bool:
        return not self.surplus and not self.missing

    def to_dict(self) -> Dict[str, object]:
        return {
            "matches": self.matches,
            "surplus": [
                {
                    "ksq": ksq,
                    "g": g,
                    "witnesses": [
                        {"indices": str(case.indices), "lambda": case.numerics.lam}
                        for case in self.witnesses[(ksq, g)]
                    ],
                    "survives": self.families[(ksq, g)],
                }
                for ksq, g in self.surplus
            ],
            "missing": [{"ksq": ksq, "g": g} for ksq, g in self.missing],
        }

# ============================================================================
# Search
# ============================================================================

def _excess_budget(spec: SearchSpec, g: int, negative_only: bool) -> Fraction:
    """Upper limit for sum d_j s_j coming from every K^2 cap in force"""
    lower = 4 * (g - 1) * spec.chi
    caps = [g * spec.slope_cap.at(g) * spec.chi]
    if spec.ksq_range is not None:
        caps.append(g * Fraction(spec.ksq_range[1]))
    if negative_only:
        caps.append(g * Fraction(spec.negative_ksq_cap()))
    return min(caps) - lower


def _check_case(spec: SearchSpec, si: SingularityIndices) -> Optional[FeasibleCase]:
    """Apply every constraint to a candidate whose chi already matches"""
    g = si.g
    s2 = si[2]
    if spec.s2_mode is S2Mode.NON_NEGATIVE and s2 < 0:
        return None
    if spec.s2_mode is S2Mode.NEGATIVE and s2 >= 0:
        return None

    n = n_from_indices(si)
    if not validate_n(g, n, require_parity=spec.require_n_parity):
        return None
    if e_from_indices(si) < 0:
        return None

    record = numerics(si, spec.b, require_parity=spec.require_n_parity)
    ksq = record.ksq
    if ksq.denominator != 1:
        return None
    if not slope_lower(g) * spec.chi <= ksq <= spec.slope_cap.at(g) * spec.chi:
        return None
    if spec.ksq_range is not None and not spec.ksq_range[0] <= ksq <= spec.ksq_range[1]:
        return None
    if s2 < 0 and ksq > spec.negative_ksq_cap():
        return None

    branch = S2Mode.NEGATIVE if s2 < 0 else S2Mode.NON_NEGATIVE
    return FeasibleCase(g=g, ksq=int(ksq), n=int(n), indices=si, numerics=record, branch=branch)


def search_genus(spec: SearchSpec, g: int) -> List[FeasibleCase]:
    """
    All feasible cases of one genus, sorted.

    Args:
        spec: Search hypotheses
        g: Genus to search

    Returns:
        Sorted list of FeasibleCase
    """
    total = 4 * (2 * g + 1) * spec.chi
    if total.denominator != 1:
        return []
    total = total.numerator

    chi_coeff = cleared_chi_coefficients(g)
    excess_coeff = cleared_excess_coefficients(g)
    indices = [j for j in range(3, g + 3) if not (g % 2 == 0 and j == g + 2)]

    budget = _excess_budget(spec, g, negative_only=spec.s2_mode is S2Mode.NEGATIVE)
    if budget < 0:
        return []
    budget = floor_rational(budget)
    nonnegative_only = spec.s2_mode is S2Mode.NON_NEGATIVE

    found: List[FeasibleCase] = []
    values = [0] * (g + 1)

    def descend(position: int, remaining: int, chi_used: int):
        if position == len(indices):
            numerator = total - chi_used
            if numerator % g != 0:
                return
            values[0] = numerator // g
            case = _check_case(spec, SingularityIndices(g, tuple(values)))
            if case is not None:
                found.append(case)
            return
        j = indices[position]
        step = excess_coeff[j]
        for count in range(remaining // step + 1):
            used = chi_used + count * chi_coeff[j]
            if nonnegative_only and used > total:
                break
            values[j - 2] = count
            descend(position + 1, remaining - count * step, used)
        values[j - 2] = 0

    descend(0, budget, 0)
    found.sort(key=lambda case: case.sort_key)
    logger.debug(f"g={g}: {len(found)} feasible cases (budget {budget})")
    return found


def _resolve_workers(workers: Optional[int]) -> int:
    return max(1, workers if workers is not None else config.WORKERS)


def enumerate_cases(spec: SearchSpec, workers: Optional[int] = None) -> List[FeasibleCase]:
    """
    Exhaustive enumeration over spec.genera; parallel over g when workers > 1.

    Output order is (g, K^2, indices) regardless of scheduling.
    """
    workers = _resolve_workers(workers)
    genera = list(spec.genera)
    logger.info(
        f"Enumerating chi={spec.chi} b={spec.b} g={spec.g_lo}..{spec.g_hi} "
        f"mode={spec.s2_mode.value} workers={workers}"
    )

    if workers > 1 and len(genera) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            per_genus = list(executor.map(search_genus, [spec] * len(genera), genera))
    else:
        per_genus = [search_genus(spec, g) for g in genera]

    cases = [case for batch in per_genus for case in batch]
    cases.sort(key=lambda case: case.sort_key)
    logger.info(f"Enumeration finished: {len(cases)} cases")
    return cases


def enumerate_many(specs: Sequence[SearchSpec], workers: Optional[int] = None) -> List[List[FeasibleCase]]:
    return [enumerate_cases(spec, workers) for spec in specs]


def max_genus(spec: SearchSpec, workers: Optional[int] = None) -> Optional[int]:
    """Largest g over enumerate_cases(spec), None when nothing survives"""
    cases = enumerate_cases(spec, workers)
    return max((case.g for case in cases), default=None)


def revalidate(case: FeasibleCase) -> bool:
    """Re-derive a case through the invariants module and check every identity"""
    si = case.indices
    record = numerics(si, case.numerics.b, require_parity=False)
    n = n_from_indices(si)
    return (
        record == case.numerics
        and 12 * record.chi == record.ksq + record.e
        and record.ksq - 4 * record.chi + 2 * n == slope_identity_rhs(si)
    )

# ============================================================================
# p_g = q = 1 Classification
# ============================================================================

def pgq1_spec(g_ceiling: int = config.DEFAULT_G_CEILING, require_parity: bool = False) -> SearchSpec:
    """chi = 1 over an elliptic base, both s_2 branches, integrality of n only by default"""
    return SearchSpec(
        chi=Fraction(1),
        b=1,
        g_lo=2,
        g_hi=g_ceiling,
        s2_mode=S2Mode.ANY,
        require_n_parity=require_parity,
    )


def ksq_genus_table(cases: Iterable[FeasibleCase]) -> Dict[int, Tuple[int, ...]]:
    """Project cases to {K^2: sorted genera}, K^2 descending"""
    table: Dict[int, set] = {}
    for case in cases:
        table.setdefault(case.ksq, set()).add(case.g)
    return {ksq: tuple(sorted(table[ksq])) for ksq in sorted(table, reverse=True)}


def classify_pg_q_1(
    g_ceiling: int = config.DEFAULT_G_CEILING,
    require_parity: bool = False,
    workers: Optional[int] = None,
) -> Dict[int, Tuple[int, ...]]:
    """The (K^2, g) table for p_g = q = 1"""
    return ksq_genus_table(enumerate_cases(pgq1_spec(g_ceiling, require_parity), workers))


def discrepancy_report(
    cases: Sequence[FeasibleCase],
    spec: SearchSpec,
    published: Optional[Dict[int, Sequence[int]]] = None,
) -> DiscrepancyReport:
    """
    Compare enumerated cases with a published (K^2, g) table.

    Surplus pairs keep their witnesses and the constraint families they pass;
    nothing is pruned to make the tables agree.
    """
    published = config.PGQ1_TABLE if published is None else published
    expected = {(ksq, g) for ksq, genera in published.items() for g in genera}
    produced: Dict[Tuple[int, int], List[FeasibleCase]] = {}
    for case in cases:
        produced.setdefault((case.ksq, case.g), []).append(case)

    report = DiscrepancyReport()
    for pair in sorted(set(produced) - expected, key=lambda p: (-p[0], p[1])):
        report.surplus.append(pair)
        report.witnesses[pair] = produced[pair]
        negative = any(case.branch is S2Mode.NEGATIVE for case in produced[pair])
        report.families[pair] = spec.constraint_families(negative)
    report.missing = sorted(expected - set(produced), key=lambda p: (-p[0], p[1]))

    if not report.matches:
        logger.warning(
            f"Classification differs from published table: "
            f"surplus={report.surplus} missing={report.missing}"
        )
    return report

# ============================================================================
# Testing
# ============================================================================

if __name__ == "__main__":
    print("Testing Feasibility Enumerator")
    print("=" * 60)

    spec = SearchSpec(chi=1, b=1, g_lo=13, g_hi=40, s2_mode=S2Mode.NON_NEGATIVE)
    cases = enumerate_cases(spec)
    assert {(c.ksq, c.g) for c in cases} == {(8, 14)}
    print("✓ g >= 13 search works")

    assert not enumerate_cases(SearchSpec(chi=1, b=1, g_lo=12, g_hi=12, s2_mode=S2Mode.NON_NEGATIVE))
    print("✓ g = 12 excluded")

    assert all(revalidate(c) for c in cases)
    print("✓ revalidation works")

    print("\nAll enumerator tests passed!")
