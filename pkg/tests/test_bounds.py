"""
Tests for genus_engine.bounds
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from genus_engine.bounds import (
    BoundSource,
    Parity,
    bound_case1,
    bound_hodge,
    bound_large_genus,
    bound_sharp,
    bound_slope_linear,
    bounds_for,
    chi_lower_from_indices,
    forced_zero_indices,
    g_bound_fn,
    gbound_extremes,
    hyperelliptic_slope_cap,
    large_genus_bound,
    locally_nontrivial_bound,
    minus_curve_ksq_cap,
    n_le_3chi,
    n_upper,
    parity_bound,
    s2_negative_genus_cap,
    sharpness_pattern,
    slope_lower,
    slope_upper,
)
from genus_engine.exceptions import DomainError, ValidationError
from genus_engine.invariants import (
    SingularityIndices,
    chi_from_indices,
    cleared_excess_coefficients,
    ksq_from_indices,
    n_from_indices,
    numerics,
)

from .conftest import geometric_vectors, index_vectors


# ============================================================================
# Slopes
# ============================================================================

def test_slope_lower():
    assert slope_lower(2) == 2
    assert slope_lower(14) == Fraction(52, 14)


def test_hyperelliptic_slope_cap():
    assert hyperelliptic_slope_cap(2) == 12 - Fraction(20, 4)
    assert hyperelliptic_slope_cap(3) == 12 - Fraction(28, 8)


def test_slope_upper_elliptic_base():
    assert slope_upper(2, 1) == 7
    assert slope_upper(14, 1) == 9
    assert slope_upper(14, 2) == hyperelliptic_slope_cap(14)
    with pytest.raises(ValidationError):
        slope_upper(5, -1)

# ============================================================================
# g(lambda, chi, n)
# ============================================================================

def test_g_bound_fn_values():
    assert g_bound_fn(9, 1, 1) == Fraction(71, 4)
    assert g_bound_fn(4, 4, 2, relaxed=True) == 7


def test_g_bound_fn_domain():
    with pytest.raises(DomainError):
        g_bound_fn(9, 1, 0)
    with pytest.raises(DomainError):
        g_bound_fn(4, 1, 1)
    with pytest.raises(DomainError):
        g_bound_fn(3, 1, 1)


def test_bound_sharp_flags_domain():
    assert bound_sharp(9, 1, 1).in_domain
    bound = bound_sharp(4, 4, 2)
    assert not bound.in_domain
    assert bound.value == 7
    assert bound.source is BoundSource.SHARP_N


@given(
    st.fractions(min_value=Fraction(41, 10), max_value=12, max_denominator=50),
    st.fractions(min_value=Fraction(1, 10), max_value=50, max_denominator=20),
    st.integers(min_value=2, max_value=60),
)
def test_g_bound_fn_convex_in_n(lam, chi, n):
    left = g_bound_fn(lam, chi, n - 1)
    middle = g_bound_fn(lam, chi, n)
    right = g_bound_fn(lam, chi, n + 1)
    assert left + right > 2 * middle


@pytest.mark.parametrize("g", [25, 40, 100])
@pytest.mark.parametrize("chi", [4, 10, 50])
@pytest.mark.parametrize("lam", [Fraction(9, 2), 5, 6, 8, 9, Fraction(35, 3)])
def test_g_bound_fn_endpoints_dominate(lam, chi, g):
    first = g_bound_fn(lam, chi, 1)
    second = g_bound_fn(lam, chi, 2)
    assert first >= second
    for n in range(2, int(n_upper(lam, chi, g)) + 1):
        assert second >= g_bound_fn(lam, chi, n)


@given(
    st.fractions(min_value=Fraction(41, 10), max_value=12, max_denominator=50),
    st.fractions(min_value=Fraction(1, 10), max_value=20, max_denominator=20),
    st.integers(min_value=1, max_value=20),
    st.integers(min_value=0, max_value=20),
)
def test_gbound_extremes_maximum_at_endpoint(lam, chi, n_lo, width):
    extremes = gbound_extremes(lam, chi, n_lo, n_lo + width)
    assert extremes.max_n in (n_lo, n_lo + width)
    assert extremes.max_value == max(extremes.values.values())
    assert extremes.min_value == min(extremes.values.values())


def test_gbound_extremes_domain():
    with pytest.raises(DomainError):
        gbound_extremes(4, 1, 1, 3)
    with pytest.raises(DomainError):
        gbound_extremes(9, 1, 3, 2)


def test_n_upper():
    assert n_upper(9, 1, 18) == Fraction(5, 2) + Fraction(9, 17)
    assert n_le_3chi(9, 1, 18)
    with pytest.raises(DomainError):
        n_upper(4, 1, 18)

# ============================================================================
# Sharpness
# ============================================================================

def test_sharpness_pattern():
    assert sharpness_pattern(SingularityIndices.from_mapping(7, {2: 30, 6: 1}))
    assert sharpness_pattern(SingularityIndices.from_mapping(14, {2: 46, 4: 1}))
    assert not sharpness_pattern(SingularityIndices.from_mapping(7, {2: 30}))
    assert not sharpness_pattern(SingularityIndices.from_mapping(7, {2: 30, 6: 2}))
    assert not sharpness_pattern(SingularityIndices.from_mapping(7, {2: 30, 3: 1}))
    assert not sharpness_pattern(SingularityIndices.from_mapping(7, {2: 30, 4: 1, 6: 1}))
    # s_{g+2} is odd-indexed for odd g and never part of the pattern
    assert not sharpness_pattern(SingularityIndices.from_mapping(7, {2: 30, 9: 1}))


def test_worked_example_meets_bound():
    si = SingularityIndices.from_mapping(7, {2: 30, 6: 1})
    record = numerics(si, b=1)
    assert g_bound_fn(record.lam, record.chi, int(record.n), relaxed=True) == si.g


@settings(max_examples=400, deadline=None)
@given(geometric_vectors())
def test_genus_never_exceeds_g_bound(si):
    n = n_from_indices(si)
    chi = chi_from_indices(si)
    assume(chi > 0)
    lam = ksq_from_indices(si) / chi
    bound = g_bound_fn(lam, chi, int(n), relaxed=True)
    assert si.g <= bound
    tail_zero = all(v == 0 for j, v in si.nonzero().items() if j >= 3)
    assert (bound == si.g) == (sharpness_pattern(si) or tail_zero)

# ============================================================================
# Closed-form genus bounds
# ============================================================================

def test_locally_nontrivial_bound_branches():
    bound = locally_nontrivial_bound(1, 1)
    assert bound.value == Fraction(71, 4)
    assert bound.floor_value == 17
    assert bound.source is BoundSource.ELLIPTIC_BASE

    bound = locally_nontrivial_bound(6, 1, 24)
    assert bound.value == 14
    assert bound.source is BoundSource.LOW_SLOPE

    assert locally_nontrivial_bound(3, 0).value == 7
    assert locally_nontrivial_bound(3, 0).source is BoundSource.RATIONAL_BASE
    assert locally_nontrivial_bound(1, 2).value == 32
    assert locally_nontrivial_bound(1, 5).source is BoundSource.HIGHER_BASE


def test_locally_nontrivial_bound_high_slope_ignores_ksq():
    assert locally_nontrivial_bound(1, 1, 8).source is BoundSource.ELLIPTIC_BASE


def test_locally_nontrivial_bound_errors():
    with pytest.raises(DomainError):
        locally_nontrivial_bound(0, 1)
    with pytest.raises(ValidationError):
        locally_nontrivial_bound(1, -1)


def test_bound_case1():
    assert bound_case1(6, 24).value == 14
    assert bound_case1(8, 30).value == 9
    assert bound_case1(9, 30).value == 5
    with pytest.raises(DomainError):
        bound_case1(1, 6)


@given(st.integers(min_value=1, max_value=200), st.integers(min_value=-50, max_value=800))
def test_bound_case1_at_most_2chi_plus_2(chi, ksq):
    assume(ksq <= 4 * chi)
    assert bound_case1(chi, ksq).value <= 2 * chi + 2


def test_bound_slope_linear():
    bound = bound_slope_linear(6, 20)
    assert bound.value == 6
    assert bound.source is BoundSource.SLOPE_LINEAR
    with pytest.raises(DomainError):
        bound_slope_linear(6, 24)


def test_bound_hodge():
    bound = bound_hodge(1, 2)
    assert bound.value == 2
    assert bound.source is BoundSource.HODGE_POSITIVITY
    assert bound_hodge(10, 3).value == 6
    with pytest.raises(DomainError):
        bound_hodge(1, 1)


def test_large_genus_bound():
    assert large_genus_bound(9, 4, Parity.EVEN) == Fraction(25, 4) * 16 + Fraction(19, 2) * 4 + 2
    assert large_genus_bound(9, 4, Parity.ODD) == Fraction(25, 8) * 16 + Fraction(29, 4) * 4 + 3
    assert bound_large_genus(9, 4, "odd").source is BoundSource.LARGE_GENUS_ODD


def test_parity_bound():
    even = parity_bound(4, 1, Parity.EVEN)
    assert even.source is BoundSource.ELLIPTIC_BASE_PARITY
    assert even.value == large_genus_bound(9, 4, Parity.EVEN)
    odd = parity_bound(4, 2, Parity.ODD)
    assert odd.source is BoundSource.HIGHER_BASE_PARITY
    assert odd.value == large_genus_bound(12, 4, Parity.ODD)
    assert not parity_bound(1, 1, Parity.EVEN).in_domain
    with pytest.raises(DomainError):
        parity_bound(4, 0, Parity.EVEN)


def test_parity_bounds_against_base_bound():
    for chi in range(4, 30):
        base = locally_nontrivial_bound(chi, 1).value
        even = parity_bound(chi, 1, Parity.EVEN).value
        assert parity_bound(chi, 1, Parity.ODD).value < even == base

# ============================================================================
# Index constraints
# ============================================================================

@settings(max_examples=500, deadline=None)
@given(index_vectors(), st.sampled_from([1, 2, 3]))
def test_chi_lower_holds_under_slope_cap(si, b):
    chi = chi_from_indices(si)
    ksq = ksq_from_indices(si)
    cap = 9 if b == 1 else 12
    if ksq <= cap * chi:
        assert chi >= chi_lower_from_indices(si, b)


def test_chi_lower_rejects_rational_base():
    with pytest.raises(DomainError):
        chi_lower_from_indices(SingularityIndices.zero(4), 0)


@pytest.mark.parametrize("g", [2, 5, 14, 17])
def test_forced_zero_indices(g):
    forced = forced_zero_indices(g, 1, 1)
    coefficients = cleared_excess_coefficients(g)
    for j in coefficients:
        if g % 2 == 0 and j == g + 2:
            continue
        unit = SingularityIndices.from_mapping(g, {j: 1})
        assert (j in forced) == (chi_lower_from_indices(unit, 1) > 1)


def test_forced_zero_indices_top_index():
    # the top index carries g^2 - 1 > 5g + 4 once g >= 7
    assert 19 in forced_zero_indices(17, 1, 1)


def test_minus_curve_ksq_cap():
    assert minus_curve_ksq_cap(2, 1) == Fraction(63, 8)
    assert minus_curve_ksq_cap(1, 1) == 8
    with pytest.raises(ValidationError):
        minus_curve_ksq_cap(0, 1)


def test_s2_negative_genus_cap_value():
    assert s2_negative_genus_cap(7, 1) == Fraction(16, 3)
    assert s2_negative_genus_cap(9, 1) is None


@given(
    st.integers(min_value=-20, max_value=120),
    st.integers(min_value=1, max_value=8),
    st.integers(min_value=2, max_value=80),
)
def test_s2_negative_genus_cap_matches_inequality(ksq, chi, g):
    holds = Fraction(g - 2, 2 * (g - 1)) <= ksq - Fraction(8 * g - 14, g - 1) * chi
    cap = s2_negative_genus_cap(ksq, chi)
    assert holds == (cap is None or g <= cap)

# ============================================================================
# Aggregation
# ============================================================================

def test_bounds_for_elliptic_base():
    bounds = bounds_for(1, 1)
    assert bounds[0].value == Fraction(71, 4)
    sources = [bound.source for bound in bounds]
    assert BoundSource.ELLIPTIC_BASE_PARITY in sources
    assert BoundSource.HODGE_POSITIVITY not in sources


def test_bounds_for_hodge():
    bounds = bounds_for(1, 2)
    hodge = [bound for bound in bounds if bound.source is BoundSource.HODGE_POSITIVITY]
    assert len(hodge) == 1 and hodge[0].value == 2


def test_bounds_for_low_slope():
    bounds = bounds_for(6, 1, ksq=24)
    assert bounds[0].source is BoundSource.LOW_SLOPE
    assert bounds[0].value == 14


def test_bounds_for_sharp_n():
    bounds = bounds_for(1, 1, lam=9, n=1)
    sharp = [bound for bound in bounds if bound.source is BoundSource.SHARP_N]
    assert sharp[0].value == Fraction(71, 4)


def test_bounds_for_flag_errors():
    with pytest.raises(ValidationError):
        bounds_for(1, 1, ksq=8, lam=7)
    with pytest.raises(ValidationError):
        bounds_for(1, 1, n=2)
