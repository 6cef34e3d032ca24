"""
Tests for genus_engine.ruled_surface: intersection theory on the two
elliptic ruled surfaces, the example families and their certificates.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genus_engine import config
from genus_engine.exceptions import SurfaceMismatchError, ValidationError
from genus_engine.invariants import numerics
from genus_engine.ruled_surface import (
    CandidateKind,
    ClassConstraints,
    DivisorClass,
    ExampleFamily,
    SurfaceKind,
    SurfaceModel,
    adjunction_genus,
    branch_n,
    build_example,
    canonical,
    certificate_text,
    double_cover_invariants,
    exceptional,
    fiber,
    fiber_genus_from_branch,
    halve_even_class,
    intersect,
    min_L_dot_D,
    pullback,
    section,
    sweep_examples,
    valid_low_slope_params,
    verify_sharpness,
)

SPLIT = SurfaceModel(SurfaceKind.SPLIT_TORSION, m=5)
INDEC = SurfaceModel(SurfaceKind.INDEC_DEG1)
SPLIT_BLOWN = SurfaceModel(SurfaceKind.SPLIT_TORSION, blowups=1, m=5)
INDEC_BLOWN = SurfaceModel(SurfaceKind.INDEC_DEG1, blowups=1)

SMALL_BOX = {"coeff_box": 25, "beta_box": 25, "extended_box": None}

# ============================================================================
# Surfaces and classes
# ============================================================================

def test_surface_validation():
    with pytest.raises(ValidationError):
        SurfaceModel(SurfaceKind.SPLIT_TORSION)
    with pytest.raises(ValidationError):
        SurfaceModel(SurfaceKind.INDEC_DEG1, m=3)
    with pytest.raises(ValidationError):
        SurfaceModel(SurfaceKind.INDEC_DEG1, blowups=-1)


@pytest.mark.parametrize("S, square", [(SPLIT, 0), (INDEC, 1)])
def test_basic_intersections(S, square):
    C, G = section(S), fiber(S)
    assert intersect(C, C, S) == square
    assert intersect(C, G, S) == 1
    assert intersect(G, G, S) == 0


def test_exceptional_curve():
    E = exceptional(INDEC_BLOWN)
    assert intersect(E, E, INDEC_BLOWN) == -1
    assert intersect(E, section(INDEC_BLOWN), INDEC_BLOWN) == 0
    assert adjunction_genus(E, INDEC_BLOWN) == 0
    with pytest.raises(ValidationError):
        exceptional(INDEC)


@pytest.mark.parametrize("S", [SPLIT, INDEC])
def test_canonical_class(S):
    K = canonical(S)
    assert intersect(K, K, S) == 0
    assert intersect(K, fiber(S), S) == -2
    assert adjunction_genus(section(S), S) == 1
    assert adjunction_genus(fiber(S), S) == 0


def test_canonical_after_blowup():
    K = canonical(SPLIT_BLOWN)
    assert intersect(K, K, SPLIT_BLOWN) == -1
    assert intersect(K, exceptional(SPLIT_BLOWN), SPLIT_BLOWN) == -1


_coeff = st.integers(min_value=-30, max_value=30)
_classes = st.builds(lambda a, b, beta: DivisorClass(a, b, (beta,)), _coeff, _coeff, _coeff)


@given(st.sampled_from([SPLIT_BLOWN, INDEC_BLOWN]), _classes, _classes, _classes, _coeff)
def test_pairing_is_symmetric_bilinear(S, D1, D2, D3, t):
    assert intersect(D1, D2, S) == intersect(D2, D1, S)
    assert intersect(D1 + D2, D3, S) == intersect(D1, D3, S) + intersect(D2, D3, S)
    assert intersect(t * D1, D2, S) == t * intersect(D1, D2, S)


def test_class_arithmetic():
    D = DivisorClass(3, -1, (2,))
    assert D + D == 2 * D == DivisorClass(6, -2, (4,))
    assert D - D == DivisorClass(0, 0, (0,))
    assert -D == DivisorClass(-3, 1, (-2,))
    assert str(D) == "3C - 1G - 2E1"
    assert not D.is_base
    assert DivisorClass(3, 1, (0,)).is_base


def test_surface_mismatch():
    with pytest.raises(SurfaceMismatchError):
        DivisorClass(1, 0) + DivisorClass(1, 0, (0,))
    with pytest.raises(SurfaceMismatchError):
        intersect(DivisorClass(1, 0), section(SPLIT_BLOWN), SPLIT_BLOWN)


def test_pullback():
    D = pullback(DivisorClass(4, 1), INDEC_BLOWN)
    assert D == DivisorClass(4, 1, (0,))
    assert intersect(D, exceptional(INDEC_BLOWN), INDEC_BLOWN) == 0
    with pytest.raises(SurfaceMismatchError):
        pullback(DivisorClass(1, 0, (0, 0)), INDEC_BLOWN)


def test_halve_even_class():
    assert halve_even_class(DivisorClass(16, 2, (6,))) == DivisorClass(8, 1, (3,))
    with pytest.raises(ValidationError):
        halve_even_class(DivisorClass(16, 3, (6,)))


def test_fiber_genus_from_branch():
    assert fiber_genus_from_branch(DivisorClass(16, 2)) == 7
    with pytest.raises(ValidationError):
        fiber_genus_from_branch(DivisorClass(15, 2))
    with pytest.raises(ValidationError):
        fiber_genus_from_branch(DivisorClass(4, 2))


def test_branch_n():
    assert branch_n(DivisorClass(16, 2, (0,)), SPLIT_BLOWN) == 2
    assert branch_n(DivisorClass(10, -4, (0,)), INDEC_BLOWN) == 1
    with pytest.raises(ValidationError):
        branch_n(DivisorClass(16, 2, (6,)), SPLIT_BLOWN)


def test_double_cover_invariants():
    delta = DivisorClass(8, 1, (3,))
    assert double_cover_invariants(SPLIT_BLOWN, delta) == (4, 16)

# ============================================================================
# Example families
# ============================================================================

def test_split_torsion_k3():
    ex = build_example(ExampleFamily.SPLIT_TORSION, k=3, m=5)
    assert ex.g == 7
    assert ex.branch == DivisorClass(16, 2, (6,))
    assert ex.ample == DivisorClass(18, 2, (7,))
    assert (ex.numerics.chi, ex.numerics.ksq, ex.n) == (4, 16, 2)
    assert ex.indices.nonzero() == {2: 30, 6: 1}


def test_split_torsion_default_torsion_order():
    ex = build_example(ExampleFamily.SPLIT_TORSION, k=3)
    assert ex.surface.m == 5
    assert ex.params["m"] == 5


def test_split_torsion_k5():
    ex = build_example(ExampleFamily.SPLIT_TORSION, k=5)
    assert ex.g == 17
    assert (ex.numerics.chi, ex.numerics.ksq, ex.n) == (7, 32, 2)
    assert ex.numerics.lam == Fraction(32, 7)


def test_indecomposable_k1_double_point_is_negligible():
    ex = build_example(ExampleFamily.INDECOMPOSABLE, k=1)
    assert ex.g == 4
    assert ex.indices.nonzero() == {2: 18}
    assert ex.ample == DivisorClass(12, -5, (3,))
    assert (ex.cover_chi, ex.cover_ksq, ex.n) == (2, 6, 1)


def test_indecomposable_k3():
    ex = build_example(ExampleFamily.INDECOMPOSABLE, k=3)
    assert ex.g == 16
    assert ex.indices.nonzero() == {2: 36, 6: 1}
    assert ex.ample == DivisorClass(36, -17, (7,))
    assert (ex.numerics.chi, ex.numerics.ksq, ex.n) == (5, 22, 1)


@pytest.mark.parametrize("n, chi, g, ksq", [(1, 6, 14, 24), (2, 8, 9, 30), (4, 9, 5, 30)])
def test_low_slope(n, chi, g, ksq):
    ex = build_example(ExampleFamily.LOW_SLOPE, n=n, chi=chi)
    assert ex.g == g
    assert ex.numerics.chi == chi
    assert ex.numerics.ksq == ksq
    assert ex.ample == DivisorClass(2 * g + 4, n - 2 - g, (5,))


def test_low_slope_chi6_indices():
    ex = build_example(ExampleFamily.LOW_SLOPE, n=1, chi=6)
    assert ex.indices.nonzero() == {2: 46, 4: 1}
    assert ex.numerics.e == 48


@pytest.mark.parametrize("chi", [6, 8, 20])
def test_low_slope_genus_two_uses_cover_invariants(chi):
    ex = build_example(ExampleFamily.LOW_SLOPE, n=chi + 1, chi=chi)
    assert ex.g == 2
    assert ex.indices is None
    assert (ex.cover_chi, ex.cover_ksq) == (chi, 2 * chi)
    assert ex.numerics.e == 10 * chi
    assert ex.to_dict()["indices"] is None

    report = verify_sharpness(ex)
    assert report.passed, certificate_text(report)
    assert any("double cover only" in note for note in report.notes)
    assert "indices   : not formed" in certificate_text(report)


@pytest.mark.parametrize("family, params", [
    (ExampleFamily.SPLIT_TORSION, {"k": 4}),
    (ExampleFamily.SPLIT_TORSION, {"k": 1}),
    (ExampleFamily.SPLIT_TORSION, {"k": 3, "m": 4}),
    (ExampleFamily.INDECOMPOSABLE, {"k": 2}),
    (ExampleFamily.LOW_SLOPE, {"n": 3, "chi": 6}),
    (ExampleFamily.LOW_SLOPE, {"n": 14, "chi": 6}),
    (ExampleFamily.LOW_SLOPE, {"n": 1, "chi": 5}),
])
def test_invalid_family_parameters(family, params):
    with pytest.raises(ValidationError):
        build_example(family, **params)


def test_valid_low_slope_params():
    assert valid_low_slope_params(6, 6) == [(1, 6), (2, 6), (7, 6)]
    for n, chi in valid_low_slope_params(6, 20):
        g = (2 * chi + 2) // n
        assert g >= 2 and (g - n + 1) % 2 == 0

# ============================================================================
# Certificates
# ============================================================================

@pytest.mark.parametrize("k", [3, 5, 7, 9, 11])
def test_split_torsion_family_certifies(k):
    ex = build_example(ExampleFamily.SPLIT_TORSION, k=k)
    report = verify_sharpness(ex)
    assert report.passed, certificate_text(report)
    assert intersect(ex.branch, exceptional(ex.surface), ex.surface) == 2 * k


@pytest.mark.parametrize("k", [1, 3, 5, 7])
def test_indecomposable_family_certifies(k):
    report = verify_sharpness(build_example(ExampleFamily.INDECOMPOSABLE, k=k))
    assert report.passed, certificate_text(report)


@pytest.mark.parametrize("n, chi", valid_low_slope_params(6, 14))
def test_low_slope_family_certifies(n, chi):
    report = verify_sharpness(build_example(ExampleFamily.LOW_SLOPE, n=n, chi=chi))
    assert report.passed, certificate_text(report)


def test_cover_and_index_invariants_agree():
    for k in (3, 5, 7):
        ex = build_example(ExampleFamily.SPLIT_TORSION, k=k)
        record = numerics(ex.indices, b=1)
        assert (ex.cover_chi, ex.cover_ksq) == (record.chi, record.ksq)


def test_certificate_text():
    report = verify_sharpness(build_example(ExampleFamily.LOW_SLOPE, n=1, chi=6))
    text = certificate_text(report)
    assert text.startswith("== low-slope (chi=6, n=1) ==")
    assert "result: PASS" in text
    assert "FAIL" not in text


def test_failed_check_fails_report():
    report = verify_sharpness(build_example(ExampleFamily.SPLIT_TORSION, k=3))
    report.checks[0] = type(report.checks[0])("forced", 1, 2)
    assert not report.passed
    assert "result: FAIL" in certificate_text(report)

# ============================================================================
# Ampleness evidence
# ============================================================================

def test_class_constraints():
    split = ClassConstraints(SurfaceKind.SPLIT_TORSION, 5)
    assert split.beta_max(1, 0) == 0
    assert split.beta_max(3, 0) is None
    assert split.beta_max(5, 0) == 1
    assert split.beta_max(2, 1) == 2
    assert split.beta_max(0, 1) is None
    assert split.beta_max(2, -1) is None
    indec = ClassConstraints(SurfaceKind.INDEC_DEG1)
    assert indec.beta_max(2, -1) == 0
    assert indec.beta_max(2, -2) is None
    assert indec.beta_max(3, 1) == 3


def test_split_torsion_ampleness():
    ex = build_example(ExampleFamily.SPLIT_TORSION, k=3, m=5)
    evidence = min_L_dot_D(ex.surface, ex.ample, workers=1)
    assert evidence.min_value == 2
    assert evidence.witness == DivisorClass(1, 0, (0,))
    assert evidence.witness_kind is CandidateKind.HORIZONTAL
    assert evidence.box["extended_box"] == config.DIVISOR_EXTENDED_BOX


def test_indecomposable_ampleness():
    ex = build_example(ExampleFamily.INDECOMPOSABLE, k=1)
    evidence = min_L_dot_D(ex.surface, ex.ample, workers=1, **SMALL_BOX)
    assert evidence.min_value == 2
    assert evidence.witness == DivisorClass(2, -1, (0,))


@pytest.mark.parametrize("n, chi", [(1, 6), (2, 8), (4, 9)])
def test_low_slope_ampleness(n, chi):
    ex = build_example(ExampleFamily.LOW_SLOPE, n=n, chi=chi)
    evidence = min_L_dot_D(ex.surface, ex.ample, workers=1, **SMALL_BOX)
    assert evidence.min_value >= 2
    assert evidence.below_two == 0


def test_fiber_class_wins_ties():
    S = INDEC_BLOWN
    evidence = min_L_dot_D(S, fiber(S), workers=1, **SMALL_BOX)
    assert evidence.min_value == 0
    assert evidence.witness_kind is CandidateKind.FIBER
    assert evidence.witness == DivisorClass(0, 1, (0,))
    assert evidence.below_two > 0


def test_ampleness_rejects_two_blowups():
    S = SurfaceModel(SurfaceKind.INDEC_DEG1, blowups=2)
    with pytest.raises(ValidationError):
        min_L_dot_D(S, DivisorClass(4, 1, (1, 1)), workers=1)


def test_parallel_scan_matches_serial():
    ex = build_example(ExampleFamily.SPLIT_TORSION, k=3, m=5)
    serial = min_L_dot_D(ex.surface, ex.ample, workers=1, **SMALL_BOX)
    parallel = min_L_dot_D(ex.surface, ex.ample, workers=2, **SMALL_BOX)
    assert serial == parallel

# ============================================================================
# Sweeps
# ============================================================================

def test_sweep_examples_without_ampleness():
    cfg = config.get_default_config()
    cfg["ampleness"]["enabled"] = False
    cfg["examples"]["low-slope"] = {"chi_min": 6, "chi_max": 8}
    reports = sweep_examples(cfg, workers=1)
    families = [report.example.family for report in reports]
    assert families.count(ExampleFamily.SPLIT_TORSION) == 5
    assert families.count(ExampleFamily.INDECOMPOSABLE) == 4
    assert all(report.passed for report in reports)
    assert all(report.ampleness is None for report in reports)


def test_sweep_examples_claims():
    cfg = {
        "examples": {},
        "ampleness": {
            "enabled": True,
            "coeff_box": 20,
            "beta_box": 20,
            "extended_box": None,
            "claims": [{"family": "split-torsion", "k": 3, "m": 5}],
        },
    }
    reports = sweep_examples(cfg, workers=1)
    assert len(reports) == 1
    assert reports[0].ampleness.min_value == 2
    assert reports[0].passed
