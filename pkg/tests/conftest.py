"""Shared fixtures and hypothesis strategies for the genus_engine tests"""

import pytest
from hypothesis import strategies as st

from genus_engine.enumerator import discrepancy_report, enumerate_cases, pgq1_spec
from genus_engine.invariants import SingularityIndices, n_from_indices


@st.composite
def index_vectors(draw, g_min=2, g_max=40, s2_min=-60, s2_max=400, top=4):
    """Arbitrary SingularityIndices: s_2 of either sign, a sparse tail of small s_j"""
    g = draw(st.integers(min_value=g_min, max_value=g_max))
    tail = []
    for j in range(3, g + 3):
        if g % 2 == 0 and j == g + 2:
            tail.append(0)
        else:
            tail.append(draw(st.integers(min_value=0, max_value=top)) if draw(st.booleans()) else 0)
    s2 = draw(st.integers(min_value=s2_min, max_value=s2_max))
    return SingularityIndices(g, (s2,) + tuple(tail))


@st.composite
def geometric_vectors(draw, g_max=30):
    """Vectors with n a positive integer: s_2 is solved from a drawn n"""
    si = draw(index_vectors(g_max=g_max, s2_min=0, s2_max=0, top=2))
    g = si.g
    n = draw(st.integers(min_value=1, max_value=40))
    # 2n(2g+1) is affine in s_2 with slope 1
    rest = n_from_indices(si) * 2 * (2 * g + 1)
    s2 = 2 * (2 * g + 1) * n - int(rest)
    return SingularityIndices(g, (s2,) + si.s[1:])


@pytest.fixture(scope="session")
def pgq1_cases():
    return enumerate_cases(pgq1_spec(), workers=1)


@pytest.fixture(scope="session")
def pgq1_report(pgq1_cases):
    return discrepancy_report(pgq1_cases, pgq1_spec())
