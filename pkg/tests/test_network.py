import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vran_avail.network import (
    NetworkScenario,
    cell_outage,
    expected_unavailable,
    pmf_centralized,
    pmf_distributed,
)
from vran_avail.units import ValidationError

probability = st.floats(0.0, 1.0, allow_nan=False)


def test_perfect_components():
    s = NetworkScenario(5, 1.0, 1.0)
    for d in (pmf_centralized(s), pmf_distributed(s)):
        assert d.pmf.tolist() == [1, 0, 0, 0, 0, 0]


def test_cu_always_down():
    c = pmf_centralized(NetworkScenario(4, 0.9, 0.0))
    assert c.pmf.tolist() == [0, 0, 0, 0, 1]


def test_small_case_by_hand():
    # two sites, DU up w.p. 0.9, CU up w.p. 0.8
    c = pmf_centralized(NetworkScenario(2, 0.9, 0.8)).pmf
    np.testing.assert_allclose(c, [0.8 * 0.81, 0.8 * 0.18, 0.2 + 0.8 * 0.01], rtol=1e-14)
    d = pmf_distributed(NetworkScenario(2, 0.9, 0.8)).pmf
    np.testing.assert_allclose(d, [0.72**2, 2 * 0.72 * 0.28, 0.28**2], rtol=1e-14)


@pytest.mark.parametrize("du, cu, cell, all_down", [
    (1e-5, 1e-5, 1.99e-5, 1e-5),
    (1e-5, 1e-6, 1.10e-5, 1e-6),
    (1e-5, 1e-7, 1.01e-5, 1e-7),
])
def test_ten_site_outages(du, cu, cell, all_down):
    s = NetworkScenario.from_outages(10, du, cu)
    c = pmf_centralized(s)
    assert c.p_cell_outage == pytest.approx(cell, rel=0.01)
    assert c.p_all_down == pytest.approx(all_down, rel=0.01)
    assert pmf_distributed(s).p_all_down < 1e-40


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 60), probability, probability)
def test_normalized_with_equal_means(n_c, f_du, f_cu):
    s = NetworkScenario(n_c, f_du, f_cu)
    c, d = pmf_centralized(s), pmf_distributed(s)
    for x in (c, d):
        assert x.pmf.min() >= 0
        assert math.fsum(x.pmf) == pytest.approx(1, abs=1e-12)
        assert x.mean == pytest.approx(expected_unavailable(s), abs=1e-12 * max(1, n_c))
    assert c.p_cell_outage == d.p_cell_outage == cell_outage(s)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 60), probability, probability)
def test_centralized_has_heavier_extremes(n_c, f_du, f_cu):
    s = NetworkScenario(n_c, f_du, f_cu)
    c, d = pmf_centralized(s), pmf_distributed(s)
    assert c.p_none_down >= d.p_none_down * (1 - 1e-12)
    assert c.p_all_down >= d.p_all_down * (1 - 1e-12)


@given(probability, probability)
def test_single_site_placements_agree(f_du, f_cu):
    s = NetworkScenario(1, f_du, f_cu)
    np.testing.assert_allclose(pmf_centralized(s).pmf, pmf_distributed(s).pmf, atol=1e-15)


def test_large_network_is_stable():
    s = NetworkScenario.from_outages(10_000, 1e-5, 1e-6)
    for x in (pmf_centralized(s), pmf_distributed(s)):
        assert np.isfinite(x.pmf).all()
        assert math.fsum(x.pmf) == pytest.approx(1, abs=1e-12)
        assert x.mean == pytest.approx(expected_unavailable(s), rel=1e-9)


@pytest.mark.parametrize("kw, field", [
    (dict(n_c=0, f_du=0.5, f_cu=0.5), "n_c"),
    (dict(n_c=True, f_du=0.5, f_cu=0.5), "n_c"),
    (dict(n_c=3, f_du=1.5, f_cu=0.5), "f_du"),
    (dict(n_c=3, f_du=0.5, f_cu=-0.1), "f_cu"),
])
def test_validation(kw, field):
    with pytest.raises(ValidationError) as e:
        NetworkScenario(**kw)
    assert e.value.field == field
