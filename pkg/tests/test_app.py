import itertools

import numpy as np
import pytest
from math import comb

from vran_avail.app import app_availability, app_model_as_ctmc, app_single_availability
from vran_avail.ctmc import solve_direct
from vran_avail.units import MINUTE, MONTH, RateParams, ValidationError, nines


def app_params(mttf, mttr):
    return RateParams.from_seconds(mttf_s=mttf, mttr_s=mttr, mttf_o=1, mttr_o=1, mttf_h=1, mttr_h=1)


def test_single_symmetric():
    assert app_single_availability(app_params(7, 7)) == 0.5


def test_single_replica_reference():
    # MTTF_s = 2 months = 86400 min, MTTR_s = 30 min
    assert app_single_availability(app_params(2 * MONTH, 30 * MINUTE)) == pytest.approx(86400 / 86430, rel=1e-15)


def test_single_instant_repair():
    assert app_single_availability(app_params(100, 1e-9)) == pytest.approx(1.0, abs=1e-10)


def test_independence_product():
    # per-replica down probability 0.1
    assert app_availability(app_params(9, 1), 2).availability == pytest.approx(0.99, rel=1e-15)


@pytest.mark.parametrize("mttr_s, outage, k", [
    (30 * MINUTE, 1.2048e-7, 6),
    (5 * MINUTE, 3.3486e-9, 8),
])
def test_two_replicas_reference(mttr_s, outage, k):
    a = app_availability(app_params(2 * MONTH, mttr_s), 2)
    # closed form: (mttr / (mttf + mttr))^2
    q = mttr_s / (2 * MONTH + mttr_s)
    assert a.outage_probability == pytest.approx(q * q, rel=1e-13)
    assert a.outage_probability == pytest.approx(outage, rel=1e-3)
    assert nines(a.availability) == k


def test_pmf_is_binomial():
    p = app_params(3, 1)
    a = app_availability(p, 4)
    up = 0.75
    expected = [comb(4, i) * up**i * (1 - up) ** (4 - i) for i in range(5)]
    np.testing.assert_allclose(a.pmf, expected, rtol=1e-14)
    assert a.pmf.sum() == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("n", [0, -1])
def test_zero_replicas(n):
    with pytest.raises(ValidationError):
        app_availability(app_params(1, 1), n)


def test_ctmc_n1_is_two_state():
    m = app_model_as_ctmc(app_params(4, 1), 1)
    np.testing.assert_allclose(m.generator, [[-0.25, 0.25], [1.0, -1.0]])


def test_ctmc_n2_symmetric():
    pi = solve_direct(app_model_as_ctmc(app_params(1, 1), 2))
    assert [pi[2], pi[1], pi[0]] == pytest.approx([0.25, 0.5, 0.25], abs=1e-15)


@pytest.mark.parametrize("n, mttf, mttr", list(itertools.product(range(1, 9), [60.0, 86400.0 * 30], [1.0, 300.0])))
def test_closed_form_matches_ctmc(n, mttf, mttr):
    p = app_params(mttf, mttr)
    pi = solve_direct(app_model_as_ctmc(p, n))
    a = app_availability(p, n)
    for i in range(n + 1):
        assert pi[i] == pytest.approx(a.pmf[i], abs=1e-12)
    assert 1 - pi[0] == pytest.approx(a.availability, abs=1e-12)


def test_strictly_increasing_in_n():
    p = app_params(100, 10)
    f = [app_availability(p, n).availability for n in range(1, 8)]
    assert all(x < y for x, y in zip(f, f[1:]))
    assert f[0] == app_single_availability(p)


def test_never_failing_app():
    p = RateParams.from_seconds(mttf_s=float("inf"), mttr_s=5, mttf_o=1, mttr_o=1, mttf_h=1, mttr_h=1)
    assert app_availability(p, 1).availability == 1.0
    assert app_model_as_ctmc(p, 2).size == 1
