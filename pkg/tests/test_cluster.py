import itertools

import pytest

from conftest import grid_params
from vran_avail.app import app_availability
from vran_avail.cluster import cluster_availability, effective_app_replicas
from vran_avail.platform_model import platform_availability
from vran_avail.units import MINUTE, MONTH, YEAR, Duration, Mode, RateParams, ReplicationSpec

AA, AP = Mode.ACTIVE_ACTIVE, Mode.ACTIVE_PASSIVE


def test_baseline_active_active(baseline_aa):
    rep = cluster_availability(baseline_aa, ReplicationSpec(2, 1, AA))
    assert rep.nines_triple == (6, 6, 6)
    assert rep.app_replicas == 2
    assert rep.state_count == 6


@pytest.mark.parametrize("mttf_h, mttr_o", [(10 * YEAR, 15 * MINUTE), (100 * YEAR, 90 * MINUTE)])
def test_fast_recovery_reference(mttf_h, mttr_o):
    p = grid_params(mttf_h, 10 * MONTH, mttr_o, 5 * MINUTE)
    assert cluster_availability(p, ReplicationSpec(2, 1, AA)).nines_triple == (7, 7, 8)


@pytest.mark.parametrize("n_h, mttf_h, mttr_o", list(itertools.product(
    [2, 3], [10 * YEAR, 100 * YEAR], [1 * MINUTE, 15 * MINUTE, 90 * MINUTE])))
def test_passive_fast_failover_reference(n_h, mttf_h, mttr_o):
    p = grid_params(mttf_h, 10 * MONTH, mttr_o, 5 * MINUTE, mtfo=10.0)
    rep = cluster_availability(p, ReplicationSpec(n_h, 2, AP))
    assert (rep.nines_cluster, rep.nines_platform) == (6, 6)
    assert rep.app_replicas == 2
    assert rep.nines_app == 8  # computed binomial value for two replicas


def test_product_of_layers(stressed):
    for mode in (AA, AP):
        spec = ReplicationSpec(3, 2, mode)
        rep = cluster_availability(stressed, spec)
        f_p = platform_availability(stressed, 3, mode).availability
        f_s = app_availability(stressed, effective_app_replicas(spec)).availability
        assert rep.f_platform == f_p and rep.f_app == f_s
        assert rep.f_cluster == f_p * f_s
        assert rep.outage_cluster == pytest.approx(1 - f_p * f_s)


def test_effective_replicas():
    assert effective_app_replicas(ReplicationSpec(3, 2, AA)) == 6
    assert effective_app_replicas(ReplicationSpec(3, 2, AP)) == 2
    assert effective_app_replicas(ReplicationSpec(1, 4, AP)) == 4


def test_perfect_software_leaves_platform(stressed):
    p = RateParams(**{**stressed.__dict__, "mttf_s": Duration(float("inf"))})
    rep = cluster_availability(p, ReplicationSpec(2, 1, AA))
    assert rep.f_app == 1.0 and rep.f_cluster == rep.f_platform
    assert rep.nines_app == 12


@pytest.mark.parametrize("n_h", [1, 2, 3, 4])
def test_active_active_dominates(n_h, stressed):
    a = cluster_availability(stressed, ReplicationSpec(n_h, 2, AA)).f_cluster
    p = cluster_availability(stressed, ReplicationSpec(n_h, 2, AP)).f_cluster
    assert a >= p
    if n_h == 1:
        assert a == p
