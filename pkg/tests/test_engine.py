import math

import numpy as np
import pytest

from nsaloha import NetworkParams, NonSlottedRenewal, PoissonRain, Slotted
from nsaloha.analytic import p_rain_mean, p_renewal_mean, p_slot
from nsaloha.simulator import (Boundary, Constraint, InterferenceTimeline, SimConfig,
                               estimate_density_of_success, mac_for_tau, sample_interference,
                               simulate, simulate_outcomes, simulate_rain, simulate_renewal,
                               simulate_slotted, stream)
from nsaloha.simulator import engine

NET = NetworkParams()
TAU = 0.05
MACS = {
    "slotted": Slotted(TAU),
    "renewal": NonSlottedRenewal.from_tau(TAU),
    "rain": PoissonRain.matching(NET.lam, TAU),
}


def cfg_for(name, **kw):
    return SimConfig(NET, MACS[name], **kw)


@pytest.mark.parametrize("name", list(MACS))
@pytest.mark.parametrize("boundary", [Boundary.TORUS, Boundary.NONE])
def test_block_matches_timeline_reconstruction(name, boundary):
    """Recompute each replication's interference from its packets one by one."""
    cfg = cfg_for(name, boundary=boundary, block_size=40)
    got = engine._sample_block(cfg, 0, 40, want_max=True)
    rng = stream(cfg.rng_seed, cfg.stream_id, 0)
    NET.fading.sample(rng, 40)
    NET.noise.sample(rng, 40)
    rx = engine._receivers(cfg, rng, 40)
    pk = engine._PACKETS[type(cfg.mac)](cfg, rng, 40, rx)
    power = pk.fading * engine._gain(cfg, pk.dx, pk.dy)
    far = engine._far_field(cfg)
    for k in range(40):
        sel = pk.rep == k
        tl = InterferenceTimeline.from_packets(pk.start[sel], pk.end[sel], power[sel], 1.0)
        assert got.i_mean[k] == pytest.approx(tl.time_average() + far, rel=1e-10, abs=1e-300)
        assert got.i_max[k] == pytest.approx(tl.maximum() + far, rel=1e-10, abs=1e-300)


@pytest.mark.parametrize("name", ["renewal", "rain"])
def test_max_constraint_is_dominated(name):
    cfg = cfg_for(name, replications=3000)
    out = simulate_outcomes(cfg)
    assert not np.any(out[Constraint.MAX] & ~out[Constraint.MEAN])
    assert out[Constraint.MAX].sum() < out[Constraint.MEAN].sum()


def test_slotted_max_equals_mean():
    s = sample_interference(cfg_for("slotted", replications=2000), want_max=True)
    assert np.allclose(s.i_max, s.i_mean, rtol=1e-12)


class TestReproducibility:
    def test_same_seed_same_result(self):
        a = sample_interference(cfg_for("rain", replications=1500, rng_seed=5))
        b = sample_interference(cfg_for("rain", replications=1500, rng_seed=5))
        assert np.array_equal(a.i_mean, b.i_mean)

    def test_worker_count_irrelevant(self):
        one = simulate_outcomes(cfg_for("renewal", replications=2500, rng_seed=9))
        many = simulate_outcomes(cfg_for("renewal", replications=2500, rng_seed=9, workers=3))
        for c in Constraint:
            assert np.array_equal(one[c], many[c])

    def test_full_blocks_are_prefix_stable(self):
        a = sample_interference(cfg_for("slotted", replications=2500))
        b = sample_interference(cfg_for("slotted", replications=3000))
        assert np.array_equal(a.i_mean[:2000], b.i_mean[:2000])

    def test_seeds_differ(self):
        a = sample_interference(cfg_for("slotted", replications=500, rng_seed=1))
        b = sample_interference(cfg_for("slotted", replications=500, rng_seed=2))
        assert not np.array_equal(a.i_mean, b.i_mean)


def within_3_sigma(est, value):
    # 1.5 half-widths of a 95% interval is about 2.94 standard errors
    return abs(est.mean - value) <= 1.5 * est.ci95_halfwidth


class TestAgainstAnalytic:
    def test_slotted(self):
        est = simulate_slotted(cfg_for("slotted", replications=20_000, rng_seed=11))
        assert within_3_sigma(est, p_slot(NET, MACS["slotted"]).probability)

    def test_rain(self):
        est = simulate_rain(cfg_for("rain", replications=20_000, rng_seed=12))
        assert within_3_sigma(est, p_rain_mean(NET, MACS["rain"]).probability)

    def test_renewal(self):
        est = simulate_renewal(cfg_for("renewal", replications=20_000, rng_seed=13))
        assert within_3_sigma(est, p_renewal_mean(NET, MACS["renewal"]).probability)

    def test_guard_boundary_is_close(self):
        cfg = cfg_for("slotted", boundary=Boundary.GUARD, guard_margin=300.0,
                      replications=10_000, rng_seed=14)
        est = simulate(cfg)
        exact = p_slot(NET, MACS["slotted"]).probability
        assert abs(est.mean - exact) < 1.5 * est.ci95_halfwidth + 0.02


class TestZeroDensity:
    def test_rain(self):
        est = simulate_rain(SimConfig(NET, PoissonRain(0.0), replications=500))
        assert est.mean == 1.0 and est.ci95_halfwidth == 0.0

    def test_slotted(self):
        est = simulate_slotted(SimConfig(NET, Slotted(0.0), replications=500))
        assert est.mean == 1.0 and est.ci95_halfwidth == 0.0


class TestFarField:
    def test_only_on_torus(self):
        assert engine._far_field(cfg_for("slotted", boundary=Boundary.NONE)) == 0.0
        assert engine._far_field(cfg_for("slotted", boundary=Boundary.GUARD)) == 0.0

    def test_tail_integral_between_disk_bounds(self):
        h = 1500.0
        val = engine._tail_integral(NET.path_loss, h)
        # outside the square lies between outside the circumscribed and inscribed disks
        assert math.pi / (2 * h * h) < val < math.pi / (h * h)

    def test_value(self):
        cfg = cfg_for("slotted")
        want = NET.lam * TAU * 1.0 * engine._tail_integral(NET.path_loss, 1500.0)
        assert engine._far_field(cfg) == pytest.approx(want, rel=1e-12)


class TestValidation:
    def test_wrong_mac_type(self):
        with pytest.raises(TypeError):
            simulate_slotted(cfg_for("rain"))
        with pytest.raises(TypeError):
            simulate_renewal(cfg_for("slotted"))
        with pytest.raises(TypeError):
            simulate_rain(cfg_for("renewal"))

    @pytest.mark.parametrize("kw", [dict(replications=0), dict(window_side=0.0),
                                    dict(boundary=Boundary.GUARD, guard_margin=600.0),
                                    dict(workers=0), dict(rng_seed=-1)])
    def test_bad_config(self, kw):
        with pytest.raises(ValueError):
            cfg_for("slotted", **kw)

    def test_max_needs_max_sample(self):
        s = sample_interference(cfg_for("slotted", replications=10), want_max=False)
        with pytest.raises(ValueError):
            s.success(NET, Constraint.MAX)


class TestSweep:
    def test_scaling_and_streams(self):
        cfg = cfg_for("slotted", replications=2000)
        res = estimate_density_of_success(cfg, [0.05, 0.05])[Constraint.MEAN]
        p0, p1 = res.points
        assert p0.d_suc == pytest.approx(NET.lam * 0.05 * p0.estimate.mean)
        assert p0.d_suc_ci95 == pytest.approx(NET.lam * 0.05 * p0.estimate.ci95_halfwidth)
        # grid points draw from distinct streams
        assert p0.estimate.mean != p1.estimate.mean
        assert res.model == "slotted" and res.best in res.points

    def test_empty_grid(self):
        with pytest.raises(ValueError):
            estimate_density_of_success(cfg_for("slotted"), [])

    def test_mac_for_tau(self):
        assert mac_for_tau(Slotted(0.1), 1e-3, 0.2) == Slotted(0.2)
        assert mac_for_tau(NonSlottedRenewal(1.0), 1e-3, 0.5).epsilon == pytest.approx(1.0)
        assert mac_for_tau(PoissonRain(0.0), 1e-3, 0.1).lambda_s == pytest.approx(1e-4)
        with pytest.raises(TypeError):
            mac_for_tau(object(), 1e-3, 0.1)
