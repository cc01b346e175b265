import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nsaloha import (ClampedMax, Deterministic, DeterministicNoise, MinDistance, NetworkParams,
                     NonSlottedRenewal, PoissonRain, PowerLaw, Rayleigh, Shifted, Slotted,
                     ZeroNoise, active_density, channel_occupation_fraction,
                     equivalent_rain_density, path_loss_eval)
from nsaloha.errors import DivergentConstant, NotDefinedForRain, PoleAtOrigin

betas = st.floats(2.05, 8.0)
positive = st.floats(1e-3, 1e3)


class TestOccupation:
    def test_slotted_is_p(self):
        assert channel_occupation_fraction(Slotted(p=0.05)) == 0.05

    def test_renewal_half_when_backoff_equals_packet(self):
        assert channel_occupation_fraction(NonSlottedRenewal(epsilon=1.0, B=1.0)) == 0.5
        assert channel_occupation_fraction(NonSlottedRenewal(epsilon=0.5, B=2.0)) == 0.5

    def test_renewal_eb_0045(self):
        tau = channel_occupation_fraction(NonSlottedRenewal(epsilon=0.045))
        assert tau == pytest.approx(0.045 / 1.045, rel=1e-15)
        assert tau == pytest.approx(0.04306, abs=5e-6)

    def test_rain_has_no_occupation(self):
        with pytest.raises(NotDefinedForRain):
            channel_occupation_fraction(PoissonRain(5e-5))

    @given(st.floats(1e-4, 0.99), st.floats(0.1, 10.0))
    def test_from_tau_roundtrip(self, tau, B):
        mac = NonSlottedRenewal.from_tau(tau, B)
        assert channel_occupation_fraction(mac) == pytest.approx(tau, rel=1e-12)
        assert channel_occupation_fraction(Slotted(p=tau, B=B)) == pytest.approx(
            channel_occupation_fraction(mac), rel=1e-12)

    @given(st.floats(1e-4, 100.0), st.floats(0.1, 10.0))
    def test_matched_rain_density_same_from_either_model(self, eb, B):
        lam = 1e-3
        ren = NonSlottedRenewal(epsilon=eb / B, B=B)
        p = eb / (1.0 + eb)
        a = equivalent_rain_density(lam, channel_occupation_fraction(ren), B)
        b = equivalent_rain_density(lam, channel_occupation_fraction(Slotted(p=p, B=B)), B)
        assert a == pytest.approx(b, rel=1e-12)


class TestRainDensity:
    def test_examples(self):
        assert equivalent_rain_density(0.001, 0.05, 1.0) == pytest.approx(5e-5, rel=1e-15)
        assert equivalent_rain_density(0.001, 0.0, 1.0) == 0.0
        assert equivalent_rain_density(0.001, 0.04306, 2.0) == pytest.approx(2.153e-5, rel=1e-12)

    @pytest.mark.parametrize("lam,tau,B", [(0, 0.1, 1), (1e-3, -0.1, 1), (1e-3, 1.1, 1),
                                           (1e-3, 0.1, 0)])
    def test_preconditions(self, lam, tau, B):
        with pytest.raises(ValueError):
            equivalent_rain_density(lam, tau, B)

    def test_active_density(self):
        net = NetworkParams()
        assert active_density(net, Slotted(0.05)) == pytest.approx(5e-5)
        assert active_density(net, PoissonRain.matching(net.lam, 0.05)) == pytest.approx(5e-5)
        assert active_density(net, NonSlottedRenewal.from_tau(0.05)) == pytest.approx(5e-5)


class TestPathLoss:
    def test_examples(self):
        assert path_loss_eval(PowerLaw(1, 4), math.sqrt(1000)) == pytest.approx(1e6, rel=1e-14)
        assert path_loss_eval(PowerLaw(1, 3), 1.0) == 1.0
        assert path_loss_eval(ClampedMax(PowerLaw(1, 4)), 0.5) == 1.0

    def test_variants(self):
        pl = PowerLaw(2.0, 3.0)
        assert Shifted(pl)(1.0) == pytest.approx(64.0)
        assert MinDistance(pl, 2.0)(0.5) == pytest.approx(64.0)
        assert MinDistance(pl, 2.0)(3.0) == pytest.approx(216.0)

    def test_pole(self):
        with pytest.raises(PoleAtOrigin):
            PowerLaw()(0.0)
        with pytest.raises(PoleAtOrigin):
            PowerLaw()(np.array([1.0, 0.0]))

    def test_bounded_variants_positive_at_origin(self):
        for model in (ClampedMax(), Shifted(), MinDistance(u0=0.5)):
            assert model(0.0) > 0

    @pytest.mark.parametrize("beta", [2.0, 1.5])
    def test_small_beta_rejected(self, beta):
        with pytest.raises(DivergentConstant):
            PowerLaw(beta=beta)

    @given(betas, positive, positive, positive)
    def test_monotone(self, beta, A, u1, u2):
        lo, hi = sorted((u1, u2))
        inner = PowerLaw(A=min(A, 10.0), beta=beta)
        for model in (inner, ClampedMax(inner), Shifted(inner), MinDistance(inner, 1.0)):
            assert model(lo) <= model(hi)

    @given(betas, st.floats(1e-3, 1e6))
    def test_inverse(self, beta, level):
        pl = PowerLaw(beta=beta)
        assert pl(pl.inverse(level)) == pytest.approx(level, rel=1e-9)


class TestFadingAndNoise:
    def test_rayleigh_law_of_large_numbers(self):
        rng = np.random.default_rng(1)
        f = Rayleigh(mu=2.0)
        assert f.sample(rng, 10 ** 6).mean() == pytest.approx(0.5, rel=0.01)

    def test_deterministic(self):
        f = Deterministic(mu=4.0)
        assert f.value == 0.25 and f.mean == 0.25
        assert f.laplace(2.0) == pytest.approx(math.exp(-0.5))

    @pytest.mark.parametrize("mu", [0.0, -1.0, math.inf])
    def test_mean_must_be_finite_positive(self, mu):
        with pytest.raises(ValueError):
            Rayleigh(mu)

    @given(st.floats(0, 50), st.floats(0, 50))
    def test_noise_laplace(self, s1, s2):
        lo, hi = sorted((s1, s2))
        for w in (ZeroNoise(), DeterministicNoise(0.3)):
            assert w.laplace(0.0) == 1.0
            assert w.laplace(hi) <= w.laplace(lo)

    @pytest.mark.parametrize("kw", [dict(lam=0), dict(r=0), dict(T=-1)])
    def test_network_invariants(self, kw):
        with pytest.raises(ValueError):
            NetworkParams(**kw)

    def test_network_defaults(self):
        net = NetworkParams()
        assert net.beta == 4.0 and net.l_r == pytest.approx(1e6)
        assert net.is_noiseless_power_law
        assert not NetworkParams(noise=DeterministicNoise(1e-9)).is_noiseless_power_law
