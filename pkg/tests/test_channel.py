import numpy as np
import pytest

from helpers import elimination_rank, max_abs
from sdoflab import (
    AntennaConfig,
    DimensionMismatch,
    EveMode,
    RngStream,
    SignalParams,
    allocate_jamming,
    build_precoders,
    received_covariances,
    sample_channels,
)
from sdoflab.channel import per_stream_powers


class TestRngStream:
    def test_validation(self):
        with pytest.raises(ValueError):
            RngStream(-1)
        with pytest.raises(ValueError):
            RngStream(3, (-1, 0))

    def test_same_address_same_draws(self):
        a = RngStream(42, (5, 3)).generator(0).standard_normal(8)
        b = RngStream(42, (5, 3)).generator(0).standard_normal(8)
        assert np.array_equal(a, b)

    def test_domains_are_distinct(self):
        a = RngStream(42, (5, 3)).generator(0).standard_normal(8)
        b = RngStream(42, (5, 3)).generator(1).standard_normal(8)
        assert not np.array_equal(a, b)


class TestSampleChannels:
    def test_shapes_and_rank(self):
        config = AntennaConfig(2, 2, 3, 2)
        ch = sample_channels(config, RngStream(1))
        assert ch.h1.shape == (3, 2)
        assert ch.h2.shape == (3, 2)
        assert ch.g1.shape == (2, 2)
        assert elimination_rank(ch.h1) == 2

    def test_no_eavesdropper_gives_empty_g(self):
        ch = sample_channels(AntennaConfig(2, 1, 2, 0), RngStream(1))
        assert ch.g1.shape == (0, 2)

    def test_determinism(self):
        config = AntennaConfig(3, 2, 4, 1)
        first = sample_channels(config, RngStream(9, (2, 1)))
        second = sample_channels(config, RngStream(9, (2, 1)))
        assert np.array_equal(first.h1, second.h1)
        assert np.array_equal(first.g2, second.g2)

    def test_legit_static_across_uses_eve_varies(self):
        config = AntennaConfig(2, 2, 3, 2)
        use0 = sample_channels(config, RngStream(7, (0, 0)), EveMode.TIME_VARYING)
        use1 = sample_channels(config, RngStream(7, (0, 1)), EveMode.TIME_VARYING)
        assert np.array_equal(use0.h1, use1.h1)
        assert not np.array_equal(use0.g1, use1.g1)

    def test_static_eve_ignores_use_index(self):
        config = AntennaConfig(2, 2, 3, 2)
        use0 = sample_channels(config, RngStream(7, (0, 0)), EveMode.STATIC)
        use1 = sample_channels(config, RngStream(7, (0, 5)), EveMode.STATIC)
        assert np.array_equal(use0.g1, use1.g1)

    def test_empirical_moments(self):
        # pool ~1e5 entries from one large draw
        config = AntennaConfig(220, 230, 222, 0)
        ch = sample_channels(config, RngStream(123))
        entries = np.concatenate([ch.h1.ravel(), ch.h2.ravel()])
        assert entries.size >= 99_000
        assert np.var(entries) == pytest.approx(1.0, abs=0.02)
        assert abs(entries.mean()) < 0.02

    def test_configurable_mean_and_variance(self):
        config = AntennaConfig(150, 150, 120, 0)
        ch = sample_channels(config, RngStream(5), mean=2.0, variance=0.25)
        entries = np.concatenate([ch.h1.ravel(), ch.h2.ravel()])
        assert entries.mean() == pytest.approx(2.0, abs=0.02)
        assert np.var(entries) == pytest.approx(0.25, abs=0.01)


class TestSignalParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            SignalParams(-1.0)
        with pytest.raises(ValueError):
            SignalParams(1.0, alpha=0.0)
        with pytest.raises(ValueError):
            SignalParams(1.0, sigma2=0.0)

    def test_from_db(self):
        assert SignalParams.from_db(30.0).p == pytest.approx(1000.0)


class TestReceivedCovariances:
    @pytest.fixture()
    def setup(self):
        config = AntennaConfig(2, 2, 3, 2)
        rng = RngStream(11)
        ch = sample_channels(config, rng)
        alloc = allocate_jamming(config)
        pre = build_precoders(config, ch, alloc, rng)
        return config, ch, pre

    def test_zero_power(self, setup):
        _, ch, pre = setup
        covs = received_covariances(ch, pre, SignalParams(0.0))
        assert all(max_abs(c) == 0.0 for c in covs)

    def test_no_jamming_means_zero_jam_cov(self):
        config = AntennaConfig(2, 2, 3, 0)
        rng = RngStream(3)
        ch = sample_channels(config, rng)
        pre = build_precoders(config, ch, allocate_jamming(config), rng)
        _, legit_jam, _, eve_jam = received_covariances(ch, pre, SignalParams(4.0))
        assert max_abs(legit_jam) == 0.0
        assert eve_jam.shape == (0, 0)

    def test_hermitian_psd(self, setup):
        _, ch, pre = setup
        covs = received_covariances(ch, pre, SignalParams(10.0, alpha=0.3))
        for cov in covs:
            assert max_abs(cov - cov.conj().T) < 1e-12
            eigenvalues = np.linalg.eigvalsh(cov)
            trace = float(np.trace(cov).real)
            assert eigenvalues.min() >= -1e-9 * max(trace, 1.0)

    def test_signal_trace_bounded_by_power_times_gain(self, setup):
        _, ch, pre = setup
        sig = SignalParams(10.0, alpha=0.4)
        legit_signal, _, _, _ = received_covariances(ch, pre, sig)
        gain = max(np.linalg.norm(ch.h1, 2), np.linalg.norm(ch.h2, 2)) ** 2
        assert float(np.trace(legit_signal).real) <= (1 - sig.alpha) * sig.p * gain + 1e-9

    def test_transmit_power_accounting(self, setup):
        # trace of the transmit covariance (before the channel) equals p
        _, _, pre = setup
        sig = SignalParams(7.0, alpha=0.25)
        p_legit, p_jam = per_stream_powers(pre, sig)
        total = 0.0
        for vl, vj in ((pre.v1_l, pre.v1_j), (pre.v2_l, pre.v2_j)):
            cov = p_legit * (vl @ vl.conj().T) + p_jam * (vj @ vj.conj().T)
            total += float(np.trace(cov).real)
        assert total / pre.slots == pytest.approx(sig.p, rel=1e-9)

    def test_transmit_power_accounting_two_slot(self):
        config = AntennaConfig(2, 2, 3, 1)
        rng = RngStream(19)
        ch = sample_channels(config, rng)
        pre = build_precoders(config, ch, allocate_jamming(config), rng)
        assert pre.slots == 2
        sig = SignalParams(3.0, alpha=0.5)
        p_legit, p_jam = per_stream_powers(pre, sig)
        total = 0.0
        for vl, vj in ((pre.v1_l, pre.v1_j), (pre.v2_l, pre.v2_j)):
            cov = p_legit * (vl @ vl.conj().T) + p_jam * (vj @ vj.conj().T)
            total += float(np.trace(cov).real)
        assert total / pre.slots == pytest.approx(sig.p, rel=1e-9)

    def test_dimension_mismatch(self, setup):
        config, ch, pre = setup
        other = sample_channels(AntennaConfig(3, 3, 4, 2), RngStream(1))
        with pytest.raises(DimensionMismatch):
            received_covariances(other, pre, SignalParams(1.0))
