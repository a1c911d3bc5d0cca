"""Random channel realizations and the Gaussian signal model.

Legitimate channels are drawn once per trial and stay fixed across power
levels and slots; eavesdropper channels are redrawn per channel use when
the time-varying mode is active.  All draws are pure functions of
(master seed, trial index, channel-use index), so trials can run in any
order or in parallel with identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionMismatch
from .sdof import AntennaConfig

__all__ = [
    "EveMode",
    "RngStream",
    "SignalParams",
    "ChannelRealization",
    "sample_channels",
    "received_covariances",
]

# Seed-sequence domains; kept distinct so legitimate, eavesdropper and
# precoder randomness never alias.
_DOMAIN_LEGIT = 0
_DOMAIN_EVE = 1
_DOMAIN_JAMMING = 2


class EveMode(Enum):
    STATIC = "static_eve"
    TIME_VARYING = "time_varying_eve"


@dataclass(frozen=True)
class RngStream:
    """Addressable randomness: a master seed plus (trial, channel-use) id."""

    master_seed: int
    stream_id: tuple[int, int] = (0, 0)

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit nonnegative integer")
        trial, use = self.stream_id
        if trial < 0 or use < 0:
            raise ValueError("stream_id components must be nonnegative")

    def generator(self, domain: int, per_use: bool = True) -> np.random.Generator:
        trial, use = self.stream_id
        key = (domain, trial, use) if per_use else (domain, trial)
        seq = np.random.SeedSequence(entropy=self.master_seed, spawn_key=key)
        return np.random.default_rng(seq)


@dataclass(frozen=True)
class SignalParams:
    """Total transmit power (linear), jamming power fraction and noise variance."""

    p: float
    alpha: float = 0.5
    sigma2: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.p) or self.p < 0:
            raise ValueError("p must be finite and nonnegative")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if not np.isfinite(self.sigma2) or self.sigma2 <= 0:
            raise ValueError("sigma2 must be finite and positive")

    @classmethod
    def from_db(cls, p_db: float, alpha: float = 0.5, sigma2: float = 1.0) -> "SignalParams":
        return cls(p=10.0 ** (p_db / 10.0), alpha=alpha, sigma2=sigma2)


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of the four channel matrices.

    h1 (n x m1) and h2 (n x m2) connect the transmitters to the legitimate
    receiver; g1 (n_e x m1) and g2 (n_e x m2) connect them to the
    eavesdropper.  n_e may be zero, giving empty g matrices.
    """

    h1: np.ndarray
    h2: np.ndarray
    g1: np.ndarray
    g2: np.ndarray


def _complex_gaussian(gen, rows, cols, mean, variance):
    scale = np.sqrt(variance / 2.0)
    z = gen.standard_normal((rows, cols)) + 1j * gen.standard_normal((rows, cols))
    return mean + scale * z


def sample_channels(
    config: AntennaConfig,
    rng: RngStream,
    mode: EveMode = EveMode.STATIC,
    mean: float = 0.0,
    variance: float = 1.0,
) -> ChannelRealization:
    """Draw a channel realization for one (trial, channel use) address.

    Entries are i.i.d. circularly-symmetric complex Gaussian with the given
    mean and variance (defaults give CN(0, 1), which makes all subspace
    positions generic almost surely).  The legitimate matrices depend only
    on the trial index; the eavesdropper matrices also depend on the
    channel-use index in time-varying mode.
    """
    legit = rng.generator(_DOMAIN_LEGIT, per_use=False)
    eve = rng.generator(_DOMAIN_EVE, per_use=(mode is EveMode.TIME_VARYING))
    h1 = _complex_gaussian(legit, config.n, config.m1, mean, variance)
    h2 = _complex_gaussian(legit, config.n, config.m2, mean, variance)
    g1 = _complex_gaussian(eve, config.n_e, config.m1, mean, variance)
    g2 = _complex_gaussian(eve, config.n_e, config.m2, mean, variance)
    return ChannelRealization(h1, h2, g1, g2)


def jamming_generator(rng: RngStream) -> np.random.Generator:
    """Per-trial generator for random jamming directions."""
    return rng.generator(_DOMAIN_JAMMING, per_use=False)


def _slot_stack(mat: np.ndarray, slots: int) -> np.ndarray:
    """Block-diagonal slot extension of a per-slot matrix (identity for slots=1)."""
    if slots == 1:
        return mat
    return np.kron(np.eye(slots), mat)


def per_stream_powers(pre, sig: SignalParams) -> tuple[float, float]:
    """Per-stream legitimate and jamming powers implied by a precoder set.

    The legitimate budget (1 - alpha) p is split evenly over the d1 + d2
    legitimate streams and the jamming budget alpha p over the jamming
    streams, normalized per channel use (slot).  Zero-stream budgets give
    zero power.
    """
    legit_cols = pre.v1_l.shape[1] + pre.v2_l.shape[1]
    jam_cols = pre.v1_j.shape[1] + pre.v2_j.shape[1]
    p_legit = (1.0 - sig.alpha) * sig.p * pre.slots / legit_cols if legit_cols else 0.0
    p_jam = sig.alpha * sig.p * pre.slots / jam_cols if jam_cols else 0.0
    return p_legit, p_jam


def received_covariances(ch: ChannelRealization, pre, sig: SignalParams):
    """Received signal and jamming covariances at both receivers.

    Returns (legit_signal_cov, legit_jam_cov, eve_signal_cov, eve_jam_cov),
    all Hermitian positive semidefinite.  For two-slot precoder sets the
    covariances live on the slot-stacked spaces and the eavesdropper
    channel is held static across the two slots.
    """
    slots = pre.slots
    h1, h2 = _slot_stack(ch.h1, slots), _slot_stack(ch.h2, slots)
    g1, g2 = _slot_stack(ch.g1, slots), _slot_stack(ch.g2, slots)
    for mat, v in ((h1, pre.v1_l), (h2, pre.v2_l), (g1, pre.v1_j), (g2, pre.v2_j)):
        if mat.shape[1] != v.shape[0]:
            raise DimensionMismatch("channel and precoder antenna counts disagree")
    p_legit, p_jam = per_stream_powers(pre, sig)

    def cov(ha, hb, va, vb, power):
        ea = ha @ va
        eb = hb @ vb
        out = power * (ea @ ea.conj().T + eb @ eb.conj().T)
        return (out + out.conj().T) * 0.5

    return (
        cov(h1, h2, pre.v1_l, pre.v2_l, p_legit),
        cov(h1, h2, pre.v1_j, pre.v2_j, p_jam),
        cov(g1, g2, pre.v1_l, pre.v2_l, p_legit),
        cov(g1, g2, pre.v1_j, pre.v2_j, p_jam),
    )
