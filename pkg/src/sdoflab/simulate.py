"""Monte Carlo rate evaluation and high-SNR slope estimation.

Per trial, channels are drawn once and precoders built once; each power
grid point then costs three log-determinant evaluations (legitimate rate
plus the two sides of the leakage ratio).  Rates are in bits per channel
use (base-2 logs, averaged over slots for two-slot schemes).  Trials are
independent work items keyed by (master seed, trial index), so the sweep
can run them on any number of threads with bit-identical results.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels as _kernels
from .channel import ChannelRealization, EveMode, RngStream, SignalParams, per_stream_powers, sample_channels
from .errors import InsufficientData, NumericalFailure
from .precoding import PrecoderSet, build_precoders
from .sdof import AntennaConfig, allocate_jamming
from .subspaces import DEFAULT_TOL, Tolerance

__all__ = [
    "RateSample",
    "DofEstimate",
    "legit_rate",
    "eve_leakage",
    "sweep",
    "estimate_dof",
    "HALF_LOG2_PER_DB",
]

# d(0.5 * log2 P) / d(P_dB): converts dB grids to the regression abscissa.
HALF_LOG2_PER_DB = float(np.log2(10.0) / 20.0)


@dataclass(frozen=True)
class RateSample:
    """One Monte Carlo draw: power level, trial index, and the two rates."""

    p_db: float
    trial: int
    legit_rate: float
    eve_leakage: float


@dataclass(frozen=True)
class DofEstimate:
    """Least-squares slope of mean rate against 0.5 * log2(P)."""

    slope: float
    intercept: float
    r_squared: float
    window: tuple[float, float]


def _slot_double(mat: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(2), mat)


def _logdet(e: np.ndarray) -> float:
    try:
        return _kernels.logdet_eye_plus_gram(e)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalFailure(f"log-determinant evaluation failed: {exc}") from exc


def _scaled_blocks(channels, precoders, power: float, sigma2: float) -> np.ndarray:
    """Concatenate sqrt(power/sigma2) * (channel @ precoder) blocks."""
    cols = [ch @ v for ch, v in zip(channels, precoders) if v.shape[1]]
    if not cols:
        rows = channels[0].shape[0]
        return np.zeros((rows, 0), dtype=np.complex128)
    return np.sqrt(power / sigma2) * np.hstack(cols)


def legit_rate(ch: ChannelRealization, pre: PrecoderSet, sig: SignalParams) -> float:
    """Achievable legitimate sum rate after zero-forcing, in bits/channel use.

    Computes 0.5 * log2 det(I + U S U^H / sigma2) with S the received
    legitimate signal covariance, averaged over slots.  Zero power, zero
    legitimate streams or a zero projector all give exactly 0 bits.
    """
    h1 = _slot_double(ch.h1) if pre.slots == 2 else ch.h1
    h2 = _slot_double(ch.h2) if pre.slots == 2 else ch.h2
    p_legit, _ = per_stream_powers(pre, sig)
    effective = _scaled_blocks(
        (pre.u @ h1, pre.u @ h2), (pre.v1_l, pre.v2_l), p_legit, sig.sigma2
    )
    return 0.5 * _logdet(effective) / pre.slots


def eve_leakage(
    ch: ChannelRealization,
    pre: PrecoderSet,
    sig: SignalParams,
    slot_b: ChannelRealization | None = None,
) -> float:
    """Upper bound on the eavesdropper's rate about the legitimate signal.

    Evaluates, in the log domain, the determinant ratio of the received
    signal-plus-noise to jamming-plus-noise covariances at the
    eavesdropper, clamped below at zero bits.  For two-slot schemes the
    eavesdropper matrices of ``slot_b`` are used in the second slot when
    given (time-varying mode); otherwise the realization's matrices are
    held static across both slots.
    """
    if ch.g1.shape[0] == 0:
        return 0.0
    if pre.slots == 2:
        other = slot_b if slot_b is not None else ch
        g1 = np.block([
            [ch.g1, np.zeros_like(ch.g1)],
            [np.zeros_like(other.g1), other.g1],
        ])
        g2 = np.block([
            [ch.g2, np.zeros_like(ch.g2)],
            [np.zeros_like(other.g2), other.g2],
        ])
    else:
        g1, g2 = ch.g1, ch.g2
    p_legit, p_jam = per_stream_powers(pre, sig)
    signal = _scaled_blocks((g1, g2), (pre.v1_l, pre.v2_l), p_legit, sig.sigma2)
    jamming = _scaled_blocks((g1, g2), (pre.v1_j, pre.v2_j), p_jam, sig.sigma2)
    leak = 0.5 * (_logdet(signal) - _logdet(jamming)) / pre.slots
    return max(0.0, leak)


def _resolve_threads(threads: int | None) -> int:
    if threads is not None:
        if threads < 1:
            raise ValueError("threads must be at least 1")
        return threads
    env = os.environ.get("SDOFLAB_THREADS", "")
    if env.strip():
        value = int(env)
        if value < 1:
            raise ValueError("SDOFLAB_THREADS must be at least 1")
        return value
    return 1


def sweep(
    config: AntennaConfig,
    sig_template: SignalParams,
    p_grid_db: Sequence[float],
    trials: int,
    master_seed: int,
    mode: EveMode = EveMode.STATIC,
    tol: Tolerance = DEFAULT_TOL,
    threads: int | None = None,
) -> list[RateSample]:
    """Monte Carlo rate samples over a power grid.

    For each trial: fresh legitimate channels, one precoder build, then
    rates at every grid point (with fresh eavesdropper draws per point in
    time-varying mode).  Output is ordered by (p_db, trial) and depends
    only on the arguments, never on thread count (``threads=None`` reads
    SDOFLAB_THREADS, defaulting to sequential).  An InfeasibleAllocation
    from any trial aborts the sweep: feasibility is generic, so a failure
    indicates an allocation bug rather than bad luck.
    """
    grid = [float(p) for p in p_grid_db]
    if len(grid) == 0:
        raise ValueError("p_grid_db must not be empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("p_grid_db must be strictly increasing")
    if trials < 1:
        raise ValueError("trials must be at least 1")

    alloc = allocate_jamming(config)
    two_slot = alloc.needs_two_slot

    def run_trial(trial: int) -> list[RateSample]:
        rng0 = RngStream(master_seed, (trial, 0))
        ch0 = sample_channels(config, rng0, mode)
        pre = build_precoders(config, ch0, alloc, rng0, tol)
        out = []
        for k, p_db in enumerate(grid):
            sig = SignalParams(
                p=10.0 ** (p_db / 10.0), alpha=sig_template.alpha, sigma2=sig_template.sigma2
            )
            if mode is EveMode.TIME_VARYING:
                ch_a = sample_channels(config, RngStream(master_seed, (trial, 2 * k)), mode)
                ch_b = (
                    sample_channels(config, RngStream(master_seed, (trial, 2 * k + 1)), mode)
                    if two_slot
                    else None
                )
            else:
                ch_a, ch_b = ch0, None
            legit = legit_rate(ch_a, pre, sig)
            leak = eve_leakage(ch_a, pre, sig, slot_b=ch_b)
            out.append(RateSample(p_db, trial, legit, leak))
        return out

    workers = min(_resolve_threads(threads), trials)
    if workers == 1:
        per_trial = [run_trial(t) for t in range(trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_trial = list(pool.map(run_trial, range(trials)))

    samples = []
    for k in range(len(grid)):
        for t in range(trials):
            samples.append(per_trial[t][k])
    return samples


def _ols(x: np.ndarray, y: np.ndarray, window: tuple[float, float]) -> DofEstimate:
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    sxy = float(np.sum((x - xm) * (y - ym)))
    slope = sxy / sxx
    intercept = ym - slope * xm
    residuals = y - (slope * x + intercept)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((y - ym) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return DofEstimate(slope, intercept, r_squared, window)


def estimate_dof(
    samples: Sequence[RateSample], window_db: tuple[float, float] = (60.0, 100.0)
) -> tuple[DofEstimate, DofEstimate]:
    """Slopes of trial-averaged rates against 0.5 * log2(P) inside a window.

    Returns (legitimate, leakage) estimates; the legitimate slope is the
    measured degrees of freedom.  Raises InsufficientData with fewer than
    three distinct grid points inside the window.
    """
    lo, hi = window_db
    by_power: dict[float, list[RateSample]] = {}
    for s in samples:
        if lo <= s.p_db <= hi:
            by_power.setdefault(s.p_db, []).append(s)
    if len(by_power) < 3:
        raise InsufficientData(
            f"need at least 3 grid points in [{lo}, {hi}] dB, found {len(by_power)}"
        )
    powers = np.array(sorted(by_power), dtype=float)
    x = powers * HALF_LOG2_PER_DB
    legit_means = np.array([np.mean([s.legit_rate for s in by_power[p]]) for p in powers])
    leak_means = np.array([np.mean([s.eve_leakage for s in by_power[p]]) for p in powers])
    return _ols(x, legit_means, window_db), _ols(x, leak_means, window_db)
