"""Self-verification suites behind the ``verify`` CLI command.

Runs the library's cross-module invariants programmatically: closed-form
consistency over an exhaustive antenna grid, allocation audits, precoder
residual/rank checks over random channel seeds, and (optionally) quick
Monte Carlo slope smoke tests.  Returns a JSON-friendly report; every
check carries a pass flag and its worst observed residual or first
counterexample.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .channel import EveMode, RngStream, SignalParams, sample_channels
from .errors import SdofLabError
from .precoding import _build_with_report, leakage_rank
from .sdof import (
    AntennaConfig,
    allocate_jamming,
    audit_allocation,
    regime_table,
    sum_sdof,
)
from .simulate import estimate_dof, sweep
from .subspaces import DEFAULT_TOL, Tolerance

__all__ = ["CheckResult", "run_verification"]

# Residual gates for the precoder checks; identical to the acceptance gates.
NULLSPACE_RESIDUAL_MAX = 1e-9
ALIGNMENT_RESIDUAL_MAX = 1e-8
UNITARITY_RESIDUAL_MAX = 1e-9
ZERO_FORCING_RESIDUAL_MAX = 1e-8

# Precoder sweeps get expensive combinatorially; theory checks scale to any
# --max-antennas but the numeric sweeps are capped here.
PRECODER_ANTENNA_CAP = 5

_SLOPE_SMOKE_CONFIGS = ((2, 2, 3, 2), (4, 1, 2, 1), (2, 2, 3, 1))
_SLOPE_SMOKE_TOLERANCE = 0.25


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    worst_residual: float | None = None


def _grid(max_antennas: int, include_all_ne: bool = True):
    for m1 in range(1, max_antennas + 1):
        for m2 in range(1, max_antennas + 1):
            for n in range(1, max_antennas + 1):
                top = m1 + m2 if include_all_ne else m1 + m2 - 1
                for n_e in range(0, top + 1):
                    yield AntennaConfig(m1, m2, n, n_e)


def check_theory(max_antennas: int) -> CheckResult:
    """Case/closed-form agreement plus symmetry, monotonicity and clamping."""
    try:
        rows = regime_table(max_antennas)
    except SdofLabError as exc:
        return CheckResult("theory_consistency", False, str(exc))
    for config, _, value in rows:
        mirrored = sum_sdof(AntennaConfig(config.m2, config.m1, config.n, config.n_e))
        if mirrored.as_fraction != value.as_fraction:
            return CheckResult("theory_consistency", False, f"symmetry broken at {config}")
        if config.n_e >= config.m and value.as_fraction != 0:
            return CheckResult("theory_consistency", False, f"clamp broken at {config}")
        if config.n_e >= 1:
            previous = sum_sdof(
                AntennaConfig(config.m1, config.m2, config.n, config.n_e - 1)
            )
            if value.as_fraction > previous.as_fraction:
                return CheckResult(
                    "theory_consistency", False, f"not monotone in n_e at {config}"
                )
    return CheckResult(
        "theory_consistency", True, f"{len(rows)} configurations consistent"
    )


def check_allocations(max_antennas: int) -> CheckResult:
    """Every allocation must pass its exact rational audit."""
    count = 0
    for config in _grid(max_antennas):
        report = audit_allocation(allocate_jamming(config), config)
        count += 1
        if not report.ok:
            failed = ", ".join(c.name for c in report.failures())
            return CheckResult(
                "allocation_audits", False, f"{config}: failed {failed}"
            )
    return CheckResult("allocation_audits", True, f"{count} allocations audited")


def check_precoders(
    max_antennas: int, seeds: int, tol: Tolerance = DEFAULT_TOL
) -> CheckResult:
    """Residual and rank invariants of assembled precoder sets.

    Two-slot eavesdropper ranks are measured with per-slot channel draws
    (the time-varying base model); a static eavesdropper would need the
    fractional-alignment machinery this artifact deliberately replaces
    with time sharing.
    """
    cap = min(max_antennas, PRECODER_ANTENNA_CAP)
    worst = 0.0
    builds = 0
    for config in _grid(cap, include_all_ne=False):
        alloc = allocate_jamming(config)
        slots = 2 if alloc.needs_two_slot else 1
        expect_u_rank = slots * config.n - int(alloc.j_s * slots)
        expect_legit = int(alloc.d_total * slots)
        expect_leak = int(min(Fraction(config.n_e), alloc.total_streams) * slots)
        for seed in range(seeds):
            rng = RngStream(seed, (0, 0))
            ch = sample_channels(config, rng, EveMode.TIME_VARYING)
            pre, report = _build_with_report(config, ch, alloc, rng, tol)
            builds += 1
            worst = max(
                worst,
                report.nullspace_residual,
                report.alignment_residual,
                report.unitarity_residual,
                report.zero_forcing_residual,
            )
            problems = []
            if report.nullspace_residual > NULLSPACE_RESIDUAL_MAX:
                problems.append(f"nullspace residual {report.nullspace_residual:.2e}")
            if report.alignment_residual > ALIGNMENT_RESIDUAL_MAX:
                problems.append(f"alignment residual {report.alignment_residual:.2e}")
            if report.unitarity_residual > UNITARITY_RESIDUAL_MAX:
                problems.append(f"unitarity residual {report.unitarity_residual:.2e}")
            if report.zero_forcing_residual > ZERO_FORCING_RESIDUAL_MAX:
                problems.append(
                    f"zero-forcing residual {report.zero_forcing_residual:.2e}"
                )
            if report.u_rank != expect_u_rank:
                problems.append(f"rank(U) {report.u_rank} != {expect_u_rank}")
            if report.legit_rank != expect_legit:
                problems.append(f"legit rank {report.legit_rank} != {expect_legit}")
            slot_b = (
                sample_channels(config, RngStream(seed, (0, 1)), EveMode.TIME_VARYING)
                if slots == 2
                else None
            )
            observed_leak = leakage_rank(ch, pre, tol, slot_b=slot_b)
            if observed_leak != expect_leak:
                problems.append(f"leakage rank {observed_leak} != {expect_leak}")
            if problems:
                return CheckResult(
                    "precoder_invariants",
                    False,
                    f"{config} seed {seed}: " + "; ".join(problems),
                    worst,
                )
    return CheckResult(
        "precoder_invariants",
        True,
        f"{builds} precoder sets checked",
        worst,
    )


def check_slopes() -> CheckResult:
    """Quick Monte Carlo smoke: measured slope near the closed form."""
    worst = 0.0
    for cfg in _SLOPE_SMOKE_CONFIGS:
        config = AntennaConfig(*cfg)
        samples = sweep(
            config,
            SignalParams(1.0),
            [60.0, 70.0, 80.0, 90.0, 100.0],
            trials=10,
            master_seed=1,
            mode=EveMode.TIME_VARYING,
        )
        legit, _ = estimate_dof(samples, (60.0, 100.0))
        err = abs(legit.slope - sum_sdof(config).value)
        worst = max(worst, err)
        if err > _SLOPE_SMOKE_TOLERANCE:
            return CheckResult(
                "slope_smoke",
                False,
                f"{config}: slope {legit.slope:.3f} vs {sum_sdof(config)}",
                worst,
            )
    return CheckResult("slope_smoke", True, f"{len(_SLOPE_SMOKE_CONFIGS)} configs", worst)


def run_verification(
    max_antennas: int = 5, seeds: int = 20, full: bool = False
) -> dict:
    """Run all verification suites and return a JSON-serializable report."""
    if max_antennas < 1:
        raise ValueError("max_antennas must be at least 1")
    if seeds < 1:
        raise ValueError("seeds must be at least 1")
    checks = [
        check_theory(max_antennas),
        check_allocations(max_antennas),
        check_precoders(max_antennas, seeds),
    ]
    if full:
        checks.append(check_slopes())
    return {
        "max_antennas": max_antennas,
        "seeds": seeds,
        "full": full,
        "passed": all(c.passed for c in checks),
        "checks": [asdict(c) for c in checks],
    }
