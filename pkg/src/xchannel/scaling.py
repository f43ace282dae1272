"""High-SNR sum-rate scaling: multiplexing-gain estimation by slope fitting.

The multiplexing gain is the high-SNR slope of the maximum sum rate against
log SNR.  Rates everywhere in this package carry the 1/2 log2 factor of a
real Gaussian channel, so the fit abscissa is 0.5*log2(SNR): a single
point-to-point link then calibrates to slope 1, the two-user broadcast
reference is 2 per antenna, and the claims under test are slope 2 for the
cognitive X configuration and slope 1 for the cognitive interference
configuration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from . import bounds, model, regions

PowerPolicy = Literal["fixed_p22", "free"]

#: default fit window, dB
DEFAULT_SNR_GRID_DB = tuple(float(x) for x in range(30, 71, 5))
#: default power-division fraction for the fixed_p22 policy
DEFAULT_BETA = 0.5

SlopeKind = Literal["cognitive_x", "cognitive_interference", "point_to_point"]


class NonMonotoneRateError(RuntimeError):
    """Max sum rate decreased with SNR: the sweep grid failed somewhere."""


@dataclass(frozen=True)
class SlopeEstimate:
    """Least-squares slope of max sum rate against 0.5*log2(SNR)."""

    slope: float
    intercept: float
    snr_grid_db: tuple[float, ...]
    residual: float
    per_point_rates: tuple[tuple[float, float], ...]
    channel_kind: str
    power_policy: str

    def as_dict(self) -> dict:
        return {
            "channel_kind": self.channel_kind,
            "power_policy": self.power_policy,
            "slope": self.slope,
            "intercept_bits": self.intercept,
            "snr_grid_db": list(self.snr_grid_db),
            "max_abs_residual_bits": self.residual,
            "per_point_rates": [
                {"snr_db": s, "max_sum_rate_bits": r} for s, r in self.per_point_rates
            ],
        }


def fit_slope(snr_grid_db: tuple[float, ...], rates: list[float]) -> tuple[float, float, float]:
    """Fit rate = slope * (0.5 log2 SNR) + intercept; returns residual too."""
    if len(snr_grid_db) < 2:
        raise ValueError("need at least two SNR points to fit a slope")
    if any(b <= a for a, b in zip(snr_grid_db, snr_grid_db[1:])):
        raise ValueError("snr grid must be strictly increasing")
    if any(b < a for a, b in zip(rates, rates[1:])):
        raise NonMonotoneRateError(
            f"max sum rate decreased along the SNR grid: {rates}"
        )
    x = np.array([0.5 * math.log2(10.0 ** (s / 10.0)) for s in snr_grid_db])
    y = np.asarray(rates, float)
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.max(np.abs(slope * x + intercept - y)))
    return float(slope), float(intercept), residual


def _max_sum_rate(
    kind: SlopeKind,
    params: model.ChannelParams,
    policy: PowerPolicy,
    beta: float,
    grid: regions.SweepGrid,
) -> float:
    if kind == "point_to_point":
        # lone Tx1 through the same machinery: calibration of the pipeline
        solo = replace(params, alpha12=0.0, alpha21=0.0, p2=0.0)
        raw1, raw2 = bounds.sum_bounds_batch(
            solo.alpha12, solo.alpha21, solo.n1, solo.n2,
            np.array([solo.p1]), np.array([0.0]),
            np.array([0.0]), np.array([0.0]), np.array([0.0]),
        )
        return float(max(raw1[0], 0.0) + max(raw2[0], 0.0))

    if kind == "cognitive_x" and policy == "fixed_p22":
        # direct and cross powers all scale with the budget, the cross-aware
        # private power stays pinned at the noise floor
        p22 = min(params.n2, beta * params.p2)
        p21 = beta * params.p2 - p22
        raw1, raw2 = bounds.sum_bounds_batch(
            params.alpha12, params.alpha21, params.n1, params.n2,
            np.array([params.p1 / 2.0]), np.array([params.p1 / 2.0]),
            np.array([p21]), np.array([p22]),
            np.array([(1.0 - beta) * params.p2]),
        )
        return float(max(raw1[0], 0.0) + max(raw2[0], 0.0))

    if kind == "cognitive_x":
        frontier = regions.sweep_cognitive_x(params, grid)
    elif kind == "cognitive_interference":
        if policy == "fixed_p22":
            # no cross messages: Tx2 keeps its private power at the noise
            # floor and reinforces with the entire remainder of its budget
            p22 = min(params.n2, params.p2)
            raw1, raw2 = bounds.sum_bounds_batch(
                params.alpha12, params.alpha21, params.n1, params.n2,
                np.array([params.p1]), np.array([0.0]),
                np.array([0.0]), np.array([p22]),
                np.array([params.p2 - p22]),
            )
            return float(max(raw1[0], 0.0) + max(raw2[0], 0.0))
        frontier = regions.sweep_cognitive_ic(params, grid)
    else:
        raise ValueError(f"unknown channel kind {kind!r}")
    return frontier.max_sum_rate


def estimate_slope(
    channel_kind: SlopeKind,
    params_template: model.ChannelParams,
    snr_grid_db: tuple[float, ...] = DEFAULT_SNR_GRID_DB,
    power_policy: PowerPolicy = "fixed_p22",
    beta: float = DEFAULT_BETA,
    grid: regions.SweepGrid = regions.SweepGrid(),
) -> SlopeEstimate:
    """Estimate the multiplexing gain of one channel kind.

    ``params_template`` supplies gains and noise; both power budgets are set
    to n1 * 10^(snr/10) at each grid point.  Policies: ``fixed_p22`` pins the
    cross-aware private power at the noise floor while everything else scales
    (the scaling-optimal recipe); ``free`` grid-searches the signaling
    parameters at every SNR point.
    """
    snr_grid_db = tuple(float(s) for s in snr_grid_db)
    per_point: list[tuple[float, float]] = []
    for snr_db in snr_grid_db:
        power = model.snr_to_power(snr_db, params_template.n1)
        params = replace(params_template, p1=power, p2=power)
        rate = _max_sum_rate(channel_kind, params, power_policy, beta, grid)
        per_point.append((snr_db, rate))
    slope, intercept, residual = fit_slope(snr_grid_db, [r for _, r in per_point])
    return SlopeEstimate(
        slope=slope,
        intercept=intercept,
        snr_grid_db=snr_grid_db,
        residual=residual,
        per_point_rates=tuple(per_point),
        channel_kind=channel_kind,
        power_policy=power_policy,
    )


def reference_lines(m: int) -> list[tuple[str, float]]:
    """Analytic multiplexing-gain references for M antennas per node.

    No computation behind these; they label plots and reports: interference
    channel M, non-cooperative X-channel between floor(4M/3) and 4M/3,
    broadcast (full cooperation) 2M, cognitive X-channel 2M.
    """
    if m < 1:
        raise ValueError(f"antenna count must be at least 1, got {m}")
    return [
        ("interference", float(m)),
        ("x_channel_lower", float(math.floor(4 * m / 3))),
        ("x_channel_upper", 4.0 * m / 3.0),
        ("bc", 2.0 * m),
        ("cognitive_x", 2.0 * m),
    ]
