"""Domain types and parameter bookkeeping for the cognitive X-channel toolkit.

The channel has two transmitters and two receivers with direct gains 1,
cross gains ``alpha12`` (Tx1 seen at Rx2) and ``alpha21`` (Tx2 seen at Rx1),
and additive white Gaussian noise.  Tx2 knows one of Tx1's messages ahead of
time and may spend a ``(1 - beta)`` fraction of its power budget reinforcing
it.  Everything downstream (covariance assembly, rate bounds, sweeps) works
on the two frozen parameter records defined here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

#: relative slack allowed when checking the power-sum constraints
POWER_REL_TOL = 1e-9


class ParameterError(ValueError):
    """A channel/signaling parameter combination violates its invariants."""


@dataclass(frozen=True)
class ChannelParams:
    """Cross gains, noise variances and per-transmitter power budgets.

    ``antennas`` counts antennas per node; every rate computation in this
    package requires ``antennas == 1`` (multi-antenna cases are served only
    by the analytic reference slopes in :mod:`xchannel.scaling`).
    """

    alpha12: float
    alpha21: float
    n1: float = 1.0
    n2: float = 1.0
    p1: float = 1.0
    p2: float = 1.0
    antennas: int = 1


@dataclass(frozen=True)
class SignalingParams:
    """Gaussian signaling description: component powers and DPC parameters.

    ``p11``/``p12`` split Tx1's budget between its two message encodings,
    ``p21``/``p22`` split the ``beta`` fraction of Tx2's budget; the
    remaining ``(1 - beta) * p2`` is spent by Tx2 reinforcing the foreign
    message it knows.  ``gamma1`` and ``gamma2`` are the dirty-paper coding
    coefficients of the two transmitters.
    """

    p11: float
    p12: float
    p21: float
    p22: float
    beta: float = 1.0
    gamma1: float = 0.0
    gamma2: float = 0.0

    @classmethod
    def from_splits(
        cls,
        channel: ChannelParams,
        split1: float,
        beta: float,
        split2: float,
        gamma1: float = 0.0,
        gamma2: float = 0.0,
    ) -> "SignalingParams":
        """Build a point that meets both power constraints with equality.

        ``split1`` is the fraction of ``p1`` given to the direct encoding at
        Tx1, ``split2`` the fraction of ``beta * p2`` given to the cross
        encoding at Tx2.
        """
        if not 0.0 <= split1 <= 1.0 or not 0.0 <= split2 <= 1.0:
            raise ParameterError(f"splits must lie in [0, 1], got {split1}, {split2}")
        return cls(
            p11=split1 * channel.p1,
            p12=(1.0 - split1) * channel.p1,
            p21=split2 * beta * channel.p2,
            p22=(1.0 - split2) * beta * channel.p2,
            beta=beta,
            gamma1=gamma1,
            gamma2=gamma2,
        )

    def with_gammas(self, gamma1: float, gamma2: float) -> "SignalingParams":
        return replace(self, gamma1=gamma1, gamma2=gamma2)


@dataclass(frozen=True)
class RateTuple:
    """Per-message rates in bits per real channel use (1/2 log2 convention)."""

    r11: float
    r12: float
    r21: float
    r22: float

    @property
    def total(self) -> float:
        return self.r11 + self.r12 + self.r21 + self.r22


def reinforcement_power(params: ChannelParams, sig: SignalingParams) -> float:
    """Power Tx2 spends repeating the known foreign encoding."""
    return (1.0 - sig.beta) * params.p2


def validate(params: ChannelParams, sig: SignalingParams) -> list[str]:
    """Return the list of violated invariants (empty means valid).

    Report style: never raises, never mutates.
    """
    problems: list[str] = []
    if not params.n1 > 0:
        problems.append(f"n1 must be positive, got {params.n1}")
    if not params.n2 > 0:
        problems.append(f"n2 must be positive, got {params.n2}")
    if params.p1 < 0 or params.p2 < 0:
        problems.append(f"power budgets must be nonnegative, got p1={params.p1}, p2={params.p2}")
    if params.antennas != 1:
        problems.append(f"antennas must be 1 for rate computations, got {params.antennas}")

    if not 0.0 < sig.beta <= 1.0:
        problems.append(f"beta out of range (0, 1], got {sig.beta}")
    for name in ("p11", "p12", "p21", "p22"):
        if getattr(sig, name) < 0:
            problems.append(f"{name} must be nonnegative, got {getattr(sig, name)}")

    slack1 = POWER_REL_TOL * max(params.p1, 1.0)
    if sig.p11 + sig.p12 > params.p1 + slack1:
        problems.append(
            f"Tx1 power overrun: p11+p12={sig.p11 + sig.p12} exceeds p1={params.p1}"
        )
    budget2 = sig.beta * params.p2
    slack2 = POWER_REL_TOL * max(params.p2, 1.0)
    if sig.p21 + sig.p22 > budget2 + slack2:
        problems.append(
            f"Tx2 power overrun: p21+p22={sig.p21 + sig.p22} exceeds beta*p2={budget2}"
        )

    if 0.0 < sig.beta < 1.0 and sig.p11 <= 0 and params.p2 > 0:
        problems.append("theta undefined: p11 must be positive when beta < 1")
    return problems


def require_valid(params: ChannelParams, sig: SignalingParams) -> None:
    problems = validate(params, sig)
    if problems:
        raise ParameterError("; ".join(problems))


def theta(params: ChannelParams, sig: SignalingParams) -> float:
    """Reinforcement gain seen at Rx1, alpha21 * sqrt((1-beta) p2 / p11).

    Zero whenever no power is diverted (beta == 1), even if p11 == 0.
    """
    reinf = reinforcement_power(params, sig)
    if reinf <= 0.0:
        return 0.0
    if sig.p11 <= 0.0:
        raise ParameterError("theta undefined: p11 must be positive when beta < 1")
    return params.alpha21 * math.sqrt(reinf / sig.p11)


def eta(params: ChannelParams, sig: SignalingParams) -> float:
    """Effective gain of the reinforced encoding at Rx2: alpha12 + theta."""
    return params.alpha12 + theta(params, sig)


def snr_to_power(snr_db: float, noise: float = 1.0) -> float:
    """Transmit power that realizes ``snr_db`` against the given noise floor."""
    if noise <= 0:
        raise ParameterError(f"noise must be positive, got {noise}")
    return noise * 10.0 ** (snr_db / 10.0)


def power_to_snr(power: float, noise: float = 1.0) -> float:
    """Inverse of :func:`snr_to_power` (dB)."""
    if noise <= 0:
        raise ParameterError(f"noise must be positive, got {noise}")
    if power <= 0:
        raise ParameterError(f"power must be positive, got {power}")
    return 10.0 * math.log10(power / noise)
