"""Achievable rate regions and high-SNR sum-rate scaling for Gaussian
X-channels in which one transmitter knows one of the other's messages.

Layout:

* :mod:`xchannel.model`     parameter records, validation, SNR conversions
* :mod:`xchannel.gauss`     covariance assembly and Gaussian mutual information
* :mod:`xchannel.bounds`    the six rate constraints, closed forms, DPC choices
* :mod:`xchannel.regions`   frontier sweeps and outer-bound references
* :mod:`xchannel.scaling`   multiplexing-gain (slope) estimation
* :mod:`xchannel.selfcheck` seeded verification suites
* :mod:`xchannel.cli`       the ``xchannel`` command
"""
from .model import (
    ChannelParams,
    ParameterError,
    RateTuple,
    SignalingParams,
    eta,
    power_to_snr,
    snr_to_power,
    theta,
    validate,
)
from .gauss import (
    JointCovariance,
    LinearMap,
    SingularCovarianceError,
    assemble,
    conditional_mutual_information,
    mutual_information,
)
from .bounds import (
    RateBounds,
    achievable_bounds,
    gamma1_star,
    gamma2_star,
    r1_closed_form,
    r1_star_closed_form,
    r2_closed_form,
    with_star_gammas,
)
from .regions import (
    ChannelKind,
    RegionFrontier,
    SweepGrid,
    bc_outer_dual_mac,
    cooperative_outer,
    sweep_cognitive_ic,
    sweep_cognitive_x,
)
from .scaling import SlopeEstimate, estimate_slope, reference_lines

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "SignalingParams",
    "RateTuple",
    "ParameterError",
    "validate",
    "theta",
    "eta",
    "snr_to_power",
    "power_to_snr",
    "LinearMap",
    "JointCovariance",
    "SingularCovarianceError",
    "assemble",
    "mutual_information",
    "conditional_mutual_information",
    "RateBounds",
    "achievable_bounds",
    "gamma1_star",
    "gamma2_star",
    "with_star_gammas",
    "r1_closed_form",
    "r1_star_closed_form",
    "r2_closed_form",
    "ChannelKind",
    "SweepGrid",
    "RegionFrontier",
    "sweep_cognitive_x",
    "sweep_cognitive_ic",
    "bc_outer_dual_mac",
    "cooperative_outer",
    "SlopeEstimate",
    "estimate_slope",
    "reference_lines",
    "__version__",
]
