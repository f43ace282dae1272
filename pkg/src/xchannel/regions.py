"""Rate-region frontiers: parameter sweeps and outer-bound references.

A sweep enumerates signaling configurations on a deterministic grid,
evaluates the achievable (R1, R2) pair at each (both DPC coefficients at
their closed-form choices unless asked otherwise) and keeps the Pareto
frontier.  Two reference regions are provided for comparison: the two-user
broadcast outer bound evaluated through its dual multiple-access form under a
sum power constraint, and the fully cooperative point-to-point sum capacity.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import bounds, model

#: dominance / tie tolerance used by the frontier filter, in bits
FRONTIER_TIE_TOL = 1e-12


class ChannelKind(str, enum.Enum):
    COGNITIVE_X = "cognitive_x"
    COGNITIVE_INTERFERENCE = "cognitive_interference"
    BC_OUTER_DUAL_MAC = "bc_outer_dual_mac"
    COOPERATIVE_OUTER = "cooperative_outer"


class EmptyFrontierError(RuntimeError):
    """Every grid point failed validation; nothing to trace."""


@dataclass(frozen=True)
class SweepGrid:
    """Resolution of the sweep over (p11/p1 split, beta, p21/(beta p2) split).

    Beta values are spaced geometrically toward 1 so the small-reinforcement
    corner is well resolved; the two power splits are linear in [0, 1].
    After the base pass the neighborhood of the max-sum-rate point is
    re-gridded ``refine_passes`` times at the same per-axis resolution.
    """

    n_power_split: int = 33
    n_beta: int = 17
    beta_min: float = 0.05
    refine_passes: int = 2
    bc_power_points: int = 513
    explicit_betas: tuple[float, ...] | None = None

    def beta_values(self) -> np.ndarray:
        if self.explicit_betas is not None:
            return np.array(sorted(set(self.explicit_betas)), dtype=float)
        if self.n_beta < 2:
            return np.array([1.0])
        tail = np.geomspace(1.0, 1e-3, self.n_beta - 1)
        weights = np.concatenate([tail, [0.0]])
        return 1.0 - (1.0 - self.beta_min) * weights

    def split_values(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n_power_split)


@dataclass(frozen=True)
class RegionFrontier:
    """Pareto-optimal (r1, r2) pairs, sorted by r1 ascending."""

    points: tuple[tuple[float, float], ...]
    config: dict
    channel_kind: ChannelKind

    @property
    def max_sum_rate(self) -> float:
        return max(r1 + r2 for r1, r2 in self.points)

    @property
    def max_r1_point(self) -> tuple[float, float]:
        return self.points[-1]

    @property
    def max_r2_point(self) -> tuple[float, float]:
        return self.points[0]

    def r2_envelope(self, r1: float) -> float:
        """Largest frontier r2 among points with r1 at least the given value."""
        best = -math.inf
        for p1, p2 in self.points:
            if p1 >= r1 - FRONTIER_TIE_TOL:
                best = max(best, p2)
        return best if best > -math.inf else 0.0


def pareto_frontier(r1: np.ndarray, r2: np.ndarray) -> list[tuple[float, float]]:
    """Weak-dominance filter; ties within FRONTIER_TIE_TOL break toward larger r1."""
    if len(r1) == 0:
        return []
    order = np.lexsort((-r2, -r1))
    kept: list[tuple[float, float]] = []
    best_r2 = -math.inf
    for i in order:
        if r2[i] > best_r2 + FRONTIER_TIE_TOL:
            kept.append((float(r1[i]), float(r2[i])))
            best_r2 = r2[i]
    kept.reverse()
    return kept


def point_dominated(
    point: tuple[float, float], frontier: RegionFrontier, tol: float = 1e-9
) -> bool:
    """True if some frontier point weakly dominates the given (r1, r2)."""
    return any(
        q1 >= point[0] - tol and q2 >= point[1] - tol for q1, q2 in frontier.points
    )


def frontier_dominates(
    larger: RegionFrontier, smaller: RegionFrontier, tol: float = 1e-9
) -> bool:
    """Every point of ``smaller`` is weakly dominated by a point of ``larger``."""
    return all(point_dominated(p, larger, tol) for p in smaller.points)


# ---------------------------------------------------------------------------
# achievable-region sweeps


def _evaluate_configs(
    params: model.ChannelParams,
    s1: np.ndarray,
    beta: np.ndarray,
    s2: np.ndarray,
    joint_search: bool,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Clamped (R1, R2) pairs for the valid meshed configurations.

    Returns (r1, r2, valid_mask); the rate arrays align with the masked mesh.
    """
    p11 = s1 * params.p1
    p12 = (1.0 - s1) * params.p1
    p21 = s2 * beta * params.p2
    p22 = (1.0 - s2) * beta * params.p2
    reinf = (1.0 - beta) * params.p2
    valid = ~((p11 <= 0) & (reinf > 0))
    if not np.any(valid):
        return np.empty(0), np.empty(0), valid
    p11, p12, p21, p22, reinf = (
        arr[valid] for arr in (p11, p12, p21, p22, reinf)
    )
    if joint_search:
        r1 = np.empty(p11.shape[0])
        r2 = np.empty(p11.shape[0])
        betas = beta[valid]
        for i in range(p11.shape[0]):
            sig = model.SignalingParams(
                p11=p11[i], p12=p12[i], p21=p21[i], p22=p22[i], beta=betas[i]
            )
            sig = bounds.joint_gamma_search(params, sig)
            rb = bounds.achievable_bounds(params, sig)
            r1[i], r2[i] = rb.b_sum1, rb.b_sum2
        return r1, r2, valid
    raw1, raw2 = bounds.sum_bounds_batch(
        params.alpha12, params.alpha21, params.n1, params.n2,
        p11, p12, p21, p22, reinf,
    )
    return np.maximum(raw1, 0.0), np.maximum(raw2, 0.0), valid


def _mesh(s1: np.ndarray, beta: np.ndarray, s2: np.ndarray):
    g1, gb, g2 = np.meshgrid(s1, beta, s2, indexing="ij")
    return g1.ravel(), gb.ravel(), g2.ravel()


def _refined_axis(values: np.ndarray, center: float, n: int) -> np.ndarray:
    """Same-resolution axis covering one coarse step either side of center."""
    values = np.sort(values)
    if len(values) < 2:
        return values
    j = int(np.argmin(np.abs(values - center)))
    lo = values[max(j - 1, 0)]
    hi = values[min(j + 1, len(values) - 1)]
    if hi <= lo:
        return values
    return np.linspace(lo, hi, n)


def _sweep(
    params: model.ChannelParams,
    grid: SweepGrid,
    s1_axis: np.ndarray,
    beta_axis: np.ndarray,
    s2_axis: np.ndarray,
    kind: ChannelKind,
    joint_search: bool,
) -> RegionFrontier:
    model.require_valid(
        params, model.SignalingParams(p11=params.p1, p12=0.0, p21=0.0, p22=params.p2)
    )
    if params.p1 <= 0 and params.p2 <= 0:
        return RegionFrontier(
            points=((0.0, 0.0),), config=asdict(grid), channel_kind=kind
        )

    all_r1: list[np.ndarray] = []
    all_r2: list[np.ndarray] = []
    axes = (s1_axis, beta_axis, s2_axis)
    meshed = _mesh(*axes)
    r1, r2, valid = _evaluate_configs(params, *meshed, joint_search)
    if r1.size == 0:
        raise EmptyFrontierError("every grid point failed validation")
    all_r1.append(r1)
    all_r2.append(r2)

    for _ in range(grid.refine_passes):
        s1v, bv, s2v = meshed
        i = int(np.argmax(r1 + r2))
        c1, cb, c2 = s1v[valid][i], bv[valid][i], s2v[valid][i]
        axes = (
            _refined_axis(axes[0], c1, len(s1_axis)),
            _refined_axis(axes[1], cb, len(beta_axis)),
            _refined_axis(axes[2], c2, len(s2_axis)),
        )
        meshed = _mesh(*axes)
        r1, r2, valid = _evaluate_configs(params, *meshed, joint_search)
        if r1.size == 0:
            break
        all_r1.append(r1)
        all_r2.append(r2)

    pts = pareto_frontier(np.concatenate(all_r1), np.concatenate(all_r2))
    if not pts:
        raise EmptyFrontierError("sweep produced no frontier points")
    return RegionFrontier(points=tuple(pts), config=asdict(grid), channel_kind=kind)


def sweep_cognitive_x(
    params: model.ChannelParams,
    grid: SweepGrid = SweepGrid(),
    joint_gamma_search: bool = False,
) -> RegionFrontier:
    """Frontier of the four-message scheme over the full sweep grid."""
    return _sweep(
        params,
        grid,
        grid.split_values(),
        grid.beta_values(),
        grid.split_values(),
        ChannelKind.COGNITIVE_X,
        joint_gamma_search,
    )


def sweep_cognitive_ic(
    params: model.ChannelParams,
    grid: SweepGrid = SweepGrid(),
    joint_gamma_search: bool = False,
) -> RegionFrontier:
    """Frontier with the cross messages disabled (p12 = p21 = 0).

    Same machinery restricted to the two direct messages, so R1 = R11 and
    R2 = R22; beta still trades Tx2's own power against reinforcement.
    """
    return _sweep(
        params,
        grid,
        np.array([1.0]),
        grid.beta_values(),
        np.array([0.0]),
        ChannelKind.COGNITIVE_INTERFERENCE,
        joint_gamma_search,
    )


# ---------------------------------------------------------------------------
# outer bounds


def bc_outer_dual_mac(
    params: model.ChannelParams,
    total_power: float | None = None,
    grid: SweepGrid = SweepGrid(),
) -> RegionFrontier:
    """Two-user broadcast outer bound via the dual MAC under sum power.

    User channels are the receive rows (1, alpha21) and (alpha12, 1),
    whitened by their noise floors.  For each power split on the grid the two
    decoding-order corner points of the MAC pentagon are collected and the
    Pareto frontier of the union is returned.  Default sum power is p1 + p2.
    """
    if params.antennas != 1:
        raise model.ParameterError("broadcast outer bound implemented for 1 antenna per node")
    if total_power is None:
        total_power = params.p1 + params.p2
    if total_power < 0:
        raise model.ParameterError(f"total power must be nonnegative, got {total_power}")

    g1_sq = (1.0 + params.alpha21**2) / params.n1
    g2_sq = (params.alpha12**2 + 1.0) / params.n2
    cross_sq = (params.alpha12 + params.alpha21) ** 2 / (params.n1 * params.n2)

    t = np.linspace(0.0, 1.0, grid.bc_power_points)
    q1 = t * total_power
    q2 = (1.0 - t) * total_power
    s1 = 0.5 * np.log2(1.0 + q1 * g1_sq)
    s2 = 0.5 * np.log2(1.0 + q2 * g2_sq)
    gram_det = (1.0 + q1 * g1_sq) * (1.0 + q2 * g2_sq) - q1 * q2 * cross_sq
    ssum = 0.5 * np.log2(gram_det)

    r1 = np.concatenate([s1, ssum - s2])
    r2 = np.concatenate([ssum - s1, s2])
    pts = pareto_frontier(r1, r2)
    return RegionFrontier(
        points=tuple(pts),
        config={**asdict(grid), "total_power": float(total_power)},
        channel_kind=ChannelKind.BC_OUTER_DUAL_MAC,
    )


def cooperative_outer(
    params: model.ChannelParams, total_power: float | None = None
) -> float:
    """Sum capacity of the fully cooperative 2x2 point-to-point channel.

    Water-filling over the squared singular values of the noise-whitened
    channel matrix [[1, alpha21], [alpha12, 1]]; upper-bounds the broadcast
    sum rate at the same total power.
    """
    if total_power is None:
        total_power = params.p1 + params.p2
    if total_power <= 0:
        return 0.0
    h = np.array([[1.0, params.alpha21], [params.alpha12, 1.0]])
    white = np.diag([1.0 / math.sqrt(params.n1), 1.0 / math.sqrt(params.n2)]) @ h
    gains = np.linalg.svd(white, compute_uv=False) ** 2
    gains = gains[gains > 1e-15 * max(float(gains.max()), 1.0)]
    # water level over the active modes
    k = len(gains)
    while k > 0:
        level = (total_power + np.sum(1.0 / gains[:k])) / k
        if level >= 1.0 / gains[k - 1]:
            break
        k -= 1
    powers = np.maximum(level - 1.0 / gains[:k], 0.0)
    return float(np.sum(0.5 * np.log2(1.0 + powers * gains[:k])))


# ---------------------------------------------------------------------------
# export


def tangent_slopes(frontier: RegionFrontier) -> list[float | None]:
    """Finite-difference dR2/dR1 along the frontier (diagnostic annotation).

    None marks a slope that cannot be resolved (r1 gap below roundoff).
    """
    pts = frontier.points
    if len(pts) == 1:
        return [0.0]
    out: list[float | None] = []
    for i in range(len(pts)):
        lo = max(i - 1, 0)
        hi = min(i + 1, len(pts) - 1)
        dr1 = pts[hi][0] - pts[lo][0]
        dr2 = pts[hi][1] - pts[lo][1]
        out.append(dr2 / dr1 if dr1 > 1e-15 else None)
    return out


def write_frontier_csv(frontier: RegionFrontier, path: str | Path) -> Path:
    """Stable CSV schema: header then one row per point, 17 significant digits."""
    path = Path(path)
    lines = ["r1_bits,r2_bits"]
    for r1, r2 in frontier.points:
        lines.append(f"{r1:.17g},{r2:.17g}")
    path.write_text("\n".join(lines) + "\n")
    return path


def write_frontier_json(
    frontier: RegionFrontier, path: str | Path, meta: dict | None = None
) -> Path:
    path = Path(path)
    payload = {
        "channel_kind": frontier.channel_kind.value,
        "config": frontier.config,
        "points": [
            {"r1_bits": r1, "r2_bits": r2, "tangent_slope": slope}
            for (r1, r2), slope in zip(frontier.points, tangent_slopes(frontier))
        ],
    }
    if meta:
        payload["meta"] = meta
    path.write_text(json.dumps(payload, indent=2) + "\n")
    return path
