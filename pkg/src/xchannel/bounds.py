"""The six achievable-rate constraints and their closed forms.

Two independent evaluation routes are kept side by side on purpose:

* :func:`achievable_bounds` (and the vectorized :func:`sum_bounds_batch`)
  evaluate mutual-information combinations on the assembled covariance.
* :func:`r1_closed_form` / :func:`r2_closed_form` are explicit rational
  expressions of the same two sum bounds.

Their agreement to 1e-9 bits across random parameter draws is the main
correctness gate of the package (``xchannel verify`` / the acceptance suite).

The Rx1 denominator is quadratic in gamma1 and its minimizer is the
closed-form :func:`gamma1_star`; substituting it collapses the bound to
:func:`r1_star_closed_form` (a neat cancellation leaves the residual
interference plus noise alone in the denominator).  The Rx2 denominator is
quadratic in gamma2 with vertex exactly p22/(p22+n2), independent of every
other parameter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gauss, model, optimize

_M11, _M21, _M12, _M22, _Y1, _Y2 = range(6)

#: search interval for the numeric gamma checks; optima live in [0, 1]
GAMMA_SEARCH_RANGE = (-2.0, 2.0)


class ClosedFormDomainError(ValueError):
    """The closed-form log argument is nonpositive (gamma far out of range)."""


@dataclass(frozen=True)
class RateBounds:
    """The six rate constraints at one parameter point, in bits.

    Fields are clamped at zero; ``raw`` keeps the pre-clamp values of all six
    (order b11, b21, b_sum1, b12, b22, b_sum2) for closed-form cross-checks.
    """

    b11: float
    b21: float
    b_sum1: float
    b12: float
    b22: float
    b_sum2: float
    raw: tuple[float, float, float, float, float, float]


def achievable_bounds(
    params: model.ChannelParams, sig: model.SignalingParams
) -> RateBounds:
    """Evaluate the six constraints from the assembled covariance."""
    _, cov = gauss.assemble(params, sig)
    mi = gauss.mutual_information
    cmi = gauss.conditional_mutual_information

    pen1 = mi(cov, [_M11], [_M12])
    pen2 = mi(cov, [_M22], [_M11, _M21])
    raw = (
        cmi(cov, [_M11], [_Y1], [_M21]) - pen1,
        cmi(cov, [_M21], [_Y1], [_M11]),
        mi(cov, [_M11, _M21], [_Y1]) - pen1,
        cmi(cov, [_M12], [_Y2], [_M22]),
        cmi(cov, [_M22], [_Y2], [_M12]) - pen2,
        mi(cov, [_M12, _M22], [_Y2]) - pen2,
    )
    clamped = tuple(max(x, 0.0) for x in raw)
    return RateBounds(*clamped, raw=raw)


def corner_rates(rb: RateBounds) -> model.RateTuple:
    """A per-message split achieving both sum bounds simultaneously.

    The direct rates take as much of each sum bound as their individual
    constraints allow; the cross rates carry the remainder (feasible because
    the encodings entering each decoder are independent).
    """
    r11 = min(rb.b11, rb.b_sum1)
    r21 = min(rb.b21, rb.b_sum1 - r11)
    r22 = min(rb.b22, rb.b_sum2)
    r12 = min(rb.b12, rb.b_sum2 - r22)
    return model.RateTuple(r11=r11, r12=r12, r21=r21, r22=r22)


# ---------------------------------------------------------------------------
# closed forms


def gamma1_star(params: model.ChannelParams, sig: model.SignalingParams) -> float:
    """DPC coefficient maximizing the Rx1 sum bound over gamma1."""
    if sig.p11 <= 0:
        raise model.ParameterError("gamma1_star requires p11 > 0")
    th = model.theta(params, sig)
    k = sig.p11 * (1.0 + th) ** 2 + params.alpha21**2 * sig.p22 + params.n1
    return sig.p11 * (1.0 + th) / k


def gamma2_star(params: model.ChannelParams, sig: model.SignalingParams) -> float:
    """DPC coefficient minimizing the Rx2 denominator quadratic in gamma2.

    The textbook dirty-paper coefficient p22/(p22+n2); it does not strictly
    maximize the Rx2 bound but is asymptotically optimal at high SNR.
    """
    if sig.p22 + params.n2 <= 0:
        raise model.ParameterError("gamma2_star requires p22 + n2 > 0")
    return sig.p22 / (sig.p22 + params.n2)


def with_star_gammas(
    params: model.ChannelParams, sig: model.SignalingParams
) -> model.SignalingParams:
    g1 = gamma1_star(params, sig) if sig.p11 > 0 else 0.0
    return sig.with_gammas(g1, gamma2_star(params, sig))


def r1_closed_form(params: model.ChannelParams, sig: model.SignalingParams) -> float:
    """Rx1 sum bound (pre-clamp) as an explicit function of the parameters."""
    model.require_valid(params, sig)
    if sig.p11 <= 0:
        raise model.ParameterError("r1_closed_form requires p11 > 0")
    th = model.theta(params, sig)
    a21 = params.alpha21
    p11, p12, p21, p22, n1 = sig.p11, sig.p12, sig.p21, sig.p22, params.n1
    g1 = sig.gamma1
    s1 = p11 * (1.0 + th) ** 2 + p12 + a21**2 * (p21 + p22) + n1
    den = (
        g1**2 * p12 * (p11 * (1.0 + th) ** 2 + a21**2 * p22 + n1)
        - 2.0 * g1 * (1.0 + th) * p11 * p12
        + p11 * (p12 + a21**2 * p22 + n1)
    )
    arg = p11 * s1 / den if den > 0 else -1.0
    if arg <= 0:
        raise ClosedFormDomainError(f"Rx1 log argument nonpositive at gamma1={g1}")
    return 0.5 * math.log2(arg)


def r1_star_closed_form(
    params: model.ChannelParams, sig: model.SignalingParams
) -> float:
    """Rx1 sum bound with gamma1 already optimized out (gamma1_star inserted)."""
    model.require_valid(params, sig)
    if sig.p11 <= 0:
        raise model.ParameterError("r1_star_closed_form requires p11 > 0")
    th = model.theta(params, sig)
    a21 = params.alpha21
    p11, p12, p21, p22, n1 = sig.p11, sig.p12, sig.p21, sig.p22, params.n1
    s1 = p11 * (1.0 + th) ** 2 + p12 + a21**2 * (p21 + p22) + n1
    k = p11 * (1.0 + th) ** 2 + a21**2 * p22 + n1
    arg = s1 * k / ((a21**2 * p22 + n1) * (k + p12))
    if arg <= 0:
        raise ClosedFormDomainError("Rx1 optimized log argument nonpositive")
    return 0.5 * math.log2(arg)


def r2_denominator(
    params: model.ChannelParams, sig: model.SignalingParams, gamma2: float
) -> float:
    """The gamma2-dependent factor of the Rx2 closed-form denominator.

    Quadratic in gamma2 with positive leading coefficient; its vertex is
    gamma2_star exactly.
    """
    th = model.theta(params, sig)
    ef = params.alpha12 + th
    w = ef**2 * sig.p11 + sig.p21
    p22, n2 = sig.p22, params.n2
    return gamma2**2 * w * (p22 + n2) - 2.0 * gamma2 * p22 * w + p22 * (w + n2)


def r2_closed_form(params: model.ChannelParams, sig: model.SignalingParams) -> float:
    """Rx2 sum bound (pre-clamp) as an explicit function of the parameters."""
    model.require_valid(params, sig)
    if sig.p11 <= 0:
        raise model.ParameterError("r2_closed_form requires p11 > 0")
    th = model.theta(params, sig)
    ef = params.alpha12 + th
    a12 = params.alpha12
    p11, p12, p21, p22, n2 = sig.p11, sig.p12, sig.p21, sig.p22, params.n2
    g1, g2 = sig.gamma1, sig.gamma2
    s2 = ef**2 * p11 + a12**2 * p12 + p21 + p22 + n2
    num = s2 * (p11 * p22 + g1**2 * p12 * (p22 + g2**2 * ef**2 * p11))
    den = (p11 + g1**2 * p12) * r2_denominator(params, sig, g2)
    arg = num / den if den > 0 else -1.0
    if arg <= 0:
        raise ClosedFormDomainError(f"Rx2 log argument nonpositive at gamma2={g2}")
    return 0.5 * math.log2(arg)


def joint_gamma_search(
    params: model.ChannelParams,
    sig: model.SignalingParams,
    tol: float = 1e-10,
) -> model.SignalingParams:
    """Locally maximize the total of both sum bounds over (gamma1, gamma2).

    Optional refinement over the default closed-form choices; starts from
    (gamma1_star, gamma2_star) and never returns anything worse.  Mostly
    useful at low SNR.
    """
    if sig.p11 <= 0 or sig.p22 <= 0:
        # boundary configurations leave nothing to tune jointly
        return with_star_gammas(params, sig)
    start = with_star_gammas(params, sig)

    def objective(g: list[float]) -> float:
        cand = sig.with_gammas(g[0], g[1])
        try:
            return r1_closed_form(params, cand) + r2_closed_form(params, cand)
        except ClosedFormDomainError:
            return -math.inf

    best, _ = optimize.nelder_mead_max(
        objective, [start.gamma1, start.gamma2], step=0.1, tol=tol
    )
    improved = sig.with_gammas(best[0], best[1])
    if objective([improved.gamma1, improved.gamma2]) >= objective(
        [start.gamma1, start.gamma2]
    ):
        return improved
    return start


# ---------------------------------------------------------------------------
# vectorized covariance-route evaluation (grids, sweeps, property suites)


def assemble_batch(
    alpha12: float | np.ndarray,
    alpha21: float | np.ndarray,
    n1: float | np.ndarray,
    n2: float | np.ndarray,
    p11: np.ndarray,
    p12: np.ndarray,
    p21: np.ndarray,
    p22: np.ndarray,
    reinforce: np.ndarray,
    gamma1: np.ndarray,
    gamma2: np.ndarray,
) -> np.ndarray:
    """Stacked 6x6 covariances for many parameter points at once.

    Channel quantities may be scalars (one channel, many signaling points)
    or arrays aligned with the power arrays.
    """
    n = p11.shape[0]
    alpha12, alpha21, n1v, n2v = (
        np.broadcast_to(np.asarray(x, float), p11.shape)
        for x in (alpha12, alpha21, n1, n2)
    )
    if np.any((reinforce > 0) & (p11 <= 0)):
        raise model.ParameterError("theta undefined: p11 must be positive when beta < 1")
    ratio = np.where(p11 > 0, reinforce / np.where(p11 > 0, p11, 1.0), 0.0)
    th = alpha21 * np.sqrt(ratio)
    ef = alpha12 + th

    a = np.zeros((n, 6, 6))
    a[:, _M11, 0] = 1.0
    a[:, _M11, 1] = gamma1
    a[:, _M21, 2] = 1.0
    a[:, _M12, 1] = 1.0
    a[:, _M22, 0] = gamma2 * ef
    a[:, _M22, 2] = gamma2
    a[:, _M22, 3] = 1.0
    a[:, _Y1, 0] = 1.0 + th
    a[:, _Y1, 1] = 1.0
    a[:, _Y1, 2] = alpha21
    a[:, _Y1, 3] = alpha21
    a[:, _Y1, 4] = 1.0
    a[:, _Y2, 0] = ef
    a[:, _Y2, 1] = alpha12
    a[:, _Y2, 2] = 1.0
    a[:, _Y2, 3] = 1.0
    a[:, _Y2, 5] = 1.0
    v = np.stack([p11, p12, p21, p22, n1v, n2v], axis=1)
    return np.einsum("nik,nk,njk->nij", a, v, a)


def _logdet_batch(sigma: np.ndarray, idx: tuple[int, ...]) -> np.ndarray:
    """Batched log det of one index set, zero-variance components dropped.

    The zero pattern is constant within each call because callers group
    points by it first.
    """
    if not idx:
        return np.zeros(sigma.shape[0])
    sub = sigma[:, idx][:, :, idx]
    sign, ld = np.linalg.slogdet(sub)
    if np.any(sign <= 0):
        exc = gauss.SingularCovarianceError(
            f"nonpositive determinant for components {idx}"
        )
        exc.local_index = int(np.argmax(sign <= 0))
        raise exc
    return ld


def sum_bounds_batch(
    alpha12: float | np.ndarray,
    alpha21: float | np.ndarray,
    n1: float | np.ndarray,
    n2: float | np.ndarray,
    p11: np.ndarray,
    p12: np.ndarray,
    p21: np.ndarray,
    p22: np.ndarray,
    reinforce: np.ndarray,
    gamma1: np.ndarray | None = None,
    gamma2: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Pre-clamp (Rx1 sum bound, Rx2 sum bound) for many points, in bits.

    Covariance route (slogdet), vectorized; gammas default to the starred
    closed-form choices.  Points are grouped by their pattern of exactly-zero
    component variances so pruning stays exact.
    """
    p11 = np.asarray(p11, float)
    p12 = np.asarray(p12, float)
    p21 = np.asarray(p21, float)
    p22 = np.asarray(p22, float)
    reinforce = np.broadcast_to(np.asarray(reinforce, float), p11.shape)
    a21v = np.broadcast_to(np.asarray(alpha21, float), p11.shape)
    n1v = np.broadcast_to(np.asarray(n1, float), p11.shape)
    n2v = np.broadcast_to(np.asarray(n2, float), p11.shape)

    ratio = np.where(p11 > 0, reinforce / np.where(p11 > 0, p11, 1.0), 0.0)
    th = a21v * np.sqrt(ratio)
    if gamma1 is None:
        k = p11 * (1.0 + th) ** 2 + a21v**2 * p22 + n1v
        gamma1 = np.where(p11 > 0, p11 * (1.0 + th) / k, 0.0)
    else:
        gamma1 = np.broadcast_to(np.asarray(gamma1, float), p11.shape)
    if gamma2 is None:
        gamma2 = p22 / (p22 + n2v)
    else:
        gamma2 = np.broadcast_to(np.asarray(gamma2, float), p11.shape)

    sigma = assemble_batch(
        alpha12, alpha21, n1, n2, p11, p12, p21, p22, reinforce, gamma1, gamma2
    )
    npts = p11.shape[0]
    diag = sigma[:, np.arange(6), np.arange(6)]
    alive = diag > 0.0  # noise rows are always alive

    raw1 = np.empty(npts)
    raw2 = np.empty(npts)
    patterns = alive[:, :4]
    # group points sharing a zero pattern; prune sets once per group
    codes = patterns @ (1 << np.arange(4))
    for code in np.unique(codes):
        mask = codes == code
        sub = sigma[mask]
        keep = {i for i in range(4) if (code >> i) & 1} | {_Y1, _Y2}

        def prune(idx: tuple[int, ...]) -> tuple[int, ...]:
            return tuple(i for i in idx if i in keep)

        def mi(a: tuple[int, ...], b: tuple[int, ...]) -> np.ndarray:
            pa, pb = prune(a), prune(b)
            if not pa or not pb:
                return np.zeros(sub.shape[0])
            pab = tuple(sorted(pa + pb))
            return (
                _logdet_batch(sub, pa)
                + _logdet_batch(sub, pb)
                - _logdet_batch(sub, pab)
            ) / (2.0 * math.log(2.0))

        try:
            raw1[mask] = mi((_M11, _M21), (_Y1,)) - mi((_M11,), (_M12,))
            raw2[mask] = mi((_M12, _M22), (_Y2,)) - mi((_M22,), (_M11, _M21))
        except gauss.SingularCovarianceError as exc:
            g = int(np.where(mask)[0][getattr(exc, "local_index", 0)])
            raise gauss.SingularCovarianceError(
                f"{exc} at parameter point p11={p11[g]:.6g} p12={p12[g]:.6g} "
                f"p21={p21[g]:.6g} p22={p22[g]:.6g} reinforce={reinforce[g]:.6g} "
                f"gamma1={gamma1[g]:.6g} gamma2={gamma2[g]:.6g}"
            ) from None
    return raw1, raw2
