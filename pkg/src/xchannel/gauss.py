"""Exact mutual information between jointly Gaussian signal components.

The signaling scheme is a linear map from six independent base variables
(four message components U11, U12, U21, U22 and the two receiver noises)
to the six observables Theta = (M11, M21, M12, M22, Y1, Y2).  Every rate
bound downstream is a combination of log-determinants of submatrices of
E[Theta Theta^T], so this module owns the covariance assembly and a careful
determinant routine.

Conventions baked into the map (see also the closed forms in
:mod:`xchannel.bounds`, which must agree with this covariance to 1e-9):

* theta = alpha21 * sqrt((1-beta) p2 / p11) is the extra gain the reinforced
  encoding enjoys at Rx1, eta = alpha12 + theta its effective gain at Rx2.
* The cross-aware encoding at Tx2 pre-cancels the interference it sees at
  Rx2, i.e. M22 = U22 + gamma2 * (U21 + eta * U11).  Using eta here (rather
  than the bare cross gain) is what makes the textbook dirty-paper
  coefficient gamma2 = p22/(p22+n2) minimize the Rx2 denominator exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import model

LABELS: tuple[str, ...] = ("M11", "M21", "M12", "M22", "Y1", "Y2")
BASE_LABELS: tuple[str, ...] = ("U11", "U12", "U21", "U22", "N1", "N2")

_LOG2 = math.log(2.0)
#: Cholesky pivots below this fraction of the submatrix trace raise
PIVOT_REL_TOL = 1e-12
#: roundoff window inside which a negative MI is clamped to zero
MI_CLAMP_TOL = 1e-9


class SingularCovarianceError(ArithmeticError):
    """A required determinant is not positive: degenerate parameter point."""


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Coefficients of Theta (rows) over the base variables (columns)."""

    coefficients: np.ndarray
    base_variances: np.ndarray
    # transmit-signal rows kept for diagnostics only
    x1_row: np.ndarray
    x2_row: np.ndarray


@dataclass(frozen=True, eq=False)
class JointCovariance:
    """6x6 covariance of (M11, M21, M12, M22, Y1, Y2), power units."""

    sigma: np.ndarray
    labels: tuple[str, ...] = field(default=LABELS)

    def var(self, label: str) -> float:
        i = self.labels.index(label)
        return float(self.sigma[i, i])


def covariance_violations(cov: JointCovariance, n1: float, n2: float) -> list[str]:
    """Invariant report for an assembled covariance (empty means healthy)."""
    problems: list[str] = []
    s = cov.sigma
    scale = max(float(np.abs(s).max()), 1.0)
    if float(np.abs(s - s.T).max()) > 1e-12 * scale:
        problems.append("covariance is not symmetric")
    trace = float(np.trace(s))
    if float(np.linalg.eigvalsh(s).min()) < -1e-9 * trace:
        problems.append("covariance is not positive semidefinite")
    if cov.var("Y1") < n1 * (1.0 - 1e-12):
        problems.append("Var(Y1) fell below the Rx1 noise floor")
    if cov.var("Y2") < n2 * (1.0 - 1e-12):
        problems.append("Var(Y2) fell below the Rx2 noise floor")
    return problems


def assemble(
    params: model.ChannelParams, sig: model.SignalingParams
) -> tuple[LinearMap, JointCovariance]:
    """Build the signaling linear map and the covariance of Theta."""
    model.require_valid(params, sig)
    th = model.theta(params, sig)
    ef = params.alpha12 + th
    reinf = model.reinforcement_power(params, sig)
    coeff_reinf = math.sqrt(reinf / sig.p11) if reinf > 0.0 else 0.0

    a12, a21 = params.alpha12, params.alpha21
    g1, g2 = sig.gamma1, sig.gamma2
    rows = [
        [1.0, g1, 0.0, 0.0, 0.0, 0.0],        # M11 = U11 + g1 U12
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],       # M21 = U21
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],       # M12 = U12
        [g2 * ef, 0.0, g2, 1.0, 0.0, 0.0],    # M22 = U22 + g2 (U21 + eta U11)
        [1.0 + th, 1.0, a21, a21, 1.0, 0.0],  # Y1
        [ef, a12, 1.0, 1.0, 0.0, 1.0],        # Y2
    ]
    base = [sig.p11, sig.p12, sig.p21, sig.p22, params.n1, params.n2]

    a = np.array(rows, dtype=float)
    v = np.array(base, dtype=float)
    sigma = (a * v) @ a.T
    sigma = 0.5 * (sigma + sigma.T)

    lin = LinearMap(
        coefficients=_frozen_array(a),
        base_variances=_frozen_array(v),
        x1_row=_frozen_array([1.0, 1.0, 0.0, 0.0, 0.0, 0.0]),
        x2_row=_frozen_array([coeff_reinf, 0.0, 1.0, 1.0, 0.0, 0.0]),
    )
    cov = JointCovariance(sigma=_frozen_array(sigma))
    problems = covariance_violations(cov, params.n1, params.n2)
    if problems:
        raise SingularCovarianceError("; ".join(problems))
    return lin, cov


def _as_indices(cov: JointCovariance, items: Iterable[int | str]) -> tuple[int, ...]:
    out = []
    for it in items:
        out.append(cov.labels.index(it) if isinstance(it, str) else int(it))
    return tuple(sorted(set(out)))


def _cholesky_logdet(m: np.ndarray) -> float:
    """log det of a small SPD matrix via Cholesky with a pivot threshold.

    Pivots at or below PIVOT_REL_TOL * trace are treated as singular rather
    than silently clamped: rate bounds subtract these log-determinants, so a
    wrong one corrupts the bound without any other symptom.
    """
    k = m.shape[0]
    if k == 0:
        return 0.0
    tol = PIVOT_REL_TOL * float(np.trace(m))
    low = np.zeros_like(m)
    acc = 0.0
    for j in range(k):
        pivot = m[j, j] - float(low[j, :j] @ low[j, :j])
        if pivot <= tol:
            raise SingularCovarianceError(
                f"nonpositive pivot {pivot:.3e} at position {j} (tol {tol:.3e})"
            )
        low[j, j] = math.sqrt(pivot)
        acc += math.log(pivot)
        for i in range(j + 1, k):
            low[i, j] = (m[i, j] - float(low[i, :j] @ low[j, :j])) / low[j, j]
    return acc


def _logdet(cov: JointCovariance, idx: Sequence[int]) -> float:
    """log det of the submatrix, dropping zero-variance (deterministic) rows.

    A component with exactly zero variance is almost surely constant and
    carries no information; dropping it is the exact limiting value, which is
    what keeps degenerate sweeps (e.g. no cross messages) well defined.
    """
    live = [i for i in idx if cov.sigma[i, i] > 0.0]
    if not live:
        return 0.0
    sub = cov.sigma[np.ix_(live, live)]
    return _cholesky_logdet(sub)


def _finish(value_nats: float) -> float:
    bits = value_nats / (2.0 * _LOG2)
    if bits < -MI_CLAMP_TOL:
        raise SingularCovarianceError(
            f"mutual information evaluated to {bits:.3e} bits; "
            "covariance is numerically inconsistent"
        )
    return max(bits, 0.0)


def mutual_information(
    cov: JointCovariance, a: Iterable[int | str], b: Iterable[int | str]
) -> float:
    """I(A; B) in bits, via 0.5 log2(det S_A det S_B / det S_{A u B})."""
    ia, ib = _as_indices(cov, a), _as_indices(cov, b)
    if not ia or not ib:
        raise ValueError("index sets must be nonempty")
    if set(ia) & set(ib):
        raise ValueError(f"index sets must be disjoint, got {ia} and {ib}")
    nats = _logdet(cov, ia) + _logdet(cov, ib) - _logdet(cov, tuple(sorted(ia + ib)))
    return _finish(nats)


def conditional_mutual_information(
    cov: JointCovariance,
    a: Iterable[int | str],
    b: Iterable[int | str],
    c: Iterable[int | str] = (),
) -> float:
    """I(A; B | C) in bits, computed in one log-determinant pass.

    Empty C reduces to plain mutual information.
    """
    ia, ib, ic = _as_indices(cov, a), _as_indices(cov, b), _as_indices(cov, c)
    if not ia or not ib:
        raise ValueError("index sets must be nonempty")
    for x, y in ((ia, ib), (ia, ic), (ib, ic)):
        if set(x) & set(y):
            raise ValueError("index sets must be pairwise disjoint")
    nats = (
        _logdet(cov, tuple(sorted(ia + ic)))
        + _logdet(cov, tuple(sorted(ib + ic)))
        - _logdet(cov, ic)
        - _logdet(cov, tuple(sorted(ia + ib + ic)))
    )
    return _finish(nats)
