"""Small deterministic scalar/simplex maximizers used for DPC parameter checks."""
from __future__ import annotations

import math
from typing import Callable, Sequence

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-7,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Maximize a unimodal function on [lo, hi]; returns (argmax, value)."""
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    it = 0
    while abs(b - a) > tol and it < max_iter:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
        it += 1
    x = 0.5 * (a + b)
    return x, fn(x)


def nelder_mead_max(
    fn: Callable[[Sequence[float]], float],
    start: Sequence[float],
    step: float = 0.25,
    tol: float = 1e-10,
    max_iter: int = 500,
) -> tuple[list[float], float]:
    """Derivative-free local maximization; returns the best point ever seen.

    Plain Nelder-Mead on -fn with reflection/expansion/contraction/shrink
    coefficients (1, 2, 0.5, 0.5).  Deterministic for a fixed start.
    """
    n = len(start)
    simplex = [list(map(float, start))]
    for i in range(n):
        p = list(map(float, start))
        p[i] += step
        simplex.append(p)
    values = [fn(p) for p in simplex]
    best_p, best_v = list(simplex[0]), values[0]
    for p, v in zip(simplex, values):
        if v > best_v:
            best_p, best_v = list(p), v

    for _ in range(max_iter):
        order = sorted(range(n + 1), key=lambda i: -values[i])
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        if values[0] > best_v:
            best_p, best_v = list(simplex[0]), values[0]
        if abs(values[0] - values[-1]) < tol:
            break
        centroid = [sum(p[i] for p in simplex[:-1]) / n for i in range(n)]
        worst = simplex[-1]

        def at(coef: float) -> list[float]:
            return [centroid[i] + coef * (centroid[i] - worst[i]) for i in range(n)]

        refl = at(1.0)
        f_refl = fn(refl)
        if f_refl > values[0]:
            exp = at(2.0)
            f_exp = fn(exp)
            if f_exp > f_refl:
                simplex[-1], values[-1] = exp, f_exp
            else:
                simplex[-1], values[-1] = refl, f_refl
        elif f_refl > values[-2]:
            simplex[-1], values[-1] = refl, f_refl
        else:
            contr = at(-0.5)
            f_contr = fn(contr)
            if f_contr > values[-1]:
                simplex[-1], values[-1] = contr, f_contr
            else:
                for i in range(1, n + 1):
                    simplex[i] = [
                        0.5 * (simplex[i][j] + simplex[0][j]) for j in range(n)
                    ]
                    values[i] = fn(simplex[i])
    for p, v in zip(simplex, values):
        if v > best_v:
            best_p, best_v = list(p), v
    return best_p, best_v
