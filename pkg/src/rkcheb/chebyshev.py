"""Chebyshev polynomial recurrences and stabilized-scheme coefficients.

The stage coefficients of the first- and second-order schemes follow the
classical van der Houwen--Sommeijer construction: the one-step amplification
factor on y' = lambda*y is a shifted Chebyshev polynomial

    order 1:  R_s(z) = T_s(w0 + w1*z) / T_s(w0)
    order 2:  R_s(z) = a_s + b_s * T_s(w0 + w1*z)

with w0 = 1 + eps/s**2 and eps >= 0 a damping parameter.  The real-axis
stability bound is ell = (1 + w0)/w1, the point where w0 - w1*x reaches -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "ChebEval",
    "RkcCoefficients",
    "cheb_eval",
    "build_coefficients",
    "select_stage_count",
]


@dataclass(frozen=True)
class ChebEval:
    """T_j and its first two derivatives at a point."""

    value: float
    deriv: float
    deriv2: float
    degree: int
    argument: float


def cheb_eval(j: int, x: float) -> ChebEval:
    """Evaluate T_j(x), T_j'(x), T_j''(x) by simultaneous three-term recurrences.

    T_j = 2x T_{j-1} - T_{j-2}, with the differentiated recurrences
    T_j' = 2 T_{j-1} + 2x T_{j-1}' - T_{j-2}' and
    T_j'' = 4 T_{j-1}' + 2x T_{j-1}'' - T_{j-2}''.
    """
    if j < 0:
        raise ValueError(f"degree must be nonnegative, got {j}")
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x}")
    if j == 0:
        return ChebEval(1.0, 0.0, 0.0, 0, x)
    t_prev, t_cur = 1.0, x
    tp_prev, tp_cur = 0.0, 1.0
    tpp_prev, tpp_cur = 0.0, 0.0
    for _ in range(2, j + 1):
        t_next = 2.0 * x * t_cur - t_prev
        tp_next = 2.0 * t_cur + 2.0 * x * tp_cur - tp_prev
        tpp_next = 4.0 * tp_cur + 2.0 * x * tpp_cur - tpp_prev
        t_prev, t_cur = t_cur, t_next
        tp_prev, tp_cur = tp_cur, tp_next
        tpp_prev, tpp_cur = tpp_cur, tpp_next
    return ChebEval(t_cur, tp_cur, tpp_cur, j, x)


def _cheb_triplet_arrays(s: int, x: float):
    """T_j(x), T_j'(x), T_j''(x) for all j = 0..s as arrays."""
    t = np.empty(s + 1)
    tp = np.empty(s + 1)
    tpp = np.empty(s + 1)
    t[0], tp[0], tpp[0] = 1.0, 0.0, 0.0
    if s >= 1:
        t[1], tp[1], tpp[1] = x, 1.0, 0.0
    for j in range(2, s + 1):
        t[j] = 2.0 * x * t[j - 1] - t[j - 2]
        tp[j] = 2.0 * t[j - 1] + 2.0 * x * tp[j - 1] - tp[j - 2]
        tpp[j] = 4.0 * tp[j - 1] + 2.0 * x * tpp[j - 1] - tpp[j - 2]
    return t, tp, tpp


@dataclass(frozen=True)
class RkcCoefficients:
    """Stage coefficients of an s-stage stabilized scheme.

    Arrays are indexed by the stage subscript: ``mu[1]`` is the first-stage
    increment weight and ``mu[j]``, ``nu[j]``, ``kappa[j]``, ``gamma[j]``
    drive stage j for 2 <= j <= s (slot 0, and slot 1 of nu/kappa/gamma, are
    unused placeholders).  ``c[0..s]`` are the stage abscissae with c[0] = 0
    and c[s] = 1 exactly.  ``ell`` is the real-axis stability bound: the
    amplification factor satisfies |R_s(-x)| <= 1 for x in [0, ell].

    ``a_stab``/``b_stab`` give the closed form of the amplification factor,
    R_s(z) = a_stab + b_stab * T_s(w0 + w1*z), for both orders.
    """

    order: int
    s: int
    eps: float
    mu: np.ndarray
    nu: np.ndarray
    kappa: np.ndarray
    gamma: np.ndarray
    c: np.ndarray
    ell: float
    w0: float
    w1: float
    a_stab: float
    b_stab: float


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def build_coefficients(order: int, s: int, eps: float = 0.05) -> RkcCoefficients:
    """Construct the coefficient set for the given order, stage count and damping.

    Args:
        order: 1 or 2.
        s: number of stages (>= 1; the second-order scheme needs >= 2).
        eps: nonnegative damping parameter; eps = 0 gives the undamped
            scheme with ell = 2 s**2 (order 1) or 2 (s**2 - 1)/3 (order 2).

    Returns:
        An immutable :class:`RkcCoefficients`.  Results are memoized, so
        per-step rebuilding inside the drivers is free.
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    if s < 1:
        raise ValueError(f"stage count must be positive, got {s}")
    if order == 2 and s < 2:
        raise ValueError("the second-order scheme needs at least 2 stages")
    if eps < 0:
        raise ValueError(f"damping must be nonnegative, got {eps}")

    w0 = 1.0 + eps / (s * s)
    t, tp, tpp = _cheb_triplet_arrays(s, w0)

    mu = np.zeros(s + 1)
    nu = np.zeros(s + 1)
    kappa = np.zeros(s + 1)
    gamma = np.zeros(s + 1)
    c = np.zeros(s + 1)

    if order == 1:
        w1 = t[s] / tp[s]
        # b_j = 1/T_j(w0); only the ratios appear below
        mu[1] = w1 / w0
        for j in range(2, s + 1):
            nu[j] = 2.0 * w0 * t[j - 1] / t[j]
            kappa[j] = -t[j - 2] / t[j]
            mu[j] = 2.0 * w1 * t[j - 1] / t[j]
        for j in range(1, s + 1):
            c[j] = w1 * tp[j] / t[j]
        a_stab = 0.0
        b_stab = 1.0 / t[s]
    else:
        w1 = tp[s] / tpp[s]
        b = np.empty(s + 1)
        b[2] = tpp[2] / tp[2] ** 2
        b[0] = b[1] = b[2]
        for j in range(3, s + 1):
            b[j] = tpp[j] / tp[j] ** 2
        a = 1.0 - b * t
        mu[1] = b[1] * w1
        for j in range(2, s + 1):
            nu[j] = 2.0 * w0 * b[j] / b[j - 1]
            kappa[j] = -b[j] / b[j - 2]
            mu[j] = 2.0 * w1 * b[j] / b[j - 1]
            gamma[j] = -a[j - 1] * mu[j]
        for j in range(2, s + 1):
            c[j] = w1 * tpp[j] / tp[j]
        c[1] = c[2] / 4.0
        a_stab = float(a[s])
        b_stab = float(b[s])

    c[0] = 0.0
    c[s] = 1.0  # exact endpoint; the interlaced loop relies on c_s = d_m = 1
    if np.any(np.diff(c) <= 0.0):
        raise ValueError(
            f"abscissae not strictly increasing for order={order}, s={s}, eps={eps}"
        )

    ell = (1.0 + w0) / w1
    return RkcCoefficients(
        order=order,
        s=s,
        eps=eps,
        mu=_freeze(mu),
        nu=_freeze(nu),
        kappa=_freeze(kappa),
        gamma=_freeze(gamma),
        c=_freeze(c),
        ell=float(ell),
        w0=float(w0),
        w1=float(w1),
        a_stab=a_stab,
        b_stab=b_stab,
    )


@lru_cache(maxsize=None)
def select_stage_count(order: int, tau_rho: float, eps: float = 0.05) -> int:
    """Smallest stage count whose stability bound covers tau_rho.

    Args:
        order: 1 or 2.
        tau_rho: product of step size and spectral radius (>= 0).
        eps: damping parameter, forwarded to :func:`build_coefficients`.

    Returns:
        The smallest s (>= 1, and >= 2 for order 2) with
        tau_rho <= build_coefficients(order, s, eps).ell.
    """
    if tau_rho < 0 or not math.isfinite(tau_rho):
        raise ValueError(f"tau*rho must be finite and nonnegative, got {tau_rho}")
    s_min = 1 if order == 1 else 2

    def bound(s: int) -> float:
        return build_coefficients(order, s, eps).ell

    if tau_rho <= bound(s_min):
        return s_min
    hi = s_min
    while bound(hi) < tau_rho:
        hi *= 2
    lo = hi // 2 + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if bound(mid) >= tau_rho:
            hi = mid
        else:
            lo = mid + 1
    # guard against local non-monotonicity of the damped bound
    while lo > s_min and bound(lo - 1) >= tau_rho:
        lo -= 1
    return lo
