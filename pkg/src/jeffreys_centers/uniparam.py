"""Jeffreys-Fisher-Rao center for one-parameter exponential families.

The Fisher-Rao geometry of a uni-order family is Euclidean in the coordinate
h(theta) = int sqrt(f''(u)) du, so the JFR center is the h-quasi-arithmetic
midpoint of the two sided KL centroids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import DomainError, NumericalError

__all__ = ["ScalarGenerator", "h_of", "h_inverse", "jfr_center_1d"]

_QUAD_ABS_TOL = 1e-12


@dataclass(frozen=True)
class ScalarGenerator:
    """A scalar convex generator f with derivatives and an open domain.

    ``theta_ref`` anchors the lower limit of the h integral; the additive
    constant cancels in midpoints, so it only affects conditioning.
    """

    f: Callable[[float], float]
    f_prime: Callable[[float], float]
    f_second: Callable[[float], float]
    domain: Tuple[float, float]
    theta_ref: float

    def __post_init__(self):
        lo, hi = self.domain
        if not lo < self.theta_ref < hi:
            raise DomainError(f"theta_ref {self.theta_ref} outside domain ({lo}, {hi})")

    def require(self, theta: float) -> float:
        theta = float(theta)
        lo, hi = self.domain
        if not (lo < theta < hi) or not math.isfinite(theta):
            raise DomainError(f"theta {theta!r} outside domain ({lo}, {hi})")
        return theta


def h_of(gen: ScalarGenerator, theta: float) -> float:
    """h(theta) = int_{theta_ref}^{theta} sqrt(f''(u)) du by adaptive quadrature."""
    theta = gen.require(theta)
    val, err = quad(
        lambda u: math.sqrt(gen.f_second(u)),
        gen.theta_ref,
        theta,
        epsabs=_QUAD_ABS_TOL,
        epsrel=1e-12,
        limit=200,
    )
    if err > 1e-8 * max(1.0, abs(val)):
        raise NumericalError(f"h quadrature did not converge (err {err:.3g})")
    return val


def _grow_bracket(
    fun: Callable[[float], float],
    target: float,
    start: float,
    domain: Tuple[float, float],
) -> Tuple[float, float]:
    """Geometric bracket growth around ``start`` for fun(theta) = target."""
    lo, hi = domain
    step = max(1e-6, abs(start) * 1e-3)
    a = b = start
    fa = fb = fun(start) - target
    for _ in range(200):
        if fa <= 0.0 <= fb or fb <= 0.0 <= fa:
            return (a, b) if a <= b else (b, a)
        step *= 2.0
        if fa > 0.0:  # monotone increasing fun: move left
            a = max(a - step, lo + (start - lo) * 1e-15) if math.isfinite(lo) else a - step
            fa = fun(a) - target
        else:
            b = min(b + step, hi - (hi - start) * 1e-15) if math.isfinite(hi) else b + step
            fb = fun(b) - target
    raise NumericalError("bracket growth failed; target may be out of range")


def h_inverse(gen: ScalarGenerator, y: float) -> float:
    """Monotone inversion of h: the theta with h(theta) = y, to 1e-9."""
    if y == 0.0:
        return gen.theta_ref
    fun = lambda t: h_of(gen, t)
    a, b = _grow_bracket(fun, float(y), gen.theta_ref, gen.domain)
    if a == b:
        return a
    try:
        return float(brentq(lambda t: fun(t) - y, a, b, xtol=1e-12, rtol=8.9e-16))
    except ValueError as exc:
        raise NumericalError(f"h_inverse bracketing failed: {exc}") from exc


def _f_prime_inverse(gen: ScalarGenerator, target: float, hull: Tuple[float, float]) -> float:
    a, b = _grow_bracket(gen.f_prime, target, 0.5 * (hull[0] + hull[1]), gen.domain)
    if a == b:
        return a
    return float(brentq(lambda t: gen.f_prime(t) - target, a, b, xtol=1e-13, rtol=8.9e-16))


def jfr_center_1d(
    gen: ScalarGenerator,
    thetas: Sequence[float],
    weights: Optional[Sequence[float]] = None,
) -> float:
    """JFR center of scalar natural parameters: m_h of the sided KL centroids.

    theta_bar is the weighted arithmetic mean, theta_under the f'-quasi
    arithmetic mean (by bracketed root-finding), and the result is
    h^{-1}((h(theta_bar) + h(theta_under)) / 2), which lies between the two.
    """
    ts = np.atleast_1d(np.asarray(thetas, dtype=float))
    if ts.size == 0:
        raise DomainError("empty parameter set")
    for t in ts:
        gen.require(float(t))
    if weights is None:
        w = np.full(ts.size, 1.0 / ts.size)
    else:
        w = np.asarray(weights, dtype=float)
        if np.any(w <= 0.0) or abs(w.sum() - 1.0) > 1e-12:
            raise DomainError("weights must be strictly positive and sum to 1")
    theta_bar = float(w @ ts)
    hull = (float(ts.min()), float(ts.max()))
    theta_under = _f_prime_inverse(gen, float(w @ np.array([gen.f_prime(t) for t in ts])), hull)
    if abs(theta_bar - theta_under) < 1e-15:
        return theta_bar
    mid = 0.5 * (h_of(gen, theta_bar) + h_of(gen, theta_under))
    center = h_inverse(gen, mid)
    lo, hi = min(theta_bar, theta_under), max(theta_bar, theta_under)
    # betweenness can only be violated by root-finding noise
    return min(max(center, lo), hi)
