"""Scalar special functions: principal Lambert W branch, complete elliptic
integral of the first kind, and the Gauss arithmetic-geometric mean.

The Lambert W implementation is a Halley iteration with a piecewise seed
(series near the branch point, log-based for large arguments).  K(u) is
evaluated by adaptive quadrature of its defining integral rather than by the
AGM, so the AGM can be tested against it without circularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, NumericalError

__all__ = ["ToleranceConfig", "lambert_w0", "elliptic_k", "scalar_agm"]

_NEG_INV_E = -math.exp(-1.0)


@dataclass(frozen=True)
class ToleranceConfig:
    """Stopping control for iterative routines.

    ``rel_tol`` doubles as the precision parameter of the double-sequence
    and bisection algorithms; ``max_iter`` caps every loop.
    """

    rel_tol: float = 1e-12
    max_iter: int = 100

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1.0):
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


DEFAULT_TOL = ToleranceConfig()


def _w0_seed(x: np.ndarray) -> np.ndarray:
    # Branch-point series for x near -1/e, log1p in the middle range,
    # two-term asymptotic expansion for large x.
    seed = np.empty_like(x)
    near = x < -0.25
    large = x > math.e
    mid = ~(near | large)
    if np.any(near):
        p = np.sqrt(2.0 * (math.e * x[near] + 1.0))
        seed[near] = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
    if np.any(mid):
        seed[mid] = np.log1p(x[mid])
    if np.any(large):
        l1 = np.log(x[large])
        seed[large] = l1 - np.log(l1)
    return seed


def lambert_w0(x, tol: ToleranceConfig = DEFAULT_TOL):
    """Principal branch W0 of the Lambert W function.

    Solves ``w * exp(w) = x`` for ``x >= -1/e`` with residual
    ``|w e^w - x| <= rel_tol * max(1, |x|)``.  Accepts scalars or arrays.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(~np.isfinite(arr)):
        raise DomainError("lambert_w0 requires finite input")
    if np.any(arr < _NEG_INV_E):
        raise DomainError(f"lambert_w0 requires x >= -1/e = {_NEG_INV_E!r}")

    w = _w0_seed(arr)
    at_branch = arr == _NEG_INV_E
    w[at_branch] = -1.0
    target = tol.rel_tol * np.maximum(1.0, np.abs(arr))
    active = ~at_branch
    for _ in range(tol.max_iter):
        ew = np.exp(w[active])
        f = w[active] * ew - arr[active]
        if np.all(np.abs(f) <= target[active]):
            break
        wp1 = w[active] + 1.0
        # Halley step; wp1 stays positive away from the branch point.
        denom = ew * wp1 - (w[active] + 2.0) * f / (2.0 * wp1)
        w[active] = w[active] - f / denom
    else:
        ew = np.exp(w[active])
        resid = np.abs(w[active] * ew - arr[active])
        if np.any(resid > target[active]):
            raise NumericalError("lambert_w0 failed to converge")
    return float(w[0]) if scalar else w


def elliptic_k(u: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Complete elliptic integral of the first kind, K(u) with modulus u.

    K(u) = int_0^{pi/2} dt / sqrt(1 - u^2 sin^2 t), requires |u| < 1.
    Evaluated by adaptive quadrature of the defining integral.
    """
    if not math.isfinite(u) or abs(u) >= 1.0:
        raise DomainError(f"elliptic_k requires |u| < 1, got {u!r}")
    usq = u * u
    val, err = quad(
        lambda t: 1.0 / math.sqrt(1.0 - usq * math.sin(t) ** 2),
        0.0,
        0.5 * math.pi,
        epsabs=1e-14,
        epsrel=tol.rel_tol,
        limit=200,
    )
    if err > 1e-6 * max(1.0, abs(val)):
        raise NumericalError(f"elliptic_k quadrature error too large: {err}")
    return val


def scalar_agm(x: float, y: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Gauss arithmetic-geometric mean of two positive reals.

    Limit of a <- (a+g)/2, g <- sqrt(a*g); agrees with
    (pi/4)(x+y)/K((x-y)/(x+y)) within rel_tol.
    """
    if not (x > 0.0 and y > 0.0) or not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError("scalar_agm requires strictly positive finite inputs")
    a, g = float(x), float(y)
    for _ in range(tol.max_iter):
        if abs(a - g) <= tol.rel_tol * max(a, g):
            break
        a, g = 0.5 * (a + g), math.sqrt(a * g)
    else:
        raise NumericalError("scalar_agm failed to converge")
    return 0.5 * (a + g)
