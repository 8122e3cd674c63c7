"""Generator-agnostic Legendre/Bregman machinery.

A :class:`GeneratorSpec` bundles a Legendre-type convex generator F with its
gradient, reciprocal gradient and domain test.  On top of it live the Bregman
and symmetrized Bregman divergences, quasi-arithmetic centers, the sided
Bregman centroids, the mixed Bregman divergence, the Jeffreys loss and a
finite-difference optimality residual for the symmetrized centroid energy.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, NumericalError

__all__ = [
    "GeneratorSpec",
    "WeightedParamSet",
    "CenterDiagnostics",
    "bregman_div",
    "symmetrized_bregman",
    "quasi_arithmetic_center",
    "right_bregman_centroid",
    "mixed_bregman",
    "jeffreys_loss",
    "energy_grad_residual",
    "dual_generator",
]

# cube root of machine epsilon, the standard centered-difference step scale
_FD_STEP = float(np.finfo(float).eps) ** (1.0 / 3.0)


@dataclass(frozen=True)
class GeneratorSpec:
    """A Legendre-type convex generator F with its gradient machinery.

    Parameters
    ----------
    dim : int
        Dimension of the parameter vectors.
    eval_F : callable
        theta -> F(theta), a float.
    eval_grad : callable
        theta -> grad F(theta), a vector of length ``dim``.
    eval_grad_inv : callable
        eta -> (grad F)^{-1}(eta), a vector of length ``dim``.
    in_domain : callable
        theta -> bool, membership in the open natural parameter domain.
    is_separable : bool
        True when F(theta) = sum_i f_i(theta_i).
    name : str
        Informal label used in error messages.
    """

    dim: int
    eval_F: Callable[[np.ndarray], float]
    eval_grad: Callable[[np.ndarray], np.ndarray]
    eval_grad_inv: Callable[[np.ndarray], np.ndarray]
    in_domain: Callable[[np.ndarray], bool]
    is_separable: bool = False
    name: str = "generator"

    def require_domain(self, theta: np.ndarray, what: str = "parameter") -> np.ndarray:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if theta.shape != (self.dim,):
            raise DomainError(
                f"{self.name}: {what} has shape {theta.shape}, expected ({self.dim},)"
            )
        if not self.in_domain(theta):
            raise DomainError(f"{self.name}: {what} {theta!r} outside the domain")
        return theta


@dataclass(frozen=True)
class WeightedParamSet:
    """Parameter vectors with strictly positive weights summing to one."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        points = np.atleast_2d(np.asarray(self.points, dtype=float))
        weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if points.shape[0] != weights.shape[0]:
            raise ValueError(
                f"{points.shape[0]} points but {weights.shape[0]} weights"
            )
        if points.shape[0] == 0:
            raise ValueError("empty parameter set")
        if np.any(weights <= 0.0):
            raise ValueError("weights must be strictly positive (open simplex)")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {weights.sum()!r}, expected 1")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def of(cls, points: Sequence, weights: Optional[Sequence] = None) -> "WeightedParamSet":
        """Build a set; uniform weights when none are given."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if weights is None:
            n = points.shape[0]
            weights = np.full(n, 1.0 / n)
        return cls(points, np.asarray(weights, dtype=float))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass
class CenterDiagnostics:
    """Per-computation record attached to every returned center."""

    iterations: int = 0
    final_gap: float = 0.0
    residual: float = 0.0
    elapsed_ns: int = 0
    status: str = "converged"


class Stopwatch:
    """Tiny perf_counter_ns wrapper for diagnostics timing."""

    def __init__(self):
        self.t0 = time.perf_counter_ns()

    def elapsed_ns(self) -> int:
        return time.perf_counter_ns() - self.t0


def _check_set(gen: GeneratorSpec, pset: WeightedParamSet) -> None:
    if pset.dim != gen.dim:
        raise DomainError(
            f"{gen.name}: set dimension {pset.dim} != generator dimension {gen.dim}"
        )
    for i, theta in enumerate(pset.points):
        if not gen.in_domain(theta):
            raise DomainError(f"{gen.name}: point {i} outside the domain")


def bregman_div(gen: GeneratorSpec, theta1, theta2) -> float:
    """Bregman divergence B_F(theta1 : theta2)."""
    t1 = gen.require_domain(theta1, "first argument")
    t2 = gen.require_domain(theta2, "second argument")
    return float(gen.eval_F(t1) - gen.eval_F(t2) - (t1 - t2) @ gen.eval_grad(t2))


def symmetrized_bregman(gen: GeneratorSpec, theta1, theta2) -> float:
    """Symmetrized Bregman divergence S_F(theta1, theta2) =
    <theta1 - theta2, grad F(theta1) - grad F(theta2)>."""
    t1 = gen.require_domain(theta1, "first argument")
    t2 = gen.require_domain(theta2, "second argument")
    return float((t1 - t2) @ (gen.eval_grad(t1) - gen.eval_grad(t2)))


def quasi_arithmetic_center(gen: GeneratorSpec, pset: WeightedParamSet) -> np.ndarray:
    """Weighted quasi-arithmetic center (grad F)^{-1}(sum_i w_i grad F(theta_i))."""
    _check_set(gen, pset)
    if pset.n == 1:
        return pset.points[0].copy()
    mean_grad = np.einsum("i,ij->j", pset.weights,
                          np.array([gen.eval_grad(t) for t in pset.points]))
    return np.asarray(gen.eval_grad_inv(mean_grad), dtype=float)


def right_bregman_centroid(pset: WeightedParamSet) -> np.ndarray:
    """Weighted arithmetic mean of the parameters (right Bregman centroid)."""
    return np.einsum("i,ij->j", pset.weights, pset.points)


def mixed_bregman(gen: GeneratorSpec, theta1, theta, theta2) -> float:
    """Mixed Bregman divergence
    Delta_F(theta1 : theta : theta2) = (B_F(theta1:theta) + B_F(theta:theta2)) / 2."""
    return 0.5 * bregman_div(gen, theta1, theta) + 0.5 * bregman_div(gen, theta, theta2)


def jeffreys_loss(gen: GeneratorSpec, pset: WeightedParamSet, theta) -> float:
    """Weighted symmetrized-Bregman loss sum_i w_i S_F(theta_i, theta)."""
    t = gen.require_domain(theta, "query point")
    _check_set(gen, pset)
    return float(
        sum(w * symmetrized_bregman(gen, p, t) for w, p in zip(pset.weights, pset.points))
    )


def energy_grad_residual(gen: GeneratorSpec, pset: WeightedParamSet, theta) -> float:
    """Norm of the centered finite-difference gradient of the Jeffreys loss.

    Near zero exactly when ``theta`` is near the symmetrized Bregman centroid
    of the set.  Steps are eps^(1/3)-scaled per component.
    """
    t = gen.require_domain(theta, "query point")
    grad = np.empty(gen.dim)
    for k in range(gen.dim):
        h = _FD_STEP * max(1.0, abs(t[k]))
        tp, tm = t.copy(), t.copy()
        tp[k] += h
        tm[k] -= h
        if tp[k] == t[k] or tm[k] == t[k]:
            raise NumericalError("finite-difference step underflow")
        grad[k] = (jeffreys_loss(gen, pset, tp) - jeffreys_loss(gen, pset, tm)) / (2 * h)
    return float(np.linalg.norm(grad))


def dual_generator(gen: GeneratorSpec) -> GeneratorSpec:
    """Convex conjugate F*(eta) = <eta, (grad F)^{-1}(eta)> - F((grad F)^{-1}(eta)).

    Its gradient is (grad F)^{-1} and vice versa, so the triple is assembled by
    swapping the gradient maps.
    """

    def eval_F_star(eta: np.ndarray) -> float:
        theta = np.atleast_1d(np.asarray(gen.eval_grad_inv(eta), dtype=float))
        return float(eta @ theta - gen.eval_F(theta))

    def in_dual_domain(eta: np.ndarray) -> bool:
        try:
            theta = np.atleast_1d(np.asarray(gen.eval_grad_inv(eta), dtype=float))
        except (DomainError, FloatingPointError, ValueError):
            return False
        return bool(np.all(np.isfinite(theta))) and gen.in_domain(theta)

    return GeneratorSpec(
        dim=gen.dim,
        eval_F=eval_F_star,
        eval_grad=gen.eval_grad_inv,
        eval_grad_inv=gen.eval_grad,
        in_domain=in_dual_domain,
        is_separable=gen.is_separable,
        name=f"{gen.name}*",
    )
