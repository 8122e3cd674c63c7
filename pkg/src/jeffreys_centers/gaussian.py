"""Multivariate normal family.

Coordinate conversions between the source (mean, covariance), natural and
moment parameterizations, the cumulant generator over a flattened parameter
vector, Kullback-Leibler and Jeffreys divergences, sided KL centroids, the
inductive Gauss-Bregman center, the Fisher-Rao geodesic midpoint through the
(2d+1)-dimensional SPD embedding, the Jeffreys-Fisher-Rao center, and the
closed-form Jeffreys centroid of same-mean sets.

Matrix parameters are flattened as (theta_v, vech(theta_M)) with off-diagonal
entries scaled by sqrt(2), so the Euclidean inner product of flattened vectors
equals trace pairing on the matrix block and the generic double-sequence norm
is the natural one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import root

from .errors import DomainError, NumericalError
from .gauss_bregman import GB_TOL, gb_center
from .legendre import CenterDiagnostics, GeneratorSpec, WeightedParamSet
from .special_functions import ToleranceConfig
from .spd import SPDMatrix, geometric_mean, trace_metric_distance

__all__ = [
    "GaussianParam",
    "MvnNatural",
    "MvnMoment",
    "EmbeddedSPD2d1",
    "mvn_to_natural",
    "mvn_from_natural",
    "mvn_to_moment",
    "mvn_from_moment",
    "mvn_generator",
    "mvn_flatten",
    "mvn_unflatten",
    "kl_mvn",
    "jeffreys_mvn",
    "jeffreys_loss_mvn",
    "sided_kl_centroids_mvn",
    "embed_gaussian",
    "fisher_rao_midpoint_mvn",
    "jfr_center_mvn",
    "gb_center_mvn",
    "jeffreys_centroid_centered",
]

_EIG_FLOOR = 1e-13


@dataclass(frozen=True)
class GaussianParam:
    """A d-variate normal in source coordinates (mean, covariance)."""

    mean: np.ndarray
    cov: SPDMatrix

    def __post_init__(self):
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        cov = self.cov if isinstance(self.cov, SPDMatrix) else SPDMatrix(self.cov)
        if mean.shape != (cov.dim,):
            raise DomainError(
                f"mean shape {mean.shape} incompatible with covariance dim {cov.dim}"
            )
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def dim(self) -> int:
        return self.mean.size


@dataclass(frozen=True)
class MvnNatural:
    """Natural parameters (theta_v, theta_M) with -theta_M a scaled precision."""

    theta_v: np.ndarray
    theta_M: np.ndarray

    def __post_init__(self):
        tv = np.atleast_1d(np.asarray(self.theta_v, dtype=float))
        tm = np.atleast_2d(np.asarray(self.theta_M, dtype=float))
        if tm.shape != (tv.size, tv.size):
            raise DomainError("theta_M shape incompatible with theta_v")
        if np.linalg.eigvalsh(-tm)[0] <= 0.0:
            raise DomainError("-theta_M must be positive definite")
        object.__setattr__(self, "theta_v", tv)
        object.__setattr__(self, "theta_M", 0.5 * (tm + tm.T))

    @property
    def dim(self) -> int:
        return self.theta_v.size


@dataclass(frozen=True)
class MvnMoment:
    """Moment parameters (eta_v, eta_M) = (mean, second moment)."""

    eta_v: np.ndarray
    eta_M: np.ndarray

    def __post_init__(self):
        ev = np.atleast_1d(np.asarray(self.eta_v, dtype=float))
        em = np.atleast_2d(np.asarray(self.eta_M, dtype=float))
        if em.shape != (ev.size, ev.size):
            raise DomainError("eta_M shape incompatible with eta_v")
        if np.linalg.eigvalsh(em - np.outer(ev, ev))[0] <= 0.0:
            raise DomainError("eta_M - eta_v eta_v^T must be positive definite")
        object.__setattr__(self, "eta_v", ev)
        object.__setattr__(self, "eta_M", 0.5 * (em + em.T))

    @property
    def dim(self) -> int:
        return self.eta_v.size


@dataclass(frozen=True)
class EmbeddedSPD2d1:
    """The (2d+1)-dimensional SPD lift of a d-variate normal."""

    G: SPDMatrix


def mvn_to_natural(p: GaussianParam) -> MvnNatural:
    """theta_v = Sigma^{-1} mu, theta_M = -Sigma^{-1}/2."""
    prec = np.linalg.inv(p.cov.entries)
    prec = 0.5 * (prec + prec.T)
    return MvnNatural(prec @ p.mean, -0.5 * prec)


def mvn_from_natural(nat: MvnNatural) -> GaussianParam:
    cov = np.linalg.inv(-2.0 * nat.theta_M)
    cov = 0.5 * (cov + cov.T)
    return GaussianParam(cov @ nat.theta_v, SPDMatrix(cov))


def mvn_to_moment(p: GaussianParam) -> MvnMoment:
    """eta_v = mu, eta_M = mu mu^T + Sigma."""
    return MvnMoment(p.mean, np.outer(p.mean, p.mean) + p.cov.entries)


def mvn_from_moment(mom: MvnMoment) -> GaussianParam:
    cov = mom.eta_M - np.outer(mom.eta_v, mom.eta_v)
    return GaussianParam(mom.eta_v, SPDMatrix(cov))


# --- flattening of (vector, symmetric matrix) pairs -------------------------

def _triu_scale(d: int) -> Tuple[Tuple[np.ndarray, np.ndarray], np.ndarray]:
    iu = np.triu_indices(d)
    scale = np.where(iu[0] == iu[1], 1.0, np.sqrt(2.0))
    return iu, scale


def mvn_flatten(vec: np.ndarray, mat: np.ndarray) -> np.ndarray:
    """Pack (vector, symmetric matrix) into the trace-isometric flat vector."""
    d = vec.size
    iu, scale = _triu_scale(d)
    return np.concatenate([vec, mat[iu] * scale])


def mvn_unflatten(x: np.ndarray, d: int) -> Tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`mvn_flatten`."""
    iu, scale = _triu_scale(d)
    vec = x[:d]
    mat = np.zeros((d, d))
    mat[iu] = x[d:] / scale
    mat = mat + mat.T - np.diag(np.diag(mat))
    return vec, mat


def flat_dim(d: int) -> int:
    return d + d * (d + 1) // 2


def mvn_generator(dim: int) -> GeneratorSpec:
    """Cumulant generator of the d-variate normal family on flattened naturals.

    The gradient maps theta to the moment parameter (mu, mu mu^T + Sigma); the
    reciprocal gradient inverts it.  The domain requires -theta_M positive
    definite.
    """
    if dim < 1:
        raise DomainError("dimension must be >= 1")
    d = dim

    def eval_F(x: np.ndarray) -> float:
        tv, tm = mvn_unflatten(x, d)
        neg2tm = -2.0 * tm
        sign, logdet = np.linalg.slogdet(neg2tm)
        if sign <= 0.0:
            raise DomainError("-2 theta_M is not positive definite")
        tm_inv_tv = np.linalg.solve(tm, tv)
        return float(
            -0.25 * tv @ tm_inv_tv - 0.5 * logdet + 0.5 * d * np.log(2.0 * np.pi)
        )

    def eval_grad(x: np.ndarray) -> np.ndarray:
        tv, tm = mvn_unflatten(x, d)
        cov = np.linalg.inv(-2.0 * tm)
        cov = 0.5 * (cov + cov.T)
        mu = cov @ tv
        return mvn_flatten(mu, np.outer(mu, mu) + cov)

    def eval_grad_inv(e: np.ndarray) -> np.ndarray:
        ev, em = mvn_unflatten(e, d)
        cov = em - np.outer(ev, ev)
        eig = np.linalg.eigvalsh(cov)
        if eig[0] <= 0.0:
            raise DomainError("moment parameter has no positive-definite covariance")
        prec = np.linalg.inv(cov)
        prec = 0.5 * (prec + prec.T)
        return mvn_flatten(prec @ ev, -0.5 * prec)

    def in_domain(x: np.ndarray) -> bool:
        if not np.all(np.isfinite(x)):
            return False
        _, tm = mvn_unflatten(x, d)
        return bool(np.linalg.eigvalsh(-tm)[0] > _EIG_FLOOR)

    return GeneratorSpec(
        dim=flat_dim(d),
        eval_F=eval_F,
        eval_grad=eval_grad,
        eval_grad_inv=eval_grad_inv,
        in_domain=in_domain,
        is_separable=False,
        name=f"mvn(d={d})",
    )


def natural_to_flat(nat: MvnNatural) -> np.ndarray:
    return mvn_flatten(nat.theta_v, nat.theta_M)


def flat_to_natural(x: np.ndarray, d: int) -> MvnNatural:
    tv, tm = mvn_unflatten(x, d)
    return MvnNatural(tv, tm)


# --- divergences -------------------------------------------------------------

def kl_mvn(p: GaussianParam, q: GaussianParam) -> float:
    """KL(p : q) between two normals in closed form."""
    if p.dim != q.dim:
        raise DomainError("dimension mismatch")
    d = p.dim
    sq_inv = np.linalg.inv(q.cov.entries)
    dm = q.mean - p.mean
    _, logdet_q = np.linalg.slogdet(q.cov.entries)
    _, logdet_p = np.linalg.slogdet(p.cov.entries)
    return 0.5 * float(
        np.trace(sq_inv @ p.cov.entries) + dm @ sq_inv @ dm - d + logdet_q - logdet_p
    )


def jeffreys_mvn(p: GaussianParam, q: GaussianParam) -> float:
    """Jeffreys divergence KL(p:q) + KL(q:p).

    Equals ((mu2-mu1)^T (S1^{-1}+S2^{-1}) (mu2-mu1)
           + tr(S1^{-1} S2 + S2^{-1} S1) - 2d) / 2.
    """
    if p.dim != q.dim:
        raise DomainError("dimension mismatch")
    d = p.dim
    s1_inv = np.linalg.inv(p.cov.entries)
    s2_inv = np.linalg.inv(q.cov.entries)
    dm = q.mean - p.mean
    return 0.5 * float(
        dm @ (s1_inv + s2_inv) @ dm
        + np.trace(s1_inv @ q.cov.entries)
        + np.trace(s2_inv @ p.cov.entries)
        - 2 * d
    )


def _weighted_gaussians(
    gaussians: Sequence[GaussianParam], weights: Optional[Sequence]
) -> Tuple[list, np.ndarray]:
    if len(gaussians) == 0:
        raise DomainError("empty Gaussian set")
    d = gaussians[0].dim
    for g in gaussians[1:]:
        if g.dim != d:
            raise DomainError("mixed dimensions in Gaussian set")
    if weights is None:
        w = np.full(len(gaussians), 1.0 / len(gaussians))
    else:
        w = np.asarray(weights, dtype=float)
        if w.shape != (len(gaussians),):
            raise DomainError("weights length mismatch")
        if np.any(w <= 0.0) or abs(w.sum() - 1.0) > 1e-12:
            raise DomainError("weights must be strictly positive and sum to 1")
    return list(gaussians), w


def jeffreys_loss_mvn(
    gaussians: Sequence[GaussianParam],
    weights: Optional[Sequence],
    query: GaussianParam,
) -> float:
    """Weighted Jeffreys loss sum_i w_i D_J(p_i, query)."""
    gs, w = _weighted_gaussians(gaussians, weights)
    return float(sum(wi * jeffreys_mvn(g, query) for wi, g in zip(w, gs)))


def sided_kl_centroids_mvn(
    gaussians: Sequence[GaussianParam], weights: Optional[Sequence] = None
) -> Tuple[MvnNatural, MvnNatural]:
    """Sided KL centroids: (arithmetic mean in theta, moment mean pulled back).

    Returns (right Bregman centroid, left Bregman centroid) as natural
    parameters.
    """
    gs, w = _weighted_gaussians(gaussians, weights)
    d = gs[0].dim
    gen = mvn_generator(d)
    thetas = np.array([natural_to_flat(mvn_to_natural(g)) for g in gs])
    right = w @ thetas
    etas = np.array([gen.eval_grad(t) for t in thetas])
    left = gen.eval_grad_inv(w @ etas)
    return flat_to_natural(right, d), flat_to_natural(left, d)


# --- Fisher-Rao midpoint through the (2d+1) SPD embedding --------------------

def _embed_array(mean: np.ndarray, cov: np.ndarray) -> np.ndarray:
    d = mean.size
    prec = np.linalg.inv(cov)
    D = np.zeros((2 * d + 1, 2 * d + 1))
    D[:d, :d] = 0.5 * (prec + prec.T)
    D[d, d] = 1.0
    D[d + 1 :, d + 1 :] = cov
    M = np.eye(2 * d + 1)
    M[d, :d] = mean
    M[d + 1 :, d] = -mean
    M[d + 1 :, :d] = -0.5 * np.outer(mean, mean)
    G = M @ D @ M.T
    return 0.5 * (G + G.T)


def embed_gaussian(p: GaussianParam) -> EmbeddedSPD2d1:
    """Lift a normal to its (2d+1)-dimensional SPD representative."""
    return EmbeddedSPD2d1(SPDMatrix(_embed_array(p.mean, p.cov.entries)))


def _fiber_move(G: np.ndarray, k: np.ndarray, d: int) -> np.ndarray:
    """Congruence by the gauge element with skew block K in position (3,1)."""
    K = np.zeros((d, d))
    iu = np.triu_indices(d, 1)
    K[iu] = k
    K = K - K.T
    F = np.eye(2 * d + 1)
    F[d + 1 :, :d] = K
    out = F @ G @ F.T
    return 0.5 * (out + out.T)


def _logm_spd(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    if w[0] <= 0.0:
        raise NumericalError("matrix log of a non-SPD argument")
    return (v * np.log(w)) @ v.T


def _powm(m: np.ndarray, p: float) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    return (v * w**p) @ v.T


def _align_fiber(G0: np.ndarray, G1: np.ndarray, d: int) -> np.ndarray:
    """Gauge-align G1 to G0 so the connecting trace-metric geodesic is horizontal.

    The alignment zeroes the skew part of the mean-covariance coupling block of
    the geodesic's initial velocity, solved as a root-finding problem over the
    d(d-1)/2 gauge parameters.
    """
    nk = d * (d - 1) // 2
    if nk == 0:
        return G1

    def residual(k: np.ndarray) -> np.ndarray:
        G1k = _fiber_move(G1, k, d)
        g1h = _powm(G1k, 0.5)
        g1mh = _powm(G1k, -0.5)
        L = _logm_spd(g1mh @ G0 @ g1mh)
        B = g1h @ L @ g1mh
        blk = B[:d, d + 1 :]
        skew = 0.5 * (blk - blk.T)
        return skew[np.triu_indices(d, 1)]

    sol = root(residual, np.zeros(nk), method="hybr", tol=1e-14)
    res = residual(sol.x)
    if not sol.success and float(np.abs(res).max()) > 1e-9:
        raise NumericalError(
            f"fiber alignment failed: residual {np.abs(res).max():.3g}"
        )
    return _fiber_move(G1, sol.x, d)


def fisher_rao_midpoint_mvn(
    p0: GaussianParam, p1: GaussianParam, return_embedding: bool = False
):
    """Fisher-Rao geodesic midpoint of two d-variate normals.

    Lifts both normals to (2d+1)-dimensional SPD matrices, gauge-aligns the
    second lift, takes the trace-metric geodesic midpoint, and reads the
    normal back off the top-left block and the adjacent column.

    With ``return_embedding`` the aligned triple (G0, G, G1) is also returned
    for equidistance checks.
    """
    if p0.dim != p1.dim:
        raise DomainError("dimension mismatch")
    d = p0.dim
    G0 = _embed_array(p0.mean, p0.cov.entries)
    G1 = _align_fiber(G0, _embed_array(p1.mean, p1.cov.entries), d)
    G = geometric_mean(SPDMatrix(G0), SPDMatrix(G1)).entries
    cov = np.linalg.inv(G[:d, :d])
    cov = 0.5 * (cov + cov.T)
    mid = GaussianParam(cov @ G[:d, d], SPDMatrix(cov))
    if return_embedding:
        return mid, (
            EmbeddedSPD2d1(SPDMatrix(G0)),
            EmbeddedSPD2d1(SPDMatrix(G)),
            EmbeddedSPD2d1(SPDMatrix(G1)),
        )
    return mid


def embedded_equidistance_residual(p0: GaussianParam, p1: GaussianParam) -> float:
    """|rho(G0, G) - rho(G, G1)| for the aligned midpoint construction."""
    _, (e0, emid, e1) = fisher_rao_midpoint_mvn(p0, p1, return_embedding=True)
    return abs(
        trace_metric_distance(e0.G, emid.G) - trace_metric_distance(emid.G, e1.G)
    )


def jfr_center_mvn(
    gaussians: Sequence[GaussianParam], weights: Optional[Sequence] = None
) -> GaussianParam:
    """Jeffreys-Fisher-Rao center: Fisher-Rao midpoint of the sided KL centroids."""
    right, left = sided_kl_centroids_mvn(gaussians, weights)
    return fisher_rao_midpoint_mvn(mvn_from_natural(right), mvn_from_natural(left))


def gb_center_mvn(
    gaussians: Sequence[GaussianParam],
    weights: Optional[Sequence] = None,
    tol: ToleranceConfig = GB_TOL,
) -> Tuple[GaussianParam, CenterDiagnostics]:
    """Gauss-Bregman inductive center under the normal cumulant generator.

    The generator is non-separable, so there is no convergence theorem; the
    diagnostics ``status`` field reports 'max_iter' when the gap target was
    not met.
    """
    gs, w = _weighted_gaussians(gaussians, weights)
    d = gs[0].dim
    gen = mvn_generator(d)
    thetas = np.array([natural_to_flat(mvn_to_natural(g)) for g in gs])
    result = gb_center(gen, WeightedParamSet(thetas, w), tol)
    return mvn_from_natural(flat_to_natural(result.center, d)), result.diagnostics


def jeffreys_centroid_centered(
    covs: Sequence[SPDMatrix],
    weights: Optional[Sequence] = None,
    mean: Optional[np.ndarray] = None,
) -> GaussianParam:
    """Closed-form Jeffreys centroid of same-mean normals.

    Covariance is the geometric mean of the weighted arithmetic covariance
    mean and the weighted harmonic covariance mean; the common mean is kept.
    """
    if len(covs) == 0:
        raise DomainError("empty covariance set")
    arrays = [c.entries if isinstance(c, SPDMatrix) else np.asarray(c, float) for c in covs]
    d = arrays[0].shape[0]
    if weights is None:
        w = np.full(len(arrays), 1.0 / len(arrays))
    else:
        w = np.asarray(weights, dtype=float)
        if np.any(w <= 0.0) or abs(w.sum() - 1.0) > 1e-12:
            raise DomainError("weights must be strictly positive and sum to 1")
    mu = np.zeros(d) if mean is None else np.atleast_1d(np.asarray(mean, dtype=float))
    a = sum(wi * c for wi, c in zip(w, arrays))
    h = np.linalg.inv(sum(wi * np.linalg.inv(c) for wi, c in zip(w, arrays)))
    cov = geometric_mean(SPDMatrix(a), SPDMatrix(0.5 * (h + h.T)))
    return GaussianParam(mu, cov)
