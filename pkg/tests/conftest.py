import numpy as np
import pytest

from jeffreys_centers import SPDMatrix


def random_spd(rng: np.random.Generator, d: int, spread: float = 1.0) -> SPDMatrix:
    """Well-conditioned random SPD matrix."""
    a = rng.normal(size=(d, d)) * spread
    return SPDMatrix(a @ a.T + d * spread**2 * np.eye(d))


def random_spd_unit(rng: np.random.Generator, d: int) -> SPDMatrix:
    """Random SPD with spectrum in [0.5, 2]: keeps finite-difference probes sharp."""
    q, _ = np.linalg.qr(rng.normal(size=(d, d)))
    lam = rng.uniform(0.5, 2.0, size=d)
    return SPDMatrix((q * lam) @ q.T)


def random_simplex(rng: np.random.Generator, d: int, floor: float = 1e-12) -> np.ndarray:
    p = rng.dirichlet(np.ones(d))
    while p.min() < floor:
        p = rng.dirichlet(np.ones(d))
    return p


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
