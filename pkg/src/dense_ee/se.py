"""Closed-form uplink SINR and spectral-efficiency bounds with MRC."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import DesignPoint, PropagationParams


@dataclass(frozen=True)
class SeBound:
    sinr: float
    se: float
    prelog: float


@dataclass(frozen=True)
class GeometryRealization:
    """One realization seen from a typical UE at the origin.

    ``own_dist[j, i]`` is the distance from UE i of interfering cell j to its
    own BS and ``cross_dist[j, i]`` its distance to the typical BS. Column
    ``pilot_index`` holds the UE sharing the typical UE's pilot. UE
    coordinates are kept when the sampler provides them.
    """

    d00k: float
    bs0: np.ndarray
    bs_positions: np.ndarray
    own_dist: np.ndarray
    cross_dist: np.ndarray
    pilot_index: int = 0
    ue_positions: np.ndarray | None = None

    def __post_init__(self):
        for name in ("bs0", "bs_positions", "own_dist", "cross_dist"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if self.ue_positions is not None:
            ue = np.asarray(self.ue_positions, dtype=float)
            if ue.shape != self.own_dist.shape + (2,):
                raise ValueError("ue_positions must have shape (cells, K, 2)")
            object.__setattr__(self, "ue_positions", ue)
        if self.bs_positions.size == 0:
            object.__setattr__(self, "bs_positions", self.bs_positions.reshape(0, 2))
        if self.own_dist.shape != self.cross_dist.shape:
            raise ValueError("own_dist and cross_dist must have the same shape")
        if self.own_dist.ndim != 2 or self.own_dist.shape[0] != self.bs_positions.shape[0]:
            raise ValueError("need one row of UE distances per interfering BS")

    @property
    def n_cells(self) -> int:
        return self.own_dist.shape[0]

    @property
    def K(self) -> int:
        return self.own_dist.shape[1]

    @classmethod
    def interference_free(cls, d00k: float, K: int) -> "GeometryRealization":
        return cls(d00k, np.array([d00k, 0.0]), np.zeros((0, 2)),
                   np.zeros((0, K)), np.zeros((0, K)))


def _check_alpha_beta(alpha: float, beta: float) -> None:
    if not alpha > 2:
        raise ValueError(f"pathloss exponent must exceed 2, got {alpha}")
    if not beta >= 1:
        raise ValueError(f"pilot reuse factor must be at least 1, got {beta}")


def average_sinr(M: float, K: float, beta: float, inv_snr: float,
                 alpha: float, epsilon: float) -> float:
    """Lower bound on the average SINR for real-valued M, K.

    ``inv_snr`` is sigma^2/rho; ``math.inf`` gives 0.
    """
    _check_alpha_beta(alpha, beta)
    if math.isinf(inv_snr):
        return 0.0
    x = inv_snr
    e2 = epsilon * epsilon
    terms = (
        (K + x) * (1.0 + 2.0 / (beta * (alpha - 2.0)) + x),
        2.0 * K / (alpha - 2.0) * (1.0 + x),
        K / beta * (4.0 / (alpha - 2.0) ** 2 + 1.0 / (alpha - 1.0)),
        M * (1.0 - e2) * (1.0 / (beta * (alpha - 1.0)) + e2),
    )
    return M * (1.0 - e2) ** 2 / math.fsum(terms)


def sinr_lower_bound(point: DesignPoint, prop: PropagationParams, epsilon: float) -> float:
    return average_sinr(point.M, point.K, point.beta, point.inv_snr(prop.noise_var),
                        prop.alpha, epsilon)


def se_lower_bound(point: DesignPoint, prop: PropagationParams, epsilon: float) -> SeBound:
    sinr = sinr_lower_bound(point, prop, epsilon)
    prelog = max(0.0, 1.0 - point.beta * point.K / prop.S)
    return SeBound(sinr=sinr, se=prelog * math.log2(1.0 + sinr), prelog=prelog)


def interference_sums(geom: GeometryRealization, alpha: float) -> tuple[float, float, float]:
    """The three distance sums of the per-realization SINR.

    Returns (all-UE ratio sum, pilot-UE ratio sum, pilot-UE squared ratio sum)
    where each ratio is (own distance / distance to typical BS)^alpha.
    """
    if geom.n_cells == 0:
        return 0.0, 0.0, 0.0
    if np.any(geom.own_dist <= 0) or np.any(geom.cross_dist <= 0):
        raise ValueError("distances must be positive")
    ratio = (geom.own_dist / geom.cross_dist) ** alpha
    pilot = ratio[:, geom.pilot_index]
    return (math.fsum(ratio.ravel().tolist()), math.fsum(pilot.tolist()),
            math.fsum((pilot * pilot).tolist()))


def sinr_from_sums(M: float, K: float, beta: float, inv_snr: float, epsilon: float,
                   all_sum: float, pilot_sum: float, pilot_sq_sum: float) -> float:
    if math.isinf(inv_snr):
        return 0.0
    e2 = epsilon * epsilon
    den = ((K + all_sum + inv_snr) * (1.0 + pilot_sum / beta + inv_snr)
           + M * (1.0 - e2) * (pilot_sq_sum / beta + e2))
    return M * (1.0 - e2) ** 2 / den


def effective_sinr_given_geometry(geom: GeometryRealization, point: DesignPoint,
                                  prop: PropagationParams, epsilon: float) -> float:
    """Effective SINR of the typical UE for one fixed realization.

    Pilot collisions enter through their mean 1/beta.
    """
    _check_alpha_beta(prop.alpha, point.beta)
    if not geom.d00k > 0:
        raise ValueError("serving distance must be positive")
    sums = interference_sums(geom, prop.alpha)
    return sinr_from_sums(point.M, point.K, point.beta, point.inv_snr(prop.noise_var),
                          epsilon, *sums)


def feasibility_limit(S: int, alpha: float, epsilon: float) -> float:
    """Supremum of attainable SINR targets (reached as M grows, with K=1 and beta=S)."""
    if S < 1:
        raise ValueError("S must be at least 1")
    if not alpha > 2:
        raise ValueError("pathloss exponent must exceed 2")
    e2 = epsilon * epsilon
    return S * (alpha - 1.0) * (1.0 - e2) / (1.0 + e2 * S * (alpha - 1.0))


def asymptotic_sinr(beta: float, alpha: float, epsilon: float) -> float:
    """Limit of the SINR bound as the antenna count grows without bound."""
    if not beta >= 1:
        raise ValueError("pilot reuse factor must be at least 1")
    e2 = epsilon * epsilon
    den = (1.0 - e2) * (1.0 / (beta * (alpha - 1.0)) + e2)
    if den == 0:
        return math.inf
    return (1.0 - e2) ** 2 / den
