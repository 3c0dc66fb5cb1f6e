"""Closed-form optimizers for pilot reuse, UEs per cell, and antennas per UE."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import HardwareParams, InfeasibleError, PropagationParams


class DenominatorNonpositive(InfeasibleError):
    """The target cannot be met with this many antennas at any reuse factor."""


class TargetExceededAtUnitReuse(InfeasibleError):
    """Even beta = 1 overshoots the target; the point is excluded."""


class OverheadExceeded(InfeasibleError):
    """The required pilots do not fit in the coherence block."""


class GDenominatorNonpositive(InfeasibleError):
    """The antennas-per-UE ratio is too small for the target."""


def beta_coefficients(M: float, K: float, inv_snr: float, alpha: float,
                      epsilon: float) -> tuple[float, float]:
    """(B1, B2) such that the SINR bound equals M(1-eps^2)^2 / (B1/beta + B2)."""
    x = inv_snr
    e2 = epsilon * epsilon
    B1 = (4.0 * K / (alpha - 2.0) ** 2 + (K + M * (1.0 - e2)) / (alpha - 1.0)
          + 2.0 * (K + x) / (alpha - 2.0))
    B2 = (K + x + 2.0 * K / (alpha - 2.0)) * (1.0 + x) + (1.0 - e2) * e2 * M
    return B1, B2


def required_beta(M: float, K: float, inv_snr: float, gamma: float, alpha: float,
                  epsilon: float) -> float:
    """Reuse factor meeting the target with equality, without feasibility checks.

    Returns ``math.inf`` when no finite reuse factor reaches the target.
    """
    B1, B2 = beta_coefficients(M, K, inv_snr, alpha, epsilon)
    den = M * (1.0 - epsilon * epsilon) ** 2 - B2 * gamma
    if den <= 0:
        return math.inf
    return B1 * gamma / den


def optimal_beta(M: float, K: float, inv_snr: float, gamma: float,
                 prop: PropagationParams, epsilon: float) -> float:
    """Smallest pilot reuse factor that meets the average-SINR target exactly.

    Raises
    ------
    DenominatorNonpositive
        The target is out of reach for this M at any reuse factor.
    TargetExceededAtUnitReuse
        The solution is below 1, so every admissible beta overshoots.
    OverheadExceeded
        beta * K would exceed the coherence block length.
    """
    if not prop.alpha > 2:
        raise ValueError("pathloss exponent must exceed 2")
    beta = required_beta(M, K, inv_snr, gamma, prop.alpha, epsilon)
    if math.isinf(beta):
        raise DenominatorNonpositive(
            f"target {gamma:g} unreachable with M={M:g}, K={K:g}")
    if beta < 1:
        raise TargetExceededAtUnitReuse(
            f"beta*={beta:.6g} < 1: unit reuse already exceeds target {gamma:g}")
    if beta * K > prop.S:
        raise OverheadExceeded(f"beta*K={beta * K:.6g} exceeds S={prop.S}")
    return beta


def asymptotic_beta_coefficients(M: float, K: float, alpha: float,
                                 epsilon: float) -> tuple[float, float]:
    """(B1, B2) in the noise-free limit of infinite density."""
    e2 = epsilon * epsilon
    B1 = (K * (4.0 / (alpha - 2.0) ** 2 + 1.0 / (alpha - 1.0) + 2.0 / (alpha - 2.0))
          + M * (1.0 - e2) / (alpha - 1.0))
    B2 = K * (1.0 + 2.0 / (alpha - 2.0)) + (1.0 - e2) * e2 * M
    return B1, B2


def _interference_constant(alpha: float) -> float:
    return 4.0 / (alpha - 2.0) ** 2 + 1.0 / (alpha - 1.0) + 2.0 / (alpha - 2.0)


def g_coefficient(cbar: float, gamma: float, S: int, alpha: float, epsilon: float) -> float:
    """Pilot fraction per UE, K*beta/S = K*G, at a fixed antennas-per-UE ratio."""
    e2 = epsilon * epsilon
    num = gamma * _interference_constant(alpha) + gamma * (1.0 - e2) / (alpha - 1.0) * cbar
    den = ((1.0 - e2) * (1.0 - (1.0 + gamma) * e2) * cbar
           - (1.0 + 2.0 / (alpha - 2.0)) * gamma)
    if den <= 0:
        raise GDenominatorNonpositive(
            f"cbar={cbar:g} too small for target {gamma:g}")
    return num / den / S


def cbar_coefficients(K: float, gamma: float, hw: HardwareParams,
                      prop: PropagationParams) -> tuple[float, ...]:
    """(a0, ..., a5) of the fixed-K antennas-per-UE problem."""
    alpha, S, e2 = prop.alpha, prop.S, hw.epsilon ** 2
    a0 = gamma * K * (1.0 - e2) / (S * (alpha - 1.0))
    a1 = K / S * gamma * _interference_constant(alpha)
    a2 = (1.0 - e2) * (1.0 - (1.0 + gamma) * e2)
    a3 = (1.0 + 2.0 / (alpha - 2.0)) * gamma
    a4 = hw.C0 + hw.C1 * K
    a5 = hw.D0 * K + hw.D1 * K * K
    return a0, a1, a2, a3, a4, a5


@dataclass(frozen=True)
class TheoremCoefficients:
    B1: float
    B2: float
    B1bar: float
    B2bar: float
    G: float
    a: tuple[float, ...]
    beta_feasible: bool
    g_feasible: bool
    cbar_feasible: bool


def theorem_coefficients(M: float, K: float, gamma: float, hw: HardwareParams,
                         prop: PropagationParams, inv_snr: float = 0.0) -> TheoremCoefficients:
    """Gather every closed-form coefficient at (M, K), flagging sign conditions."""
    eps = hw.epsilon
    B1, B2 = beta_coefficients(M, K, inv_snr, prop.alpha, eps)
    B1b, B2b = asymptotic_beta_coefficients(M, K, prop.alpha, eps)
    try:
        G = g_coefficient(M / K, gamma, prop.S, prop.alpha, eps)
        g_ok = True
    except GDenominatorNonpositive:
        G, g_ok = math.nan, False
    a = cbar_coefficients(K, gamma, hw, prop)
    return TheoremCoefficients(
        B1=B1, B2=B2, B1bar=B1b, B2bar=B2b, G=G, a=a,
        beta_feasible=M * (1.0 - eps * eps) ** 2 - B2 * gamma > 0,
        g_feasible=g_ok,
        cbar_feasible=a[2] > a[0],
    )


def ee_given_cbar(K: float, cbar: float, gamma: float, hw: HardwareParams,
                  prop: PropagationParams) -> float:
    """Dense-limit EE as a function of K at fixed cbar = M/K (relaxed)."""
    G = g_coefficient(cbar, gamma, prop.S, prop.alpha, hw.epsilon)
    rate = math.log2(1.0 + gamma)
    payload = K * (1.0 - K * G) * rate
    cost = hw.C0 + (hw.C1 + hw.D0 * cbar) * K + hw.D1 * cbar * K * K + hw.A * payload
    return payload / cost


def optimal_k_given_cbar(cbar: float, gamma: float, hw: HardwareParams,
                         prop: PropagationParams) -> float:
    """EE-maximizing real K for a fixed number of antennas per UE."""
    G = g_coefficient(cbar, gamma, prop.S, prop.alpha, hw.epsilon)
    C0, C1, D0, D1 = hw.C0, hw.C1, hw.D0, hw.D1
    lin = C1 + D0 * cbar
    root = math.sqrt((G * C0) ** 2 + C0 * D1 * cbar + C0 * G * lin)
    return (root - G * C0) / (D1 * cbar + G * lin)


def ee_given_k(cbar: float, K: float, gamma: float, hw: HardwareParams,
               prop: PropagationParams) -> float:
    """Dense-limit EE as a function of cbar at fixed K (relaxed)."""
    a0, a1, a2, a3, a4, a5 = cbar_coefficients(K, gamma, hw, prop)
    den = a2 * cbar - a3
    if den <= 0:
        raise GDenominatorNonpositive(f"cbar={cbar:g} too small for target {gamma:g}")
    rate = math.log2(1.0 + gamma)
    payload = K * (1.0 - (a0 * cbar + a1) / den) * rate
    return payload / (a4 + a5 * cbar + hw.A * payload)


def unit_reuse_cbar(gamma: float, alpha: float, epsilon: float) -> float:
    """The cbar at which the optimal reuse factor equals exactly 1.

    Raises :class:`InfeasibleError` if no such cbar exists.
    """
    e2 = epsilon * epsilon
    num = gamma * (1.0 + 4.0 / (alpha - 2.0) ** 2 + 1.0 / (alpha - 1.0) + 4.0 / (alpha - 2.0))
    den = (1.0 - e2) * (1.0 - (1.0 + gamma) * e2) - gamma * (1.0 - e2) / (alpha - 1.0)
    if den <= 0:
        raise InfeasibleError("reuse factor stays above 1 for every cbar")
    return num / den


def optimal_cbar_given_k(K: float, gamma: float, hw: HardwareParams,
                         prop: PropagationParams) -> float:
    """EE-maximizing real antennas-per-UE ratio for a fixed K.

    Uses the stationary point when it keeps beta >= 1 and otherwise the
    boundary where beta = 1.
    """
    a0, a1, a2, a3, a4, a5 = cbar_coefficients(K, gamma, hw, prop)
    if not a2 > a0:
        raise InfeasibleError(
            f"impairments too severe for target {gamma:g} (a2={a2:.6g} <= a0={a0:.6g})")
    rad = (a1 * a3 + a1 * a1 + a1 * a2 * a4 / a5 + a0 * a3 * a4 / a5
           - a0 * a1 * a4 / a5 - a0 * a0 * a3 * a4 / (a2 * a5)
           + a0 * a1 * a3 / a2 + a0 * a3 * a3 / a2)
    if rad < 0:
        raise InfeasibleError(f"no stationary cbar for K={K:g}, target {gamma:g}")
    cbar = (a1 + a3 + math.sqrt(rad)) / (a2 - a0)
    beta = (a0 * cbar + a1) / (a2 * cbar - a3) * prop.S / K
    if beta >= 1:
        return cbar
    return unit_reuse_cbar(gamma, prop.alpha, hw.epsilon)
