"""Area power consumption and energy efficiency."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import DesignPoint, HardwareParams, InfeasibleError, PropagationParams, SinrTarget
from .se import se_lower_bound
from .theorems import optimal_beta

COMPONENTS = ("radiated", "static_c0", "ue_c1", "antenna_d0", "processing_d1", "coding_a")


def avg_tx_power_per_ue(rho: float, omega: float, alpha: float, lam: float) -> float:
    """Mean UE transmit power under statistical channel inversion."""
    if not lam > 0:
        raise ValueError(f"BS density must be positive, got {lam}")
    return rho * omega * math.gamma(alpha / 2.0 + 1.0) / (math.pi * lam) ** (alpha / 2.0)


def radiated_power_per_ue(rho: float, omega: float, alpha: float, lam: float, beta: float,
                          K: float, S: int, eta: float = 1.0) -> float:
    """Average radiated power per UE over a block: one pilot plus S - beta*K data symbols.

    With ``eta < 1`` the result is referred to the amplifier input.
    """
    if beta * K > S + 1:
        raise ValueError(f"beta*K={beta * K:g} exceeds S+1={S + 1}")
    duty = 1.0 - (beta * K - 1.0) / S
    return duty * avg_tx_power_per_ue(rho, omega, alpha, lam) / eta


def ase(lam: float, K: float, se: float) -> float:
    return lam * K * se


@dataclass(frozen=True)
class EEBreakdown:
    """Power components and efficiency of one operating point.

    Components are in J/symbol/km^2 and ``ase`` in bit/symbol/km^2. In the
    dense limit the per-area values diverge, so everything is reported per BS
    instead (``per_bs`` is set); shares and ``ee`` are unaffected.
    """

    radiated: float
    static_c0: float
    ue_c1: float
    antenna_d0: float
    processing_d1: float
    coding_a: float
    ase: float
    ee: float
    per_bs: bool = False

    @property
    def total(self) -> float:
        return math.fsum(getattr(self, c) for c in COMPONENTS)

    def components(self) -> dict[str, float]:
        return {c: getattr(self, c) for c in COMPONENTS}


def _breakdown(scale: float, radiated_per_ue: float, M: float, K: float, se: float,
               hw: HardwareParams, per_bs: bool) -> EEBreakdown:
    area_se = scale * K * se
    parts = dict(
        radiated=scale * radiated_per_ue * K,
        static_c0=scale * hw.C0,
        ue_c1=scale * hw.C1 * K,
        antenna_d0=scale * hw.D0 * M,
        processing_d1=scale * hw.D1 * M * K,
        coding_a=hw.A * area_se,
    )
    total = math.fsum(parts.values())
    ee = area_se / total if total > 0 else math.nan
    return EEBreakdown(**parts, ase=area_se, ee=ee, per_bs=per_bs)


def apc(point: DesignPoint, hw: HardwareParams, prop: PropagationParams) -> EEBreakdown:
    """Area power consumption split into its components at a finite density."""
    if point.is_asymptotic:
        raise ValueError("APC diverges in the dense limit; use ee_asymptotic")
    se = se_lower_bound(point, prop, hw.epsilon).se
    if point.lam == 0:
        return _breakdown(0.0, 0.0, point.M, point.K, se, hw, per_bs=False)
    rad = radiated_power_per_ue(point.rho, prop.omega, prop.alpha, point.lam, point.beta,
                                point.K, prop.S, hw.eta)
    return _breakdown(point.lam, rad, point.M, point.K, se, hw, per_bs=False)


def ee(point: DesignPoint, hw: HardwareParams, prop: PropagationParams,
       gamma: float | None = None) -> float:
    """Energy efficiency in bit/J.

    If ``gamma`` is given the target is checked for feasibility and, when
    ``point.beta`` is None, the reuse factor meeting it exactly is used.
    """
    if gamma is not None:
        SinrTarget(gamma).check(prop, hw.epsilon)
        if point.beta is None:
            beta = optimal_beta(point.M, point.K, point.inv_snr(prop.noise_var), gamma,
                                prop, hw.epsilon)
            point = DesignPoint(beta, point.rho, point.lam, point.M, point.K)
    elif point.beta is None:
        raise ValueError("beta=None requires a target gamma")
    if point.is_asymptotic:
        se = se_lower_bound(point, prop, hw.epsilon).se
        return _breakdown(1.0, 0.0, point.M, point.K, se, hw, per_bs=True).ee
    return apc(point, hw, prop).ee


def ee_beta_star(M: float, K: float, inv_snr: float, lam: float, gamma: float,
                 hw: HardwareParams, prop: PropagationParams) -> float:
    """EE at a finite density with beta chosen to meet the target exactly.

    ``inv_snr`` is sigma^2/rho. Infeasible combinations raise
    :class:`~dense_ee.params.InfeasibleError` subclasses.
    """
    beta = optimal_beta(M, K, inv_snr, gamma, prop, hw.epsilon)
    rho = prop.noise_var / inv_snr
    rate = math.log2(1.0 + gamma)
    payload = K * (1.0 - K * beta / prop.S) * rate
    radiated = radiated_power_per_ue(rho, prop.omega, prop.alpha, lam, beta, K, prop.S, hw.eta)
    cost = (radiated * K + hw.C0 + hw.C1 * K + hw.D0 * M + hw.D1 * M * K + hw.A * payload)
    return payload / cost


def ee_asymptotic(M: float, K: float, gamma: float, hw: HardwareParams,
                  prop: PropagationParams) -> EEBreakdown:
    """Dense-limit EE with beta chosen to meet the target; per-BS breakdown.

    Raises the :mod:`dense_ee.theorems` infeasibility errors when the reuse
    factor falls outside [1, S/K] or the target is unreachable.
    """
    beta = optimal_beta(M, K, 0.0, gamma, prop, hw.epsilon)
    se = (1.0 - K * beta / prop.S) * math.log2(1.0 + gamma)
    return _breakdown(1.0, 0.0, M, K, se, hw, per_bs=True)


def ee_asymptotic_value(M: float, K: float, gamma: float, hw: HardwareParams,
                        prop: PropagationParams) -> float:
    """Like :func:`ee_asymptotic` but returns 0 for infeasible (M, K)."""
    try:
        return ee_asymptotic(M, K, gamma, hw, prop).ee
    except InfeasibleError:
        return 0.0


def apc_shares(breakdown: EEBreakdown) -> dict[str, float]:
    total = breakdown.total
    if not total > 0:
        raise ValueError("APC is zero; shares are undefined")
    return {c: v / total for c, v in breakdown.components().items()}


def ee_from_se(point: DesignPoint, se: float, hw: HardwareParams,
               prop: PropagationParams) -> float:
    """EE in bit/J of a design whose per-UE SE is ``se`` rather than the bound."""
    if point.is_asymptotic:
        return _breakdown(1.0, 0.0, point.M, point.K, se, hw, per_bs=True).ee
    rad = radiated_power_per_ue(point.rho, prop.omega, prop.alpha, point.lam, point.beta,
                                point.K, prop.S, hw.eta)
    return _breakdown(point.lam, rad, point.M, point.K, se, hw, per_bs=False).ee
