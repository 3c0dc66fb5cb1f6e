"""EE maximization over pilot reuse, density, power, antennas, and UEs per cell."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._search import golden_section_max
from .params import (ASYMPTOTIC, DesignPoint, HardwareParams, InfeasibleError,
                     PropagationParams, SinrTarget)
from .power import ee_asymptotic_value
from .theorems import (optimal_beta, optimal_cbar_given_k, optimal_k_given_cbar)


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-9
    max_iter: int = 100
    radius: int = 3
    snr_bracket: tuple[float, float] = (1e-6, 1e6)
    power_tol: float = 1e-7
    max_antennas: int = 256
    max_users: int = 64

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1 or self.radius < 0:
            raise ValueError("max_iter must be >= 1 and radius >= 0")
        lo, hi = self.snr_bracket
        if not 0 < lo < hi:
            raise ValueError("snr_bracket must satisfy 0 < lo < hi")
        object.__setattr__(self, "snr_bracket", (float(lo), float(hi)))


@dataclass(frozen=True)
class RelaxedOptimum:
    M: float
    K: float
    ee: float
    beta: float
    iterations: int
    trace: tuple[tuple[float, float, float], ...]


@dataclass(frozen=True)
class Optimum:
    design: DesignPoint
    ee: float
    trace: tuple[tuple[float, float, float], ...] = ()
    integer_neighborhood: tuple[tuple[int, int, float], ...] = field(default=(), repr=False)


class ConvergenceError(RuntimeError):
    pass


def alternate_optimize(init_M: float, init_K: float, gamma: float, hw: HardwareParams,
                       prop: PropagationParams, tol: float = 1e-9,
                       max_iter: int = 100) -> RelaxedOptimum:
    """Alternate the closed-form K step (fixed M/K) and M/K step (fixed K).

    The relaxed dense-limit problem is quasi-concave, so the fixed point is
    the global real-valued optimum. Each iteration performs both steps and
    appends (M, K, EE) to the trace.
    """
    SinrTarget(gamma).check(prop, hw.epsilon)
    M, K = float(init_M), float(init_K)
    ee = ee_asymptotic_value(M, K, gamma, hw, prop)
    if not ee > 0:
        raise InfeasibleError(f"infeasible starting point (M, K) = ({init_M}, {init_K})")
    trace = [(M, K, ee)]
    for it in range(1, max_iter + 1):
        cbar = M / K
        K = optimal_k_given_cbar(cbar, gamma, hw, prop)
        cbar = optimal_cbar_given_k(K, gamma, hw, prop)
        M = cbar * K
        new = ee_asymptotic_value(M, K, gamma, hw, prop)
        if new < ee * (1.0 - 1e-12):
            raise ConvergenceError(f"EE decreased at iteration {it}: {ee!r} -> {new!r}")
        trace.append((M, K, new))
        done = abs(new - ee) <= tol * new
        ee = new
        if done:
            beta = optimal_beta(M, K, 0.0, gamma, prop, hw.epsilon)
            return RelaxedOptimum(M, K, ee, beta, it, tuple(trace))
    raise ConvergenceError(f"no convergence within {max_iter} iterations")


def _better(cand: tuple[float, int, int], best: tuple[float, int, int] | None) -> bool:
    # higher EE wins; ties go to fewer UEs, then fewer antennas
    if best is None:
        return True
    ee, M, K = cand
    bee, bM, bK = best
    if ee != bee:
        return ee > bee
    return (K, M) < (bK, bM)


def integer_refine(M_real: float, K_real: float, gamma: float, hw: HardwareParams,
                   prop: PropagationParams, radius: int = 3,
                   trace: tuple = ()) -> Optimum:
    """Best integer (M, K) near a relaxed optimum under the dense-limit EE.

    Searches a box of the given radius around the floor/ceiling of the real
    solution and grows it while the maximum sits on a box edge.
    """
    m_lo = max(1, math.floor(M_real) - radius)
    m_hi = math.ceil(M_real) + radius
    k_lo = max(1, math.floor(K_real) - radius)
    k_hi = math.ceil(K_real) + radius
    seen: dict[tuple[int, int], float] = {}
    while True:
        best = None
        for M in range(m_lo, m_hi + 1):
            for K in range(k_lo, k_hi + 1):
                if (M, K) not in seen:
                    seen[(M, K)] = ee_asymptotic_value(M, K, gamma, hw, prop)
                cand = (seen[(M, K)], M, K)
                if cand[0] > 0 and _better(cand, best):
                    best = cand
        if best is None:
            raise InfeasibleError("no feasible integer point near the relaxed optimum")
        _, bM, bK = best
        grow = False
        step = max(radius, 1)
        if bM == m_lo and m_lo > 1:
            m_lo, grow = max(1, m_lo - step), True
        if bM == m_hi:
            m_hi, grow = m_hi + step, True
        if bK == k_lo and k_lo > 1:
            k_lo, grow = max(1, k_lo - step), True
        if bK == k_hi and k_hi < prop.S:
            k_hi, grow = min(prop.S, k_hi + step), True
        if not grow:
            break
    ee, M, K = best
    beta = optimal_beta(M, K, 0.0, gamma, prop, hw.epsilon)
    hood = tuple((m, k, v) for (m, k), v in sorted(seen.items()))
    return Optimum(DesignPoint(beta, math.inf, ASYMPTOTIC, M, K), ee, tuple(trace), hood)


def optimize_asymptotic(gamma: float, hw: HardwareParams, prop: PropagationParams,
                        solver: SolverConfig = SolverConfig(),
                        init: tuple[float, float] = (20.0, 1.0)) -> tuple[RelaxedOptimum, Optimum]:
    """Dense-limit optimum: alternating relaxed solution, then integer refinement.

    If ``init`` is infeasible (for small targets even unit reuse can
    overshoot), the start moves to the optimal antennas per UE for the
    initial K.
    """
    M0, K0 = init
    if not ee_asymptotic_value(M0, K0, gamma, hw, prop) > 0:
        SinrTarget(gamma).check(prop, hw.epsilon)
        M0 = optimal_cbar_given_k(K0, gamma, hw, prop) * K0
    relaxed = alternate_optimize(M0, K0, gamma, hw, prop, solver.tol, solver.max_iter)
    best = integer_refine(relaxed.M, relaxed.K, gamma, hw, prop, solver.radius, relaxed.trace)
    return relaxed, best


def brute_force_ee_max(M_values, K_values, gamma: float, hw: HardwareParams,
                       prop: PropagationParams) -> Optimum:
    """Exhaustive dense-limit EE search over a grid of integer (M, K)."""
    best = None
    for K in sorted(K_values):
        for M in sorted(M_values):
            cand = (ee_asymptotic_value(M, K, gamma, hw, prop), M, K)
            if cand[0] > 0 and _better(cand, best):
                best = cand
    if best is None:
        raise InfeasibleError("no feasible point on the grid")
    ee, M, K = best
    beta = optimal_beta(M, K, 0.0, gamma, prop, hw.epsilon)
    return Optimum(DesignPoint(beta, math.inf, ASYMPTOTIC, M, K), ee)


# --- finite density -------------------------------------------------------

def _beta_of(M, K, x, gamma, alpha, epsilon):
    e2 = epsilon * epsilon
    c = 2.0 / (alpha - 2.0)
    B1 = 4.0 * K / (alpha - 2.0) ** 2 + (K + M * (1.0 - e2)) / (alpha - 1.0) + c * (K + x)
    B2 = (K + x + c * K) * (1.0 + x) + (1.0 - e2) * e2 * M
    den = M * (1.0 - e2) ** 2 - B2 * gamma
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(den > 0, B1 * gamma / den, np.inf)


def _inv_snr_at_beta(M, K, b, gamma, alpha, epsilon):
    """sigma^2/rho at which the required reuse factor equals ``b``.

    The required reuse factor increases with sigma^2/rho, and the level set
    is the positive root of a quadratic. Returns nan when the root is
    negative (the level is already exceeded at zero noise).
    """
    e2 = epsilon * epsilon
    c = 2.0 / (alpha - 2.0)
    B1_0 = 4.0 * K / (alpha - 2.0) ** 2 + (K + M * (1.0 - e2)) / (alpha - 1.0) + c * K
    qa = b * gamma
    qb = gamma * (c + b * (1.0 + K * (1.0 + c)))
    qc = gamma * B1_0 + b * gamma * (K * (1.0 + c) + (1.0 - e2) * e2 * M) - b * M * (1.0 - e2) ** 2
    disc = qb * qb - 4.0 * qa * qc
    with np.errstate(invalid="ignore"):
        root = (-qb + np.sqrt(disc)) / (2.0 * qa)
    return np.where((disc >= 0) & (root >= 0), root, np.nan)


def _ee_finite(M, K, lam, x, gamma, hw, prop):
    """Vectorized EE with the target met exactly; -inf where infeasible."""
    alpha, S = prop.alpha, prop.S
    beta = _beta_of(M, K, x, gamma, alpha, hw.epsilon)
    ok = (beta >= 1.0 - 1e-12) & (beta * K <= S * (1.0 + 1e-12))
    beta = np.clip(beta, 1.0, S / K)
    rate = math.log2(1.0 + gamma)
    payload = K * (1.0 - K * beta / S) * rate
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        rho = prop.noise_var / x
        tx = rho * prop.omega * math.gamma(alpha / 2.0 + 1.0) / (math.pi * lam) ** (alpha / 2.0)
        radiated = (1.0 - (beta * K - 1.0) / S) * tx / hw.eta
        cost = (radiated * K + hw.C0 + hw.C1 * K + hw.D0 * M + hw.D1 * M * K
                + hw.A * payload)
        val = payload / cost
    return np.where(ok & np.isfinite(val), val, -np.inf)


def best_power(M, K, lam, gamma: float, hw: HardwareParams, prop: PropagationParams,
               solver: SolverConfig = SolverConfig()):
    """Optimize sigma^2/rho for each (M, K, lambda); arrays broadcast.

    The feasible interval of sigma^2/rho (reuse factor within [1, S/K]) is
    found in closed form; a golden-section search over its logarithm
    follows, with the lower end extended below the configured bracket
    whenever the optimum lands on it.

    Returns (ee, inv_snr, beta) arrays; infeasible entries get ee = -inf.
    """
    M, K, lam = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (M, K, lam)))
    alpha, eps = prop.alpha, hw.epsilon
    x_hi = _inv_snr_at_beta(M, K, prop.S / K, gamma, alpha, eps)
    x_lo = _inv_snr_at_beta(M, K, 1.0, gamma, alpha, eps)
    feasible = np.isfinite(x_hi) & (x_hi > 0)
    br_lo, br_hi = solver.snr_bracket
    hi = np.log(np.where(feasible, np.minimum(x_hi, max(br_hi, 1.0)), 1.0))
    floor = np.where(np.isfinite(x_lo) & (x_lo > 0), np.log(np.maximum(x_lo, 1e-300)), -np.inf)
    lo = np.maximum(np.minimum(np.log(br_lo), hi - 1.0), floor)
    lo = np.minimum(lo, hi)

    def f(logx):
        return _ee_finite(M, K, lam, np.exp(logx), gamma, hw, prop)

    for _ in range(20):
        logx, val = golden_section_max(f, lo, hi, solver.power_tol)
        stuck = feasible & (logx - lo < 1e-3) & (lo > floor + 1e-9)
        if not np.any(stuck):
            break
        lo = np.where(stuck, np.maximum(lo - 20.0, floor), lo)
    x = np.exp(logx)
    val = np.where(feasible, val, -np.inf)
    beta = _beta_of(M, K, x, gamma, alpha, eps)
    return val, x, beta


def _grid_optimum(lam_of_K, gamma, hw, prop, solver, K_max_cap=None):
    """Exhaustive integer search with finite density depending on K.

    The grid grows while its argmax touches the M or K edge.
    """
    m_max, k_max = solver.max_antennas, solver.max_users
    k_cap = prop.S if K_max_cap is None else min(prop.S, K_max_cap)
    while True:
        k_max = min(k_max, k_cap)
        Ms = np.arange(1, m_max + 1, dtype=float)
        Ks = np.arange(1, k_max + 1, dtype=float)
        MM, KK = np.meshgrid(Ms, Ks, indexing="ij")
        val, x, beta = best_power(MM, KK, lam_of_K(KK), gamma, hw, prop, solver)
        if not np.any(np.isfinite(val)):
            raise InfeasibleError("no feasible (M, K) at this density")
        # ties broken toward fewer UEs, then fewer antennas
        order = np.lexsort((MM.ravel(), KK.ravel(), -val.ravel()))
        i = order[0]
        iM, iK = np.unravel_index(i, MM.shape)
        grow = False
        if iM == m_max - 1:
            m_max, grow = 2 * m_max, True
        if iK == k_max - 1 and k_max < k_cap:
            k_max, grow = 2 * k_max, True
        if not grow:
            break
    hood = []
    for dm in (-1, 0, 1):
        for dk in (-1, 0, 1):
            a, b = iM + dm, iK + dk
            if 0 <= a < MM.shape[0] and 0 <= b < MM.shape[1]:
                hood.append((int(MM[a, b]), int(KK[a, b]), float(val[a, b])))
    M, K = int(MM[iM, iK]), int(KK[iM, iK])
    return M, K, float(val[iM, iK]), float(x[iM, iK]), float(beta[iM, iK]), tuple(hood)


def optimize_at_density(lam: float, gamma: float, hw: HardwareParams, prop: PropagationParams,
                        solver: SolverConfig = SolverConfig()) -> Optimum:
    """Maximize EE at a fixed finite BS density over (M, K, rho), beta meeting the target."""
    if not lam > 0 or math.isinf(lam):
        raise ValueError(f"density must be finite and positive, got {lam}")
    SinrTarget(gamma).check(prop, hw.epsilon)
    M, K, ee, x, beta, hood = _grid_optimum(lambda KK: np.full_like(KK, lam), gamma, hw,
                                            prop, solver)
    design = DesignPoint(beta, prop.noise_var / x, float(lam), M, K)
    return Optimum(design, ee, (), hood)


def optimize_fixed_ue_density(mu: float, gamma: float, hw: HardwareParams,
                              prop: PropagationParams,
                              solver: SolverConfig = SolverConfig()) -> Optimum:
    """Maximize EE when the BS density must equal mu / K."""
    if not mu > 0:
        raise ValueError(f"UE density must be positive, got {mu}")
    SinrTarget(gamma).check(prop, hw.epsilon)
    M, K, ee, x, beta, hood = _grid_optimum(lambda KK: mu / KK, gamma, hw, prop, solver)
    design = DesignPoint(beta, prop.noise_var / x, mu / K, M, K)
    return Optimum(design, ee, (), hood)


def optimize_fixed_configuration(M: int, K: int, lam: float, gamma: float,
                                 hw: HardwareParams, prop: PropagationParams,
                                 solver: SolverConfig = SolverConfig()) -> Optimum:
    """Optimize only power (and hence beta) for a given (M, K, lambda)."""
    SinrTarget(gamma).check(prop, hw.epsilon)
    val, x, beta = best_power(M, K, lam, gamma, hw, prop, solver)
    if not np.isfinite(val):
        raise InfeasibleError(f"(M, K) = ({M}, {K}) cannot meet target {gamma:g}")
    design = DesignPoint(float(beta), prop.noise_var / float(x), float(lam), M, K)
    return Optimum(design, float(val))
