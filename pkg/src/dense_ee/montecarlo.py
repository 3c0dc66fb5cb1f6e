"""Monte Carlo estimates of the average SE and of the distance moments.

Every trial draws from its own stream, a pure function of (seed, trial
index), and results are aggregated in trial order with exact summation, so
estimates do not depend on the number of worker processes.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .geometry import MonteCarloConfig, sample_typical_geometry, trial_rng
from .params import DesignPoint, PropagationParams
from .se import interference_sums, sinr_from_sums

MOMENT_MODELS = ("ppp", "voronoi")
MOMENT_BLOCK = 100


@dataclass(frozen=True)
class Estimate:
    """Sample mean with its standard error; unpacks as ``(mean, sem)``."""

    mean: float
    sem: float
    trials: int
    resamples: int = 0

    def __iter__(self):
        yield self.mean
        yield self.sem


def summarize(values) -> tuple[float, float]:
    """Mean and standard error of the mean, with exact summation."""
    vals = [float(v) for v in values]
    n = len(vals)
    if n == 0:
        return math.nan, math.nan
    mean = math.fsum(vals) / n
    if n == 1:
        return mean, math.nan
    var = math.fsum((v - mean) ** 2 for v in vals) / (n - 1)
    return mean, math.sqrt(var / n)


def run_trials(fn, indices, workers: int = 1, chunk: int = 64) -> list:
    """Evaluate ``fn(index)`` for every index, results in index order."""
    indices = list(indices)
    if workers <= 1 or len(indices) < 2 * chunk:
        return [fn(i) for i in indices]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, indices, chunksize=chunk))


# --- average SE -------------------------------------------------------------

def _se_trial(index, lam, M, K, beta, inv_snr, alpha, epsilon, S, cfg):
    rng = trial_rng(cfg.seed, index)
    geom, resamples = sample_typical_geometry(lam, K, cfg, rng, return_stats=True)
    sums = interference_sums(geom, alpha)
    sinr = sinr_from_sums(M, K, beta, inv_snr, epsilon, *sums)
    prelog = max(0.0, 1.0 - beta * K / S)
    return dict(trial=index, d00k=float(geom.d00k), interferers=geom.n_cells,
                sinr=sinr, se=prelog * math.log2(1.0 + sinr), resamples=resamples)


def mc_average_se(point: DesignPoint, prop: PropagationParams, epsilon: float,
                  cfg: MonteCarloConfig, dump=None) -> Estimate:
    """Average over sampled geometries of the SE given each geometry.

    Pilot collisions enter with their mean 1/beta. Truncating the
    interferers makes this an optimistic estimate of the true average SE.
    ``dump`` may be a path or a text stream receiving one JSON record per
    trial.
    """
    if point.is_asymptotic:
        raise ValueError("Monte Carlo needs a finite BS density")
    if point.beta is None or not point.beta >= 1:
        raise ValueError("a reuse factor beta >= 1 is required")
    fn = partial(_se_trial, lam=float(point.lam), M=point.M, K=int(point.K), beta=point.beta,
                 inv_snr=point.inv_snr(prop.noise_var), alpha=prop.alpha, epsilon=epsilon,
                 S=prop.S, cfg=cfg)
    records = run_trials(fn, range(cfg.trials), cfg.workers)
    if dump is not None:
        _write_ndjson(dump, records)
    mean, sem = summarize(r["se"] for r in records)
    return Estimate(mean, sem, len(records), sum(r["resamples"] for r in records))


def _write_ndjson(dest, records):
    if hasattr(dest, "write"):
        for r in records:
            dest.write(json.dumps(r) + "\n")
        return
    with open(dest, "w", encoding="utf-8") as fh:
        _write_ndjson(fh, records)


# --- distance moments ---------------------------------------------------------

def distance_power_mean(nu: float, lam: float) -> float:
    """E[d^nu] for the distance from a point to its nearest BS."""
    return math.gamma(nu / 2.0 + 1.0) / (math.pi * lam) ** (nu / 2.0)


def moment_tail(lam: float, alpha: float, kappa: int, R: float) -> float:
    """Mean contribution to the ratio sum from UEs beyond distance R."""
    p = kappa * alpha
    return 2.0 * math.pi * lam * distance_power_mean(p, lam) * R ** (2.0 - p) / (p - 2.0)


def pair_tail(lam: float, alpha: float, R: float) -> float:
    """Mean of q_i*q_k over two distinct UEs of the same cell beyond R."""
    m = distance_power_mean(alpha, lam)
    return 2.0 * math.pi * lam * m * m * R ** (2.0 - 2.0 * alpha) / (2.0 * alpha - 2.0)


@dataclass(frozen=True)
class MomentEstimate:
    name: str
    closed_form: float
    estimate: float
    sem: float
    tail: float = 0.0
    upper_bound_only: bool = False

    def z_score(self) -> float:
        return (self.estimate - self.closed_form) / self.sem


def _moment_radius(lam, cfg):
    cap = max(cfg.max_interferers, 1)
    return cfg.disk_radius_factor * math.sqrt(cap / (math.pi * lam))


def _ppp_block(block, lam, alpha, K, R, seed, n_trials):
    """Per-trial sums for one block of trials under the displacement model.

    Each interfering BS inside the disk contributes K UEs whose own
    distances are i.i.d. nearest-BS distances and whose distances to the
    typical BS are uniform over the disk; a UE only interferes when it is
    not closer to the typical BS than to its own.
    """
    rng = trial_rng(seed, block)
    start = block * MOMENT_BLOCK
    n = min(MOMENT_BLOCK, n_trials - start)
    counts = rng.poisson(lam * math.pi * R * R, n)
    total = int(counts.sum())
    # squared distances: own is Rayleigh, cross is uniform over the disk
    own2 = np.log1p(-rng.random((total, K)))
    own2 *= -1.0 / (math.pi * lam)
    cross2 = R * R * rng.random((total, K))
    w = own2 / cross2
    q = np.where(w <= 1.0, w ** (alpha / 2.0), 0.0)
    trial = np.repeat(np.arange(n), counts)
    q0 = q[:, 0]
    row = q.sum(axis=1)
    out = np.empty((n, 6))
    out[:, 0] = np.bincount(trial, q0, n)
    out[:, 1] = np.bincount(trial, q0 * q0, n)
    out[:, 2] = np.bincount(trial, row, n)
    out[:, 3] = np.bincount(trial, (q * q).sum(axis=1), n)
    out[:, 4] = np.bincount(trial, row * q0, n)
    out[:, 5] = counts
    return out


def _voronoi_trial(index, lam, alpha, K, cfg):
    geom = sample_typical_geometry(lam, K, cfg, trial_rng(cfg.seed, index))
    q = (geom.own_dist / geom.cross_dist) ** alpha
    q0 = q[:, 0]
    row = q.sum(axis=1)
    return np.array([q0.sum(), (q0 * q0).sum(), row.sum(), (q * q).sum(),
                     (row * q0).sum(), geom.n_cells])


def _raw_sums(lam, alpha, K, cfg, model):
    if model == "ppp":
        R = _moment_radius(lam, cfg)
        blocks = range(-(-cfg.trials // MOMENT_BLOCK))
        fn = partial(_ppp_block, lam=lam, alpha=alpha, K=K, R=R, seed=cfg.seed,
                     n_trials=cfg.trials)
        parts = run_trials(fn, blocks, cfg.workers, chunk=1)
        return np.vstack(parts), R
    fn = partial(_voronoi_trial, lam=lam, alpha=alpha, K=K, cfg=cfg)
    return np.array(run_trials(fn, range(cfg.trials), cfg.workers)), None


def mc_moments(lam: float, alpha: float, K: int, cfg: MonteCarloConfig,
               model: str = "ppp") -> dict[str, MomentEstimate]:
    """All distance-ratio moments entering the SE bound, from one set of trials.

    Keys: ``ratio_k1`` and ``ratio_k2`` (the pilot-sharing UE's ratio to the
    powers alpha and 2 alpha), ``all_ue_k1`` and ``all_ue_k2`` (summed over
    the K UEs per cell), ``distinct_pair`` (products over different cells),
    and ``same_cell`` (products within a cell, bounded from above only).

    ``model="ppp"`` samples the displacement model in which the moments are
    derived, and adds the exact mean contribution from beyond the sampling
    disk, so the estimates are unbiased for the unbounded network.
    ``model="voronoi"`` uses the full Voronoi geometry with the configured
    interferer cap and no correction.
    """
    if model not in MOMENT_MODELS:
        raise ValueError(f"model must be one of {MOMENT_MODELS}, got {model!r}")
    if not alpha > 2:
        raise ValueError("pathloss exponent must exceed 2")
    if cfg.trials < 2:
        raise ValueError("need at least two trials")
    raw, R = _raw_sums(lam, alpha, int(K), cfg, model)
    m1, m2, all1, all2, same = (raw[:, i].copy() for i in range(5))
    t1 = t2 = t11 = 0.0
    if R is not None:
        t1, t2 = moment_tail(lam, alpha, 1, R), moment_tail(lam, alpha, 2, R)
        t11 = pair_tail(lam, alpha, R)
    # distinct-cell pairs: the disk part, plus its products with the
    # independent outer part, plus the mean of the outer pairs
    distinct = all1 * m1 - same + t1 * (all1 + K * m1) + K * t1 * t1
    m1 += t1
    m2 += t2
    all1 += K * t1
    all2 += K * t2
    same += t2 + (K - 1) * t11
    c = 2.0 / (alpha - 2.0)
    rows = [
        ("ratio_k1", c, m1, t1, False),
        ("ratio_k2", 2.0 / (2.0 * alpha - 2.0), m2, t2, False),
        ("all_ue_k1", K * c, all1, K * t1, False),
        ("all_ue_k2", K * 2.0 / (2.0 * alpha - 2.0), all2, K * t2, False),
        ("distinct_pair", K * c * c, distinct, t1 * (2.0 * K * c), False),
        ("same_cell", K / (alpha - 1.0), same, t2 + (K - 1) * t11, True),
    ]
    out = {}
    for name, cf, vals, tail, bound in rows:
        mean, sem = summarize(vals)
        out[name] = MomentEstimate(name, cf, mean, sem, tail, bound)
    return out


def mc_distance_moment(lam: float, alpha: float, kappa: int, cfg: MonteCarloConfig,
                       K: int = 1, model: str = "ppp") -> MomentEstimate:
    """Moment of the ratio sum with exponent kappa*alpha.

    With K = 1 the sum runs over the pilot-sharing UE of every cell and
    tends to 2/(kappa*alpha - 2); with K > 1 it runs over all UEs and tends
    to K times that.
    """
    if kappa not in (1, 2):
        raise ValueError("kappa must be 1 or 2")
    if not kappa * alpha > 2:
        raise ValueError("kappa*alpha must exceed 2")
    res = mc_moments(lam, alpha, K, cfg, model)
    return res[f"ratio_k{kappa}"] if K == 1 else res[f"all_ue_k{kappa}"]


def mc_cross_moment(lam: float, alpha: float, K: int, cfg: MonteCarloConfig,
                    model: str = "ppp") -> tuple[MomentEstimate, MomentEstimate]:
    """(distinct-pair, same-cell) parts of the cross moment."""
    res = mc_moments(lam, alpha, K, cfg, model)
    return res["distinct_pair"], res["same_cell"]
