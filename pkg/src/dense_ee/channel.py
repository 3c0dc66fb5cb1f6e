"""Channel-level check of the effective SINR, term by term.

For one fixed geometry the uplink is simulated symbol by symbol: Rayleigh
channels, a pilot with UE distortion noise, random pilot collisions, the
MMSE estimate, and the MRC combiner. Each expectation that makes up the
effective SINR is estimated from the samples and set against its closed
form.

Units are normalized to omega = 1 and rho = 1, so the receiver noise
variance equals ``inv_snr``. All terms are invariant to this scaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import trial_rng
from .se import GeometryRealization, sinr_from_sums

DEFAULT_CHUNK = 100_000


@dataclass(frozen=True)
class ChannelSampleBatch:
    """One batch of channel-level randomness for a fixed geometry.

    ``h_own[n, i]`` is the channel from UE i of the typical cell to the
    typical BS and ``h_other[n, j, i]`` the one from UE i of interfering
    cell j, each an M-vector. ``distortion[n, 0]`` is the pilot distortion
    of the typical UE and ``distortion[n, 1 + j]`` that of the
    pilot-sharing UE of cell j. ``collide[n, j]`` marks whether that UE
    used the typical UE's pilot in sample n.
    """

    h_own: np.ndarray
    h_other: np.ndarray
    distortion: np.ndarray
    pilot_noise: np.ndarray
    data_noise: np.ndarray
    collide: np.ndarray

    @property
    def size(self) -> int:
        return self.h_own.shape[0]


@dataclass(frozen=True)
class TermCheck:
    name: str
    closed_form: float
    estimate: float
    sem: float

    @property
    def rel_err(self) -> float:
        if self.closed_form == 0:
            return abs(self.estimate)
        return abs(self.estimate - self.closed_form) / abs(self.closed_form)

    def passed(self, rtol: float = 0.02) -> bool:
        return self.rel_err <= rtol


def complex_normal(rng: np.random.Generator, shape, var) -> np.ndarray:
    """Circularly symmetric complex Gaussian samples; ``var`` broadcasts."""
    z = rng.standard_normal(tuple(shape) + (2,)).view(np.complex128)[..., 0]
    return z * np.sqrt(np.asarray(var, dtype=float) / 2.0)


def example_geometry(K: int = 2, alpha: float = 3.76,
                     ratios=(0.5, 0.3, 0.15)) -> GeometryRealization:
    """Small fixed geometry with the given pilot-UE ratios, one cell each.

    The typical UE sits 0.1 km from its BS. In cell j the UE sharing the
    pilot has (own / cross distance)^alpha equal to ``ratios[j]``; the other
    UEs of that cell use a ratio shrinking geometrically in the UE index.
    """
    r = np.asarray(ratios, dtype=float)
    if r.ndim != 1 or np.any(r <= 0) or np.any(r >= 1):
        raise ValueError("ratios must lie in (0, 1)")
    cross = np.linspace(0.3, 0.3 + 0.2 * (r.size - 1), r.size)
    ratio = r[:, None] * 0.7 ** np.arange(K)[None, :]
    own = cross[:, None] * ratio ** (1.0 / alpha)
    bs = np.column_stack((cross, np.zeros_like(cross)))
    return GeometryRealization(0.1, np.array([0.1, 0.0]), bs, own,
                               np.repeat(cross[:, None], K, axis=1))


def _layout(geom, alpha, intra_dist):
    """Transmit powers and channel variances with omega = rho = 1."""
    k = geom.pilot_index
    if intra_dist is None:
        d_own = np.full(geom.K, geom.d00k)
    else:
        d_own = np.asarray(intra_dist, dtype=float).copy()
        if d_own.shape != (geom.K,) or np.any(d_own <= 0):
            raise ValueError("intra_dist needs one positive distance per UE of the typical cell")
        d_own[k] = geom.d00k
    return dict(p_own=d_own ** alpha, var_own=d_own ** -alpha,
                p_other=geom.own_dist ** alpha, var_other=geom.cross_dist ** -alpha)


def draw_channels(geom: GeometryRealization, M: int, alpha: float, beta: float,
                  inv_snr: float, epsilon: float, n: int, rng: np.random.Generator,
                  intra_dist=None) -> ChannelSampleBatch:
    """Draw ``n`` independent channel realizations for a fixed geometry.

    ``intra_dist`` gives the distances of the typical cell's UEs to their
    BS; by default they all equal the typical UE's distance.
    """
    lay = _layout(geom, alpha, intra_dist)
    J, K = geom.own_dist.shape
    return ChannelSampleBatch(
        h_own=complex_normal(rng, (n, K, M), lay["var_own"][None, :, None]),
        h_other=complex_normal(rng, (n, J, K, M), lay["var_other"][None, :, :, None]),
        distortion=complex_normal(rng, (n, J + 1), epsilon * epsilon),
        pilot_noise=complex_normal(rng, (n, M), inv_snr),
        data_noise=complex_normal(rng, (n, M), inv_snr),
        collide=rng.random((n, J)) < 1.0 / beta,
    )


def _sample_terms(batch, lay, k, inv_snr, epsilon):
    """Per-sample values whose means are the expectations of the SINR."""
    e2 = epsilon * epsilon
    amp = math.sqrt(1.0 - e2)
    p_own, p_other = lay["p_own"], lay["p_other"]
    ratio_k = p_other[:, k] * lay["var_other"][:, k]
    M = batch.h_own.shape[-1]

    # received pilot of the typical UE
    z = ((amp + batch.distortion[:, 0]) * math.sqrt(p_own[k]))[:, None] * batch.h_own[:, k]
    gain = (amp + batch.distortion[:, 1:]) * np.sqrt(p_other[:, k]) * batch.collide
    z += np.einsum("nj,njm->nm", gain, batch.h_other[:, :, k])
    z += batch.pilot_noise
    tau = 1.0 + batch.collide @ ratio_k + inv_snr
    h_hat = (math.sqrt((1.0 - e2) / p_own[k]) / tau)[:, None] * z
    nu = tau * math.sqrt(p_own[k] / ((1.0 - e2) * M))
    v = nu[:, None] * h_hat

    vc = v.conj()
    g_own = np.einsum("nm,nim->ni", vc, batch.h_own)
    g_other = np.einsum("nm,njim->nji", vc, batch.h_other)
    pw_own = p_own * np.abs(g_own) ** 2
    pw_other = p_other * np.abs(g_other) ** 2
    contaminating = pw_other[:, :, k].sum(axis=1)
    others = np.ones(p_own.size, dtype=bool)
    others[k] = False
    return dict(
        desired_amplitude=math.sqrt(p_own[k]) * g_own[:, k],
        self_power=pw_own[:, k],
        intra_cell=pw_own[:, others].sum(axis=1),
        non_contaminating=pw_other[:, :, others].sum(axis=(1, 2)),
        contaminating=contaminating,
        # subtracting the non-coherent part, whose mean is known exactly
        # given the collisions, leaves the coherent pilot contamination
        coherent_contamination=contaminating - tau * ratio_k.sum(),
        noise=np.abs(np.einsum("nm,nm->n", vc, batch.data_noise)) ** 2,
        tau=tau,
    )


def _assemble_sinr(m, epsilon):
    e2 = epsilon * epsilon
    desired = abs(m["desired_amplitude"]) ** 2
    den = ((1.0 - e2) * (m["self_power"] - desired) + e2 * m["self_power"]
           + m["intra_cell"] + m["non_contaminating"] + m["contaminating"] + m["noise"])
    return (1.0 - e2) * desired / den


def closed_form_terms(geom: GeometryRealization, M: int, alpha: float, beta: float,
                      inv_snr: float, epsilon: float) -> dict[str, float]:
    """Closed-form value of every expectation in the effective SINR."""
    e2 = epsilon * epsilon
    k = geom.pilot_index
    ratio = (geom.own_dist / geom.cross_dist) ** alpha
    rk = ratio[:, k]
    rest = np.delete(ratio, k, axis=1)
    tau = 1.0 + math.fsum(rk.tolist()) / beta + inv_snr
    coherent = math.fsum((rk * rk).tolist()) * (1.0 - e2) * M / beta
    out = dict(
        desired=(1.0 - e2) * M,
        self_power=(1.0 - e2) * M + tau,
        intra_cell=(geom.K - 1) * tau,
        non_contaminating=math.fsum(rest.ravel().tolist()) * tau,
        contaminating=coherent + math.fsum(rk.tolist()) * tau,
        coherent_contamination=coherent,
        noise=inv_snr * tau,
        tau=tau,
    )
    out["sinr"] = sinr_from_sums(M, geom.K, beta, inv_snr, epsilon,
                                 math.fsum(ratio.ravel().tolist()),
                                 math.fsum(rk.tolist()), math.fsum((rk * rk).tolist()))
    return out


def validate_effective_sinr_terms(geom: GeometryRealization, M: int, K: int, beta: float,
                                  inv_snr: float, epsilon: float, samples: int,
                                  seed: int = 0, alpha: float = 3.76,
                                  chunk: int = DEFAULT_CHUNK,
                                  intra_dist=None) -> list[TermCheck]:
    """Sampled versus closed-form value of each term of the effective SINR.

    Samples are drawn in chunks; chunk c uses stream (seed, c), so results
    depend only on ``seed``, ``samples`` and ``chunk``. The SEM of the
    assembled SINR comes from the spread of the per-chunk values and is NaN
    with a single chunk. With the scalar distortion noise of each UE the
    closed forms are exact for epsilon = 0 and agree to O(epsilon^2)
    otherwise.
    """
    if geom.K != K:
        raise ValueError(f"geometry has {geom.K} UEs per cell, expected K={K}")
    if not beta >= 1:
        raise ValueError("pilot reuse factor must be at least 1")
    if samples < 2:
        raise ValueError("need at least two samples")
    lay = _layout(geom, alpha, intra_dist)
    k = geom.pilot_index
    sums, sq, count = {}, {}, 0
    chunk_sinr = []
    for c, start in enumerate(range(0, samples, chunk)):
        n = min(chunk, samples - start)
        rng = trial_rng(seed, c)
        batch = draw_channels(geom, M, alpha, beta, inv_snr, epsilon, n, rng, intra_dist)
        vals = _sample_terms(batch, lay, k, inv_snr, epsilon)
        phase = vals["desired_amplitude"]
        for name, x in vals.items():
            sums[name] = sums.get(name, 0.0) + x.sum()
            if name != "desired_amplitude":
                sq[name] = sq.get(name, 0.0) + (x * x).sum()
        sq["desired_amplitude"] = sq.get("desired_amplitude", 0.0) + (np.abs(phase) ** 2).sum()
        count += n
        chunk_sinr.append(_assemble_sinr({name: x.mean() for name, x in vals.items()}, epsilon))

    mean = {name: s / count for name, s in sums.items()}
    sem = {}
    for name in mean:
        if name == "desired_amplitude":
            continue
        var = max(sq[name] / count - mean[name] ** 2, 0.0) * count / (count - 1)
        sem[name] = math.sqrt(var / count)
    amp = mean["desired_amplitude"]
    var_amp = max(sq["desired_amplitude"] / count - abs(amp) ** 2, 0.0) * count / (count - 1)
    # delta method; half the variance lies along the direction of the mean
    desired_sem = 2.0 * abs(amp) * math.sqrt(var_amp / 2.0 / count)

    cf = closed_form_terms(geom, M, alpha, beta, inv_snr, epsilon)
    report = [TermCheck("desired", cf["desired"], abs(amp) ** 2, desired_sem)]
    for name in ("self_power", "intra_cell", "non_contaminating", "contaminating",
                 "coherent_contamination", "noise", "tau"):
        report.append(TermCheck(name, cf[name], float(mean[name]), sem[name]))
    sinr_sem = (float(np.std(chunk_sinr, ddof=1) / math.sqrt(len(chunk_sinr)))
                if len(chunk_sinr) > 1 else math.nan)
    report.append(TermCheck("sinr", cf["sinr"], _assemble_sinr(mean, epsilon), sinr_sem))
    return report
