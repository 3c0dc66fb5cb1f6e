"""Typical-UE geometries: PPP base stations with UEs uniform in Voronoi cells.

The typical UE sits at the origin. Its serving BS is drawn at a Rayleigh
distance, the other BSs form a PPP outside that radius, and every kept
interfering cell gets K UEs drawn uniformly over its Voronoi cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import Delaunay, cKDTree

from .se import GeometryRealization

try:  # Shewchuk's Triangle is several times faster than Qhull in 2-D
    import triangle as _triangle
except ImportError:  # pragma: no cover - exercised only without the extra
    _triangle = None

SAMPLERS = ("polygon", "rejection")


@dataclass(frozen=True)
class MonteCarloConfig:
    """Monte Carlo knobs.

    ``disk_radius_factor`` scales the radius of the disk whose expected BS
    count equals ``max_interferers``; 1.15 gives an expected count of 1.32x
    the cap. ``max_interferers = 0`` switches interference off.
    """

    trials: int = 10_000
    max_interferers: int = 1000
    disk_radius_factor: float = 1.15
    seed: int = 0
    ue_rejection_cap: int = 10_000
    sampler: str = "polygon"
    workers: int = 1
    max_resamples: int = 1000

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 0:
            raise ValueError(f"trials must be a nonnegative integer, got {self.trials}")
        if int(self.max_interferers) != self.max_interferers or self.max_interferers < 0:
            raise ValueError("max_interferers must be a nonnegative integer")
        if not self.disk_radius_factor >= 1:
            raise ValueError("disk_radius_factor must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.ue_rejection_cap < 1:
            raise ValueError("ue_rejection_cap must be positive")
        if self.sampler not in SAMPLERS:
            raise ValueError(f"sampler must be one of {SAMPLERS}, got {self.sampler!r}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for one trial, a pure function of (seed, index)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


class ResampleLimitExceeded(RuntimeError):
    pass


def serving_distance_scale(lam: float) -> float:
    """Rayleigh scale of the distance to the nearest BS."""
    return 1.0 / math.sqrt(2.0 * math.pi * lam)


def _annulus_ppp(lam, r_in, r_out, rng):
    n = rng.poisson(lam * math.pi * (r_out ** 2 - r_in ** 2))
    r = np.sqrt(rng.uniform(r_in ** 2, r_out ** 2, n))
    th = rng.uniform(0.0, 2.0 * math.pi, n)
    return np.column_stack((r * np.cos(th), r * np.sin(th)))


def _circumcenters(pts, simplices):
    A = pts[simplices]
    B = A[:, 1:, :] - A[:, :1, :]
    bx, by, cx, cy = B[:, 0, 0], B[:, 0, 1], B[:, 1, 0], B[:, 1, 1]
    d = 2.0 * (bx * cy - by * cx)
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return np.column_stack((ux, uy)) + A[:, 0, :], np.hypot(ux, uy)


def _delaunay(pts):
    """Delaunay triangles and their neighbors (entry i opposite corner i, -1 on the hull)."""
    if _triangle is not None:
        out = _triangle.triangulate({"vertices": pts}, "nQ")
        if len(out["vertices"]) == len(pts):
            return out["triangles"], out["neighbors"]
    tri = Delaunay(pts)
    return tri.simplices, tri.neighbors


def _voronoi_fans(pts, ncell, R):
    """Exact Voronoi cells of points 1..ncell, as far as the disk allows.

    A cell is certified when every incident Delaunay triangle has its
    circumcircle inside the sampled disk of radius R: no BS outside the
    disk can then cut it. Certified cells are returned as fans of triangles
    (generator, Voronoi vertex, Voronoi vertex), grouped by generator. For
    the other kept cells the largest incident circumradius is returned: each
    such cell lies inside the disk of that radius around its generator.
    Cells of hull points are unbounded and get an infinite radius.
    """
    s, nb = _delaunay(pts)
    cc, rc = _circumcenters(pts, s)
    tri_ok = (np.hypot(cc[:, 0], cc[:, 1]) + rc <= R) & (nb >= 0).all(axis=1)
    certified = np.ones(len(pts), dtype=bool)
    certified[s[~tri_ok].ravel()] = False
    pending = np.nonzero(~certified[1:ncell + 1])[0] + 1
    reach = np.zeros(len(pending))
    if pending.size:
        slot = np.full(len(pts), -1)
        slot[pending] = np.arange(pending.size)
        for col in range(3):
            j = slot[s[:, col]]
            hit = j >= 0
            np.maximum.at(reach, j[hit], rc[hit])
        on_hull = np.zeros(len(pts), dtype=bool)
        ht, hv = np.nonzero(nb < 0)
        on_hull[s[ht, (hv + 1) % 3]] = True
        on_hull[s[ht, (hv + 2) % 3]] = True
        reach[on_hull[pending]] = np.inf
    # each interior Delaunay edge, opposite vertex v of triangle t, is dual
    # to the Voronoi edge between the circumcenters of t and its neighbor
    n = nb.ravel()
    tv = np.flatnonzero(n > np.arange(n.size) // 3)
    t, v, n = tv // 3, tv % 3, n[tv]
    gen = np.concatenate((s[t, (v + 1) % 3], s[t, (v + 2) % 3]))
    sel = np.flatnonzero((gen <= ncell) & (gen >= 1))
    sel = sel[certified[gen[sel]]]
    key = gen[sel]
    if ncell < 2 ** 16:
        key = key.astype(np.uint16)  # stable sort of small integers is a radix sort
    sel = sel[np.argsort(key, kind="stable")]
    gen = gen[sel]
    edge = sel % t.size
    return (gen, cc[t[edge]], cc[n[edge]]), pending, reach


def _uniform_in_fans(pts, fans, K, rng):
    """K uniform points in each cell of the fan decomposition (cells in order)."""
    gen, c1, c2 = fans
    p = pts[gen]
    u, w = c1 - p, c2 - p
    cum = np.cumsum(np.abs(u[:, 0] * w[:, 1] - u[:, 1] * w[:, 0]))
    starts = np.flatnonzero(np.r_[True, gen[1:] != gen[:-1]])
    ends = np.r_[starts[1:], gen.size]
    base = np.r_[0.0, cum[ends[:-1] - 1]]
    r = rng.random((3, starts.size, K))
    # pick a fan with probability proportional to its area, then a uniform
    # point in the triangle (p, p+u, p+w)
    target = base[:, None] + r[0] * (cum[ends - 1] - base)[:, None]
    idx = np.searchsorted(cum, target, side="right")
    np.minimum(idx, (ends - 1)[:, None], out=idx)
    coef = np.empty(idx.shape + (3,))
    coef[..., 0] = 1.0
    np.sqrt(r[1], out=coef[..., 1])
    np.multiply(coef[..., 1], r[2], out=coef[..., 2])
    coef[..., 1] -= coef[..., 2]
    corners = np.concatenate((p, u, w), axis=1)[idx].reshape(idx.shape + (3, 2))
    return gen[starts], np.einsum("ijk,ijkd->ijd", coef, corners)


def _rejection_in_disks(pts, owners, radii, K, cap, rng, batch=4):
    """K points per owner, uniform over its cell, proposed from a disk.

    Each cell must lie inside the disk of the given radius around its
    generator, and ``pts`` must contain every BS that can cut it. Every
    pending UE gets ``batch`` proposals per round and keeps the first one
    that lands in its cell. Returns None when some UE exceeds ``cap``
    proposals.
    """
    centers = pts[owners]
    dist = np.hypot(pts[:, 0], pts[:, 1])
    # only BSs that can be nearer than the owner to some proposal matter
    lo = np.hypot(centers[:, 0], centers[:, 1]) - 2.0 * radii
    local = np.flatnonzero(dist >= lo.min())
    tree = cKDTree(pts[local])
    owner = np.repeat(owners, K)
    rad = np.repeat(radii, K)
    out = np.empty((owner.size, 2))
    pending = np.arange(owner.size)
    draws = 0
    while pending.size:
        m = pending.size
        r = rad[pending, None] * np.sqrt(rng.uniform(size=(m, batch)))
        th = rng.uniform(0.0, 2.0 * math.pi, (m, batch))
        cand = pts[owner[pending], None, :] + np.stack((r * np.cos(th), r * np.sin(th)), axis=-1)
        _, nearest = tree.query(cand.reshape(-1, 2))
        ok = (local[nearest].reshape(m, batch) == owner[pending, None])
        hit = ok.any(axis=1)
        first = ok.argmax(axis=1)
        out[pending[hit]] = cand[hit, first[hit]]
        pending = pending[~hit]
        draws += batch
        if pending.size and draws >= cap:
            return None
    return out.reshape(len(owners), K, 2)


def _uniform_by_rejection(pts, ncell, K, lam, cap, rng):
    """Rejection sampling from a disk of radius 3/sqrt(pi*lam) around each BS."""
    radius = 3.0 / math.sqrt(math.pi * lam)
    owners = np.arange(1, ncell + 1)
    return _rejection_in_disks(pts, owners, np.full(ncell, radius), K, cap, rng)


def _sample_once(lam, K, cfg, rng):
    d00 = rng.rayleigh(serving_distance_scale(lam))
    phi = rng.uniform(0.0, 2.0 * math.pi)
    bs0 = d00 * np.array([math.cos(phi), math.sin(phi)])
    cap = cfg.max_interferers
    if cap == 0:
        return GeometryRealization(d00, bs0, np.zeros((0, 2)), np.zeros((0, K)),
                                   np.zeros((0, K)), ue_positions=np.zeros((0, K, 2)))
    R = math.sqrt(d00 ** 2 + cfg.disk_radius_factor ** 2 * cap / (math.pi * lam))
    others = _annulus_ppp(lam, d00, R, rng)
    # the PPP is independent over disjoint regions, so growing the disk by
    # an outer annulus keeps the sample exact
    while True:
        while len(others) < cap + 3:
            others, R = np.vstack((others, _annulus_ppp(lam, R, 1.25 * R, rng))), 1.25 * R
        others = others[np.argsort(np.hypot(others[:, 0], others[:, 1]), kind="stable")]
        pts = np.vstack((bs0, others))
        if cfg.sampler == "rejection":
            ue = _uniform_by_rejection(pts, cap, K, lam, cfg.ue_rejection_cap, rng)
            if ue is None:
                return None
            break
        fans, pending, reach = _voronoi_fans(pts, cap, R)
        # slivers on the rim of the disk have huge circumradii; growing the
        # disk pushes them outward instead of sampling far beyond it
        if not pending.size or np.max(np.hypot(pts[pending, 0], pts[pending, 1])
                                      + 2.0 * reach) <= 1.5 * R:
            break
        others, R = np.vstack((others, _annulus_ppp(lam, R, 1.25 * R, rng))), 1.25 * R
    if cfg.sampler == "polygon":
        ue = np.empty((cap, K, 2))
        done, placed = _uniform_in_fans(pts, fans, K, rng)
        ue[done - 1] = placed
        if pending.size:
            # rim cells: extend the PPP far enough that nothing beyond it can
            # reach them, then sample against the extended set
            R2 = float(np.max(np.hypot(pts[pending, 0], pts[pending, 1]) + 2.0 * reach))
            if R2 > R:
                pts = np.vstack((pts, _annulus_ppp(lam, R, R2, rng)))
            rim = _rejection_in_disks(pts, pending, reach, K, cfg.ue_rejection_cap, rng)
            if rim is None:
                return None
            ue[pending - 1] = rim
    bs = others[:cap]
    d_own, d_cross = ue - bs[:, None, :], ue - bs0
    own = np.sqrt(np.einsum("ijk,ijk->ij", d_own, d_own))
    cross = np.sqrt(np.einsum("ijk,ijk->ij", d_cross, d_cross))
    return GeometryRealization(d00, bs0, bs, own, cross, ue_positions=ue)


def sample_typical_geometry(lam: float, K: int, cfg: MonteCarloConfig,
                            rng: np.random.Generator,
                            return_stats: bool = False):
    """Draw one typical-UE geometry.

    With the rejection sampler a UE exceeding the draw cap triggers a fresh
    geometry; the number of such restarts is returned alongside the
    realization when ``return_stats`` is set, as ``(geometry, resamples)``.
    """
    if not lam > 0 or math.isinf(lam):
        raise ValueError(f"BS density must be finite and positive, got {lam}")
    if int(K) != K or K < 1:
        raise ValueError(f"K must be a positive integer, got {K}")
    resamples = 0
    while True:
        geom = _sample_once(lam, int(K), cfg, rng)
        if geom is not None:
            break
        resamples += 1
        if resamples > cfg.max_resamples:
            raise ResampleLimitExceeded(f"gave up after {resamples} geometry resamples")
    return (geom, resamples) if return_stats else geom
