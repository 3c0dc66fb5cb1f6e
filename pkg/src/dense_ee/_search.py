import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, lo, hi, tol=1e-9):
    """Maximize a unimodal ``f`` on [lo, hi] by golden-section search.

    Works elementwise on arrays: ``lo`` and ``hi`` may be arrays and ``f``
    must then evaluate a whole array of abscissae at once. Returns
    ``(x_best, f_best)`` with the same shape as the broadcast bounds.
    """
    lo, hi = np.broadcast_arrays(np.asarray(lo, dtype=float), np.asarray(hi, dtype=float))
    lo, hi = lo.copy(), hi.copy()
    width = float(np.max(hi - lo)) if lo.size else 0.0
    if width <= tol:
        x = 0.5 * (lo + hi)
        return x, f(x)

    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    n = int(math.ceil(math.log(tol / width) / math.log(INV_PHI)))
    for _ in range(n):
        left = fc >= fd
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
        x_new = np.where(left, hi - INV_PHI * (hi - lo), lo + INV_PHI * (hi - lo))
        f_new = f(x_new)
        c, d = np.where(left, x_new, d), np.where(left, c, x_new)
        fc, fd = np.where(left, f_new, fd), np.where(left, fc, f_new)
    best_left = fc >= fd
    return np.where(best_left, c, d), np.where(best_left, fc, fd)
