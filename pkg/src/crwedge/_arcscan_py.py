"""Pure-numpy twin of the compiled arc-scan kernel.

Selected at import time by :mod:`crwedge.kernels` when the compiled module is
unavailable (or CRWEDGE_PURE_PYTHON=1).  Semantics match `_arcscan` exactly:
uniform scan at ``resolution`` angles, then bisection of every run boundary
down to ``tol``.
"""

import numpy as np

TWO_PI = 2.0 * np.pi


def _member_scalar(phi, p, q, strict):
    val = p * np.cos(phi) + q * np.sin(phi)
    ok = np.where(strict, val > 0.0, val >= 0.0)
    return bool(np.all(ok))


def _scan_mask(p, q, strict, resolution):
    phis = np.arange(resolution) * (TWO_PI / resolution)
    # vals[j, i] = p_i cos(phi_j) + q_i sin(phi_j)
    vals = np.outer(np.cos(phis), p) + np.outer(np.sin(phis), q)
    ok = np.where(strict[None, :], vals > 0.0, vals >= 0.0)
    return np.all(ok, axis=1)


def _runs_from_mask(mask):
    """Yield (start, end) sample indices of circular runs of True."""
    resolution = mask.shape[0]
    starts = np.nonzero(mask & ~np.roll(mask, 1))[0]
    runs = []
    for j in starts:
        e = j
        while mask[(e + 1) % resolution]:
            e = (e + 1) % resolution
        runs.append((int(j), int(e)))
    return runs


def _transition(lo, hi, lo_member, p, q, strict, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _member_scalar(mid, p, q, strict) == lo_member:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def arc_measure(p, q, strict, resolution, tol=1e-6):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    strict = np.asarray(strict, dtype=bool)
    mask = _scan_mask(p, q, strict, resolution)
    npass = int(mask.sum())
    if npass == 0:
        return 0.0
    if npass == resolution:
        return TWO_PI
    step = TWO_PI / resolution
    total = 0.0
    for j, e in _runs_from_mask(mask):
        left = _transition((j - 1) * step, j * step, False, p, q, strict, tol)
        right = _transition(e * step, (e + 1) * step, True, p, q, strict, tol)
        if right < left:
            right += TWO_PI
        total += right - left
    return total


def arc_measure_batch(P, Q, strict, resolution, tol=1e-6):
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    strict = np.asarray(strict, dtype=bool)
    nsamples = P.shape[0]
    out = np.empty(nsamples, dtype=float)

    phis = np.arange(resolution) * (TWO_PI / resolution)
    cosv, sinv = np.cos(phis), np.sin(phis)

    # chunked scan keeps the (chunk, resolution, m) tensor small
    chunk = max(1, min(nsamples, 4096))
    for lo_idx in range(0, nsamples, chunk):
        hi_idx = min(nsamples, lo_idx + chunk)
        vals = (P[lo_idx:hi_idx, None, :] * cosv[None, :, None]
                + Q[lo_idx:hi_idx, None, :] * sinv[None, :, None])
        ok = np.where(strict[None, None, :], vals > 0.0, vals >= 0.0)
        masks = np.all(ok, axis=2)
        npass = masks.sum(axis=1)
        for s in range(lo_idx, hi_idx):
            n = int(npass[s - lo_idx])
            if n == 0:
                out[s] = 0.0
            elif n == resolution:
                out[s] = TWO_PI
            else:
                mask = masks[s - lo_idx]
                step = TWO_PI / resolution
                total = 0.0
                for j, e in _runs_from_mask(mask):
                    left = _transition((j - 1) * step, j * step, False,
                                       P[s], Q[s], strict, tol)
                    right = _transition(e * step, (e + 1) * step, True,
                                        P[s], Q[s], strict, tol)
                    if right < left:
                        right += TWO_PI
                    total += right - left
                out[s] = total
    return out
