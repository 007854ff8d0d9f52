"""Pure-numpy scan kernels.

Same contract as the compiled module ``_corekern``; grid functions are
vectorized, the per-cell gain search is a plain loop. All functions take the
ten covariance entries in the order
``(qa, ka, pa, qb, kb, pb, kq, k1, k2, kp)``.
"""

from __future__ import annotations

import math

import numpy as np

PHYS_TOL = 1e-9
WITNESS_TOL = 1e-12

# region codes shared with the compiled kernel and the CSV encoding
UNPHYS = 0
SEP = 1
REGION_I = 2
REGION_II = 3
REGION_III = 4
REGION_V = 5

_LOG_G_LO = -6.0
_LOG_G_HI = 6.0
_COARSE_POINTS = 49
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _det4(qa, ka, pa, qb, kb, pb, kq, k1, k2, kp):
    """Determinant of the assembled 4x4 covariance matrix, expanded in
    complementary 2x2 minors along the first two rows (branch-free,
    broadcast-friendly)."""
    r0 = (qa, ka, kq, k1)
    r1 = (ka, pa, k2, kp)
    r2 = (kq, k2, qb, kb)
    r3 = (k1, kp, kb, pb)

    def top(i, j):
        return r0[i] * r1[j] - r0[j] * r1[i]

    def bot(i, j):
        return r2[i] * r3[j] - r2[j] * r3[i]

    return (
        top(0, 1) * bot(2, 3)
        - top(0, 2) * bot(1, 3)
        + top(0, 3) * bot(1, 2)
        + top(1, 2) * bot(0, 3)
        - top(1, 3) * bot(0, 2)
        + top(2, 3) * bot(0, 1)
    )


def _attenuated(e, ta, tb):
    qa, ka, pa, qb, kb, pb, kq, k1, k2, kp = e
    ta2, tb2, tab = ta * ta, tb * tb, ta * tb
    return (
        ta2 * (qa - 1.0) + 1.0, ta2 * ka, ta2 * (pa - 1.0) + 1.0,
        tb2 * (qb - 1.0) + 1.0, tb2 * kb, tb2 * (pb - 1.0) + 1.0,
        tab * kq, tab * k1, tab * k2, tab * kp,
    )


def _det_e_attenuated(et, g):
    qa, ka, pa, qb, kb, pb, kq, k1, k2, kp = et
    g2 = g * g
    e00 = (1.0 + g2) + g2 * qa - 2.0 * g * kq + qb
    e11 = (1.0 + g2) + g2 * pa + 2.0 * g * kp + pb
    e01 = -g2 * ka - g * (k1 - k2) + kb
    return e00 * e11 - e01 * e01


def det_e(e, g, ta, tb):
    """det E for pre-attenuation entries ``e`` (scalars or broadcastable
    arrays)."""
    return _det_e_attenuated(_attenuated(e, ta, tb), g)


def _nu_pair(det_a, det_b, det_c, det_v):
    delta = det_a + det_b + 2.0 * det_c
    delta_pt = det_a + det_b - 2.0 * det_c

    def nu_min(d):
        disc = np.maximum(d * d - 4.0 * det_v, 0.0)
        return np.sqrt(np.maximum((d - np.sqrt(disc)) / 2.0, 0.0))

    return nu_min(delta), nu_min(delta_pt)


def classify_cells(e, g, ta, tb):
    """Region codes for (broadcastable) entry arrays at fixed ``(g, ta, tb)``.

    Precedence: unphysical, separable, robust-quantum, fragile-quantum,
    gain-rescuable entangled, remaining entangled.
    """
    qa, ka, pa, qb, kb, pb, kq, k1, k2, kp = (np.asarray(x, dtype=float) for x in e)
    det_a = qa * pa - ka * ka
    det_b = qb * pb - kb * kb
    det_c = kq * kp - k1 * k2
    det_v = _det4(qa, ka, pa, qb, kb, pb, kq, k1, k2, kp)
    nu_minus, nu_pt_minus = _nu_pair(det_a, det_b, det_c, det_v)

    gta2 = (g * ta) ** 2
    tb2 = tb * tb
    gtatb = g * ta * tb
    w_sum = gta2 * (qa + pa - 2.0) + tb2 * (qb + pb - 2.0) - 2.0 * gtatb * (kq - kp)
    w_rob = (qa + pa - 2.0) * (qb + pb - 2.0) - (kq - kp) ** 2

    det_e_val = det_e((qa, ka, pa, qb, kb, pb, kq, k1, k2, kp), g, ta, tb)
    with np.errstate(invalid="ignore", divide="ignore"):
        fid = 2.0 / np.sqrt(det_e_val)
    quantum = fid > 1.0 / (1.0 + g * g) + WITNESS_TOL

    conditions = [
        nu_minus < 1.0 - PHYS_TOL,
        nu_pt_minus >= 1.0 - WITNESS_TOL,
        (w_sum < -WITNESS_TOL) & (w_rob < -WITNESS_TOL),
        quantum,
        w_rob < -WITNESS_TOL,
    ]
    codes = [UNPHYS, SEP, REGION_I, REGION_II, REGION_V]
    return np.select(conditions, codes, default=REGION_III).astype(np.int8)


def classify_one(e, g, ta, tb):
    """Region code for a single entry tuple."""
    return int(classify_cells(e, g, ta, tb))


def region_grid(q_diag, p_diag, kq_bars, kp_bars, g, ta, tb):
    """Region codes over the symmetric family
    ``A = B = diag(Q, P), C = diag(kq_bar * Q, kp_bar * P)``; output shape
    ``(len(kq_bars), len(kp_bars))``, rows indexed by ``kq_bar``."""
    kq = np.asarray(kq_bars, dtype=float)[:, None] * q_diag
    kp = np.asarray(kp_bars, dtype=float)[None, :] * p_diag
    kq, kp = np.broadcast_arrays(kq, kp)
    zero = np.zeros_like(kq)
    e = (
        np.full_like(kq, q_diag), zero, np.full_like(kq, p_diag),
        np.full_like(kq, q_diag), zero, np.full_like(kq, p_diag),
        kq, zero, zero, kp,
    )
    return classify_cells(e, g, ta, tb)


def surface_grid(e, g, tas, tbs):
    """Mean fidelity over the transmissibility grid; output shape
    ``(len(tas), len(tbs))``."""
    ta = np.asarray(tas, dtype=float)[:, None]
    tb = np.asarray(tbs, dtype=float)[None, :]
    return 2.0 / np.sqrt(det_e(e, g, ta, tb))


def _seed_gain(e, ta, tb):
    qa, ka, pa, qb, kb, pb, kq, k1, k2, kp = e
    denom = ta * (qa + pa - 2.0)
    if denom == 0.0:
        return None
    g = tb * (kq - kp) / denom
    return g if g > 0.0 and math.isfinite(g) else None


def best_gain_ratio(e, ta, tb):
    """Maximize the fidelity-to-threshold ratio over the gain.

    Coarse scan over ``log10 g in [-6, 6]`` (the interior optimum of the sum
    witness added as a seed candidate), then golden-section refinement to
    1e-8 in ``log10 g``. Returns ``(best_g, best_ratio)``.
    """
    e = tuple(float(x) for x in e)

    def ratio_log(lg):
        g = 10.0 ** lg
        d = det_e(e, g, ta, tb)
        if d <= 0.0:
            return float("-inf")
        return 2.0 * (1.0 + g * g) / math.sqrt(d)

    logs = np.linspace(_LOG_G_LO, _LOG_G_HI, _COARSE_POINTS)
    values = [ratio_log(lg) for lg in logs]
    seed = _seed_gain(e, ta, tb)
    if seed is not None:
        lg_seed = min(max(math.log10(seed), _LOG_G_LO), _LOG_G_HI)
        values.append(ratio_log(lg_seed))
        logs = np.append(logs, lg_seed)
    order = int(np.argmax(values))
    best_lg, best_val = float(logs[order]), float(values[order])

    step = (_LOG_G_HI - _LOG_G_LO) / (_COARSE_POINTS - 1)
    a = max(best_lg - step, _LOG_G_LO)
    b = min(best_lg + step, _LOG_G_HI)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = ratio_log(x1), ratio_log(x2)
    while b - a > 1e-8:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = ratio_log(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = ratio_log(x1)
    lg_mid = (a + b) / 2.0
    val_mid = ratio_log(lg_mid)
    if val_mid < best_val:
        lg_mid, val_mid = best_lg, best_val
    return 10.0 ** lg_mid, val_mid


def robustness_grid(e, tas, tbs):
    """Per-cell gain search over the transmissibility grid; returns
    ``(best_g, best_ratio)`` arrays of shape ``(len(tas), len(tbs))``."""
    tas = np.asarray(tas, dtype=float)
    tbs = np.asarray(tbs, dtype=float)
    best_g = np.empty((tas.size, tbs.size))
    best_ratio = np.empty_like(best_g)
    e = tuple(float(x) for x in e)
    for i, ta in enumerate(tas):
        for j, tb in enumerate(tbs):
            best_g[i, j], best_ratio[i, j] = best_gain_ratio(e, ta, tb)
    return best_g, best_ratio
