# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels: same contract as ``_pykern``, with the per-cell
work done in C. Entry order is ``(qa, ka, pa, qb, kb, pb, kq, k1, k2, kp)``.
"""

from libc.math cimport sqrt, fabs, log10, pow, isfinite

import numpy as np

cdef double PHYS_TOL = 1e-9
cdef double WITNESS_TOL = 1e-12

cdef int _UNPHYS = 0
cdef int _SEP = 1
cdef int _REGION_I = 2
cdef int _REGION_II = 3
cdef int _REGION_III = 4
cdef int _REGION_V = 5

UNPHYS = _UNPHYS
SEP = _SEP
REGION_I = _REGION_I
REGION_II = _REGION_II
REGION_III = _REGION_III
REGION_V = _REGION_V

cdef double _LOG_G_LO = -6.0
cdef double _LOG_G_HI = 6.0
cdef int _COARSE_POINTS = 49
cdef double _GOLDEN = 0.6180339887498949


cdef struct Ent:
    double qa, ka, pa, qb, kb, pb, kq, k1, k2, kp


cdef inline Ent _unpack(tuple e):
    cdef Ent r
    r.qa = e[0]; r.ka = e[1]; r.pa = e[2]
    r.qb = e[3]; r.kb = e[4]; r.pb = e[5]
    r.kq = e[6]; r.k1 = e[7]; r.k2 = e[8]; r.kp = e[9]
    return r


cdef inline double _det4(Ent e) noexcept nogil:
    # complementary 2x2 minors along the first two rows
    cdef double t01 = e.qa * e.pa - e.ka * e.ka
    cdef double t02 = e.qa * e.k2 - e.kq * e.ka
    cdef double t03 = e.qa * e.kp - e.k1 * e.ka
    cdef double t12 = e.ka * e.k2 - e.kq * e.pa
    cdef double t13 = e.ka * e.kp - e.k1 * e.pa
    cdef double t23 = e.kq * e.kp - e.k1 * e.k2
    cdef double b01 = e.kq * e.kp - e.k2 * e.k1
    cdef double b02 = e.kq * e.kb - e.qb * e.k1
    cdef double b03 = e.kq * e.pb - e.kb * e.k1
    cdef double b12 = e.k2 * e.kb - e.qb * e.kp
    cdef double b13 = e.k2 * e.pb - e.kb * e.kp
    cdef double b23 = e.qb * e.pb - e.kb * e.kb
    return t01 * b23 - t02 * b13 + t03 * b12 + t12 * b03 - t13 * b02 + t23 * b01


cdef inline Ent _attenuated(Ent e, double ta, double tb) noexcept nogil:
    cdef Ent r
    cdef double ta2 = ta * ta, tb2 = tb * tb, tab = ta * tb
    r.qa = ta2 * (e.qa - 1.0) + 1.0
    r.ka = ta2 * e.ka
    r.pa = ta2 * (e.pa - 1.0) + 1.0
    r.qb = tb2 * (e.qb - 1.0) + 1.0
    r.kb = tb2 * e.kb
    r.pb = tb2 * (e.pb - 1.0) + 1.0
    r.kq = tab * e.kq
    r.k1 = tab * e.k1
    r.k2 = tab * e.k2
    r.kp = tab * e.kp
    return r


cdef inline double _det_e(Ent e, double g, double ta, double tb) noexcept nogil:
    cdef Ent t = _attenuated(e, ta, tb)
    cdef double g2 = g * g
    cdef double e00 = (1.0 + g2) + g2 * t.qa - 2.0 * g * t.kq + t.qb
    cdef double e11 = (1.0 + g2) + g2 * t.pa + 2.0 * g * t.kp + t.pb
    cdef double e01 = -g2 * t.ka - g * (t.k1 - t.k2) + t.kb
    return e00 * e11 - e01 * e01


cdef inline double _nu_min_sq(double delta, double det_v) noexcept nogil:
    cdef double disc = delta * delta - 4.0 * det_v
    if disc < 0.0:
        disc = 0.0
    cdef double nu2 = (delta - sqrt(disc)) / 2.0
    return nu2 if nu2 > 0.0 else 0.0


cdef inline int _classify(Ent e, double g, double ta, double tb) noexcept nogil:
    cdef double det_a = e.qa * e.pa - e.ka * e.ka
    cdef double det_b = e.qb * e.pb - e.kb * e.kb
    cdef double det_c = e.kq * e.kp - e.k1 * e.k2
    cdef double det_v = _det4(e)
    cdef double nu_minus = sqrt(_nu_min_sq(det_a + det_b + 2.0 * det_c, det_v))
    if nu_minus < 1.0 - PHYS_TOL:
        return _UNPHYS
    cdef double nu_pt_minus = sqrt(_nu_min_sq(det_a + det_b - 2.0 * det_c, det_v))
    if nu_pt_minus >= 1.0 - WITNESS_TOL:
        return _SEP

    cdef double gta2 = (g * ta) * (g * ta)
    cdef double tb2 = tb * tb
    cdef double gtatb = g * ta * tb
    cdef double w_sum = gta2 * (e.qa + e.pa - 2.0) + tb2 * (e.qb + e.pb - 2.0) \
        - 2.0 * gtatb * (e.kq - e.kp)
    cdef double w_rob = (e.qa + e.pa - 2.0) * (e.qb + e.pb - 2.0) \
        - (e.kq - e.kp) * (e.kq - e.kp)

    cdef double d = _det_e(e, g, ta, tb)
    cdef int quantum = 0
    if d > 0.0 and 2.0 / sqrt(d) > 1.0 / (1.0 + g * g) + WITNESS_TOL:
        quantum = 1

    if w_sum < -WITNESS_TOL and w_rob < -WITNESS_TOL:
        return _REGION_I
    if quantum:
        return _REGION_II
    if w_rob < -WITNESS_TOL:
        return _REGION_V
    return _REGION_III


def classify_one(tuple e, double g, double ta, double tb):
    """Region code for a single entry tuple."""
    return _classify(_unpack(e), g, ta, tb)


def det_e(e, double g, double ta, double tb):
    """det E for a single pre-attenuation entry tuple."""
    return _det_e(_unpack(tuple(e)), g, ta, tb)


def region_grid(double q_diag, double p_diag, kq_bars, kp_bars,
                double g, double ta, double tb):
    """Region codes over the symmetric family; shape
    ``(len(kq_bars), len(kp_bars))``, rows indexed by ``kq_bar``."""
    cdef double[::1] kq = np.ascontiguousarray(kq_bars, dtype=np.float64)
    cdef double[::1] kp = np.ascontiguousarray(kp_bars, dtype=np.float64)
    out = np.empty((kq.shape[0], kp.shape[0]), dtype=np.int8)
    cdef signed char[:, ::1] ov = out
    cdef Py_ssize_t i, j
    cdef Ent e
    e.ka = 0.0; e.kb = 0.0; e.k1 = 0.0; e.k2 = 0.0
    e.qa = q_diag; e.pa = p_diag; e.qb = q_diag; e.pb = p_diag
    with nogil:
        for i in range(kq.shape[0]):
            e.kq = kq[i] * q_diag
            for j in range(kp.shape[0]):
                e.kp = kp[j] * p_diag
                ov[i, j] = <signed char> _classify(e, g, ta, tb)
    return out


def surface_grid(e, double g, tas, tbs):
    """Mean fidelity over the transmissibility grid; shape
    ``(len(tas), len(tbs))``."""
    cdef Ent ent = _unpack(tuple(e))
    cdef double[::1] ta = np.ascontiguousarray(tas, dtype=np.float64)
    cdef double[::1] tb = np.ascontiguousarray(tbs, dtype=np.float64)
    out = np.empty((ta.shape[0], tb.shape[0]), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(ta.shape[0]):
            for j in range(tb.shape[0]):
                ov[i, j] = 2.0 / sqrt(_det_e(ent, g, ta[i], tb[j]))
    return out


cdef inline double _ratio_log(Ent e, double lg, double ta, double tb) noexcept nogil:
    cdef double g = pow(10.0, lg)
    cdef double d = _det_e(e, g, ta, tb)
    if d <= 0.0:
        return -1e300
    return 2.0 * (1.0 + g * g) / sqrt(d)


cdef void _best_gain(Ent e, double ta, double tb, double *out_g,
                     double *out_ratio) noexcept nogil:
    cdef double step = (_LOG_G_HI - _LOG_G_LO) / (_COARSE_POINTS - 1)
    cdef double best_lg = _LOG_G_LO
    cdef double best_val = -1e300
    cdef double lg, val
    cdef int k
    for k in range(_COARSE_POINTS):
        lg = _LOG_G_LO + step * k
        val = _ratio_log(e, lg, ta, tb)
        if val > best_val:
            best_val = val
            best_lg = lg
    # interior optimum of the sum witness as an extra candidate
    cdef double denom = ta * (e.qa + e.pa - 2.0)
    cdef double seed
    if denom != 0.0:
        seed = tb * (e.kq - e.kp) / denom
        if seed > 0.0 and isfinite(seed):
            lg = log10(seed)
            if lg < _LOG_G_LO:
                lg = _LOG_G_LO
            elif lg > _LOG_G_HI:
                lg = _LOG_G_HI
            val = _ratio_log(e, lg, ta, tb)
            if val > best_val:
                best_val = val
                best_lg = lg

    cdef double a = best_lg - step
    cdef double b = best_lg + step
    if a < _LOG_G_LO:
        a = _LOG_G_LO
    if b > _LOG_G_HI:
        b = _LOG_G_HI
    cdef double x1 = b - _GOLDEN * (b - a)
    cdef double x2 = a + _GOLDEN * (b - a)
    cdef double f1 = _ratio_log(e, x1, ta, tb)
    cdef double f2 = _ratio_log(e, x2, ta, tb)
    while b - a > 1e-8:
        if f1 < f2:
            a = x1
            x1 = x2; f1 = f2
            x2 = a + _GOLDEN * (b - a)
            f2 = _ratio_log(e, x2, ta, tb)
        else:
            b = x2
            x2 = x1; f2 = f1
            x1 = b - _GOLDEN * (b - a)
            f1 = _ratio_log(e, x1, ta, tb)
    cdef double lg_mid = (a + b) / 2.0
    cdef double val_mid = _ratio_log(e, lg_mid, ta, tb)
    if val_mid < best_val:
        lg_mid = best_lg
        val_mid = best_val
    out_g[0] = pow(10.0, lg_mid)
    out_ratio[0] = val_mid


def best_gain_ratio(e, double ta, double tb):
    """Maximize the fidelity-to-threshold ratio over the gain; returns
    ``(best_g, best_ratio)``."""
    cdef Ent ent = _unpack(tuple(e))
    cdef double g = 0.0, ratio = 0.0
    _best_gain(ent, ta, tb, &g, &ratio)
    return g, ratio


def robustness_grid(e, tas, tbs):
    """Per-cell gain search over the transmissibility grid; returns
    ``(best_g, best_ratio)`` arrays."""
    cdef Ent ent = _unpack(tuple(e))
    cdef double[::1] ta = np.ascontiguousarray(tas, dtype=np.float64)
    cdef double[::1] tb = np.ascontiguousarray(tbs, dtype=np.float64)
    best_g = np.empty((ta.shape[0], tb.shape[0]), dtype=np.float64)
    best_ratio = np.empty_like(best_g)
    cdef double[:, ::1] gv = best_g
    cdef double[:, ::1] rv = best_ratio
    cdef Py_ssize_t i, j
    cdef double g, r
    with nogil:
        for i in range(ta.shape[0]):
            for j in range(tb.shape[0]):
                _best_gain(ent, ta[i], tb[j], &g, &r)
                gv[i, j] = g
                rv[i, j] = r
    return best_g, best_ratio
