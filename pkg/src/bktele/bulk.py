"""Vectorized batch evaluation over many states at once.

Entries arrays have shape ``(..., 10)`` with the usual column order
``(qa, ka, pa, qb, kb, pb, kq, k1, k2, kp)``; gains and transmissibilities
broadcast against the leading axes. Used by the property and acceptance
sweeps, where per-state Python objects would dominate the runtime.
"""

from __future__ import annotations

import numpy as np

from . import _pykern

#: column indices into an entries array
QA, KA, PA, QB, KB, PB, KQ, K1, K2, KP = range(10)


def split(entries: np.ndarray) -> tuple:
    """Columns of an ``(..., 10)`` entries array as a tuple of views."""
    return tuple(entries[..., i] for i in range(10))


def pack(*cols) -> np.ndarray:
    return np.stack(np.broadcast_arrays(*cols), axis=-1)


def _det3_leading(e):
    qa, ka, pa, qb, kb, pb, kq, k1, k2, kp = e
    return (
        qa * (pa * qb - k2 * k2)
        - ka * (ka * qb - k2 * kq)
        + kq * (ka * k2 - pa * kq)
    )


def nu_bounds(entries: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Smallest symplectic eigenvalue of the state and of its partial
    transpose (plain clamped closed form; no degeneracy safeguard)."""
    e = split(entries)
    qa, ka, pa, qb, kb, pb, kq, k1, k2, kp = e
    det_a = qa * pa - ka * ka
    det_b = qb * pb - kb * kb
    det_c = kq * kp - k1 * k2
    det_v = _pykern._det4(*e)

    def nu_min(delta):
        disc = np.maximum(delta * delta - 4.0 * det_v, 0.0)
        return np.sqrt(np.maximum((delta - np.sqrt(disc)) / 2.0, 0.0))

    return nu_min(det_a + det_b + 2.0 * det_c), nu_min(det_a + det_b - 2.0 * det_c)


def random_entries(rng: np.random.Generator, n: int,
                   margin: float = 1.001) -> np.ndarray:
    """Batched random bona-fide states, same construction as
    :func:`bktele.states.random_physical_state`: random symmetric matrices
    shifted by the smallest ``s * I`` giving positive definiteness (checked
    via leading principal minors) and ``nu_minus >= margin``."""
    w = rng.normal(size=(n, 4, 4))
    m = (w + np.swapaxes(w, 1, 2)) / 2.0
    base = np.stack([
        m[:, 0, 0], m[:, 0, 1], m[:, 1, 1],
        m[:, 2, 2], m[:, 2, 3], m[:, 3, 3],
        m[:, 0, 2], m[:, 0, 3], m[:, 1, 2], m[:, 1, 3],
    ], axis=-1)

    def admissible(shift):
        e = base.copy()
        for col in (QA, PA, QB, PB):
            e[:, col] += shift
        cols = split(e)
        qa, ka, pa, qb, kb, pb, kq, k1, k2, kp = cols
        det2 = qa * pa - ka * ka
        det3 = _det3_leading(cols)
        det4 = _pykern._det4(*cols)
        pd = (qa > 0.0) & (det2 > 0.0) & (det3 > 0.0) & (det4 > 0.0)
        delta = det2 + (qb * pb - kb * kb) + 2.0 * (kq * kp - k1 * k2)
        disc = np.maximum(delta * delta - 4.0 * det4, 0.0)
        nu2 = (delta - np.sqrt(disc)) / 2.0
        return pd & (nu2 >= margin * margin)

    lo = np.zeros(n)
    hi = np.ones(n)
    for _ in range(64):
        bad = ~admissible(hi)
        if not bad.any():
            break
        hi[bad] *= 2.0
    for _ in range(80):
        mid = (lo + hi) / 2.0
        ok = admissible(mid)
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
    out = base.copy()
    for col in (QA, PA, QB, PB):
        out[:, col] += hi
    return out


def epr_variances(entries, g, ta, tb):
    e = split(entries)
    gta2 = (g * ta) ** 2
    tb2 = tb * tb
    gtatb = g * ta * tb
    var_u = gta2 * e[QA] + tb2 * e[QB] - 2.0 * gtatb * e[KQ]
    var_v = gta2 * e[PA] + tb2 * e[PB] + 2.0 * gtatb * e[KP]
    return var_u, var_v


def w_sum(entries, g, ta, tb):
    var_u, var_v = epr_variances(entries, g, ta, tb)
    return var_u + var_v - 2.0 * ((g * ta) ** 2 + tb * tb)


def w_prod(entries, g, ta, tb):
    var_u, var_v = epr_variances(entries, g, ta, tb)
    return var_u * var_v - ((g * ta) ** 2 + tb * tb) ** 2


def w_all(entries, g, ta, tb):
    e = split(entries)
    gta2 = (g * ta) ** 2
    tb2 = tb * tb
    gtatb = g * ta * tb
    sum_bracket = (
        gta2 * (e[QA] + e[PA] - 2.0)
        + tb2 * (e[QB] + e[PB] - 2.0)
        - 2.0 * gtatb * (e[KQ] - e[KP])
    )
    q_bracket = gta2 * (e[QA] - 1.0) + tb2 * (e[QB] - 1.0) - 2.0 * gtatb * e[KQ]
    p_bracket = gta2 * (e[PA] - 1.0) + tb2 * (e[PB] - 1.0) + 2.0 * gtatb * e[KP]
    return 2.0 * (1.0 + g * g) * sum_bracket + q_bracket * p_bracket


def w_rob(entries):
    e = split(entries)
    return (e[QA] + e[PA] - 2.0) * (e[QB] + e[PB] - 2.0) - (e[KQ] - e[KP]) ** 2


def w_full(entries):
    e = split(entries)
    tr_ctc = e[KQ] ** 2 + e[K1] ** 2 + e[K2] ** 2 + e[KP] ** 2
    det_c = e[KQ] * e[KP] - e[K1] * e[K2]
    return (e[QA] + e[PA] - 2.0) * (e[QB] + e[PB] - 2.0) - tr_ctc + 2.0 * det_c


def det_e(entries, g, ta, tb):
    """det E through the attenuate-then-assemble route."""
    return _pykern.det_e(split(entries), g, ta, tb)


def det_e_expanded(entries, g, ta, tb):
    """det E through the scalar expansion in pre-attenuation entries."""
    e = split(entries)
    gta2 = (g * ta) ** 2
    tb2 = tb * tb
    gtatb = g * ta * tb
    sum_bracket = (
        gta2 * (e[QA] + e[PA] - 2.0)
        + tb2 * (e[QB] + e[PB] - 2.0)
        - 2.0 * gtatb * (e[KQ] - e[KP])
    )
    q_bracket = gta2 * (e[QA] - 1.0) + tb2 * (e[QB] - 1.0) - 2.0 * gtatb * e[KQ]
    p_bracket = gta2 * (e[PA] - 1.0) + tb2 * (e[PB] - 1.0) + 2.0 * gtatb * e[KP]
    cross = gta2 * e[KA] - tb2 * e[KB] + gtatb * (e[K1] - e[K2])
    return (
        4.0 * (1.0 + g * g) ** 2
        + 2.0 * (1.0 + g * g) * sum_bracket
        + q_bracket * p_bracket
        - cross * cross
    )


def mean_fidelity(entries, g, ta, tb):
    return 2.0 / np.sqrt(det_e(entries, g, ta, tb))


def cross_term(entries, g, ta, tb):
    e = split(entries)
    return ((g * ta) ** 2 * e[KA] - tb * tb * e[KB]
            + g * ta * tb * (e[K1] - e[K2]))


def canonical_theta(entries, g, ta, tb):
    """Vectorized rotation angle cancelling the cross bracket."""
    e = split(entries)
    gta2 = (g * ta) ** 2
    tb2 = tb * tb
    gtatb = g * ta * tb
    num = gta2 * e[KA] - tb2 * e[KB] + gtatb * (e[K1] - e[K2])
    den = (
        0.5 * gta2 * (e[QA] - e[PA])
        + 0.5 * tb2 * (e[QB] - e[PB])
        - gtatb * (e[KQ] + e[KP])
    )
    theta = 0.5 * np.arctan2(num, den)
    return np.where(num == 0.0, 0.0, theta)


def rotate_opposite(entries, theta):
    """Apply the opposite-angle pair ``(theta, -theta)`` entrywise;
    matches :func:`bktele.states.local_rotation` with those angles."""
    qa, ka, pa, qb, kb, pb, kq, k1, k2, kp = split(entries)
    c, s = np.cos(theta), np.sin(theta)
    c2, s2 = np.cos(2.0 * theta), np.sin(2.0 * theta)
    half_a_sum, half_a_dif = (qa + pa) / 2.0, (qa - pa) / 2.0
    half_b_sum, half_b_dif = (qb + pb) / 2.0, (qb - pb) / 2.0
    return pack(
        half_a_sum + half_a_dif * c2 + ka * s2,
        ka * c2 - half_a_dif * s2,
        half_a_sum - half_a_dif * c2 - ka * s2,
        half_b_sum + half_b_dif * c2 - kb * s2,
        kb * c2 + half_b_dif * s2,
        half_b_sum - half_b_dif * c2 + kb * s2,
        kq * c * c - kp * s * s + (k2 - k1) * c * s,
        k1 * c * c + k2 * s * s + (kq + kp) * c * s,
        k2 * c * c + k1 * s * s - (kq + kp) * c * s,
        kp * c * c - kq * s * s + (k2 - k1) * c * s,
    )
