"""Canonical quadrature basis: the fidelity-preserving rotation that cancels
the off-diagonal of the output-noise matrix.

Rotating the two modes by opposite angles leaves the average fidelity
unchanged. Within that one-parameter family there is always an angle that
zeroes the weighted cross bracket
``(g t_a)^2 k_a - t_b^2 k_b + g t_a t_b (k_1 - k_2)`` -- the quantity whose
square is subtracted inside ``det E``. In the rotated basis ``det E``
factorizes into the two diagonal brackets and the full witness becomes an
exact threshold test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CanonicalizationFailed
from .states import ChannelParams, TwoModeState, local_rotation, make_state

#: post-rotation bound on the residual cross bracket
RESIDUAL_TOL = 1e-9


def cross_term(state: TwoModeState, ch: ChannelParams, g: float) -> float:
    """The weighted cross bracket; equals minus the off-diagonal of the
    output-noise matrix built from the attenuated state."""
    e = state.entries
    gta2 = (g * ch.t_a) ** 2
    tb2 = ch.t_b * ch.t_b
    gtatb = g * ch.t_a * ch.t_b
    return gta2 * e.ka - tb2 * e.kb + gtatb * (e.k1 - e.k2)


def invariance_angle(state: TwoModeState, ch: ChannelParams, g: float) -> float:
    """Rotation angle (applied as ``(theta, -theta)``) that cancels the cross
    bracket; normalized to ``(-pi/2, pi/2]``. Any branch shifted by ``pi/2``
    cancels it as well."""
    e = state.entries
    gta2 = (g * ch.t_a) ** 2
    tb2 = ch.t_b * ch.t_b
    gtatb = g * ch.t_a * ch.t_b
    num = gta2 * e.ka - tb2 * e.kb + gtatb * (e.k1 - e.k2)
    den = (
        0.5 * gta2 * (e.qa - e.pa)
        + 0.5 * tb2 * (e.qb - e.pb)
        - gtatb * (e.kq + e.kp)
    )
    if num == 0.0:
        return 0.0  # already canonical; atan2(0, den<0) would give pi/2
    return 0.5 * math.atan2(num, den)


@dataclass(frozen=True)
class CanonicalBasisResult:
    theta: float
    state: TwoModeState
    residual_cross_term: float


def canonicalize(state: TwoModeState, ch: ChannelParams, g: float) -> CanonicalBasisResult:
    """Rotate to the basis where the cross bracket vanishes; the fidelity is
    untouched because the two angles are opposite."""
    theta = invariance_angle(state, ch, g)
    rotated = local_rotation(state, theta, -theta)
    residual = cross_term(rotated, ch, g)
    if abs(residual) > RESIDUAL_TOL:
        raise CanonicalizationFailed(
            f"cross bracket {residual} after rotating by {theta}"
        )
    return CanonicalBasisResult(theta=theta, state=rotated, residual_cross_term=residual)


def diagonalize_correlation(state: TwoModeState) -> TwoModeState:
    """Rotate the two modes independently so the correlation block becomes
    diagonal (a signed singular-value decomposition restricted to proper
    rotations).

    Unlike :func:`canonicalize` this uses unconstrained angles, so it
    preserves ``w_full`` and the traces of the diagonal blocks but not the
    fidelity.
    """
    c = state.corr
    u, _, vt = np.linalg.svd(c)
    # fold reflections into signs of the diagonal entries so both factors
    # are proper rotations
    flip = np.diag([1.0, -1.0])
    if np.linalg.det(u) < 0.0:
        u = u @ flip
    if np.linalg.det(vt) < 0.0:
        vt = flip @ vt
    ra = u.T
    rb = vt
    a = ra @ state.alice @ ra.T
    b = rb @ state.bob @ rb.T
    return make_state(a, b, ra @ c @ rb.T)
