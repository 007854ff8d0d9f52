"""Witness hierarchy for genuinely quantum teleportation, the gain optimum,
attenuation-robustness conditions, and the region classifier.

All witnesses are evaluated on *pre-attenuation* covariance entries; the
channel transmissibilities enter explicitly through the weights
``(g t_a)^2``, ``t_b^2`` and ``g t_a t_b``. With that bookkeeping the full
witness reproduces the fidelity-threshold comparison exactly (after the
basis choice of :mod:`bktele.symmetry`).

Sign conventions: negative means quantum. ``w_all < 0`` iff the average
fidelity beats the classical threshold (canonical basis); ``w_sum < 0`` is
sufficient for that in any basis; ``w_prod < 0`` is necessary; ``w_rob < 0``
means some gain keeps the process quantum under every partial attenuation;
``w_full`` is the basis-free form of ``w_rob``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from . import _kernels
from .errors import DegenerateAlice, InvalidEta
from .fidelity import cft, mean_fidelity
from .states import ChannelParams, TwoModeState, WITNESS_TOL, is_physical, ppt_entangled


class Region(enum.Enum):
    """Five-way classification of a configuration ``(state, channel, gain)``.

    The values are the CSV codes used by the scan engines.
    """

    UNPHYSICAL = "UNPHYS"
    SEPARABLE = "SEP"
    ROBUST_QUANTUM = "I"
    FRAGILE_QUANTUM = "II"
    ENTANGLED_CLASSICAL = "III"
    ENTANGLED_GAIN_RESCUABLE = "V"


#: mapping from kernel integer codes to labels
REGION_FROM_CODE = {
    _kernels.UNPHYS: Region.UNPHYSICAL,
    _kernels.SEP: Region.SEPARABLE,
    _kernels.REGION_I: Region.ROBUST_QUANTUM,
    _kernels.REGION_II: Region.FRAGILE_QUANTUM,
    _kernels.REGION_III: Region.ENTANGLED_CLASSICAL,
    _kernels.REGION_V: Region.ENTANGLED_GAIN_RESCUABLE,
}


class EprVariances(NamedTuple):
    """Variances of ``u = g t_a q_A - t_b q_B`` and ``v = g t_a p_A + t_b p_B``."""

    var_u: float
    var_v: float


class DuanCheck(NamedTuple):
    var_sum: float
    bound: float
    satisfied: bool


@dataclass(frozen=True)
class GainOptimum:
    """Gain minimizing the sum witness. ``out_of_domain`` flags a negative
    raw optimum (gains are restricted to ``g >= 0``)."""

    value: float
    out_of_domain: bool


class GainSearch(NamedTuple):
    """Result of maximizing fidelity/threshold over the gain."""

    best_g: float
    best_ratio: float


@dataclass(frozen=True)
class WitnessReport:
    """All scalar diagnostics of one configuration."""

    w_all: float
    w_sum: float
    w_prod: float
    w_rob: float
    w_full: float
    var_u: float
    var_v: float
    fidelity: float
    cft: float
    eta: Optional[float]

    def as_dict(self) -> dict:
        return {
            "w_all": self.w_all, "w_sum": self.w_sum, "w_prod": self.w_prod,
            "w_rob": self.w_rob, "w_full": self.w_full,
            "var_u": self.var_u, "var_v": self.var_v,
            "fidelity": self.fidelity, "cft": self.cft, "eta": self.eta,
        }


def _weights(ch: ChannelParams, g: float) -> tuple[float, float, float]:
    gta2 = (g * ch.t_a) ** 2
    tb2 = ch.t_b * ch.t_b
    gtatb = g * ch.t_a * ch.t_b
    return gta2, tb2, gtatb


def epr_variances(state: TwoModeState, ch: ChannelParams, g: float) -> EprVariances:
    """Variances of the weighted EPR combinations on the pre-attenuation
    state."""
    e = state.entries
    gta2, tb2, gtatb = _weights(ch, g)
    var_u = gta2 * e.qa + tb2 * e.qb - 2.0 * gtatb * e.kq
    var_v = gta2 * e.pa + tb2 * e.pb + 2.0 * gtatb * e.kp
    return EprVariances(var_u, var_v)


def w_sum(state: TwoModeState, ch: ChannelParams, g: float) -> float:
    """Sum witness: ``var_u + var_v - 2 [(g t_a)^2 + t_b^2]``; negative is
    sufficient for a genuinely quantum process, in any basis."""
    var_u, var_v = epr_variances(state, ch, g)
    gta2, tb2, _ = _weights(ch, g)
    return var_u + var_v - 2.0 * (gta2 + tb2)


def w_prod(state: TwoModeState, ch: ChannelParams, g: float) -> float:
    """Product witness: ``var_u var_v - [(g t_a)^2 + t_b^2]^2``; negative is
    necessary for a genuinely quantum process (canonical basis)."""
    var_u, var_v = epr_variances(state, ch, g)
    gta2, tb2, _ = _weights(ch, g)
    return var_u * var_v - (gta2 + tb2) ** 2


def w_all(state: TwoModeState, ch: ChannelParams, g: float) -> float:
    """Full witness. In the canonical basis, ``w_all >= 0`` is necessary and
    sufficient for the fidelity to stay at or below the classical threshold."""
    e = state.entries
    gta2, tb2, gtatb = _weights(ch, g)
    sum_bracket = (
        gta2 * (e.qa + e.pa - 2.0)
        + tb2 * (e.qb + e.pb - 2.0)
        - 2.0 * gtatb * (e.kq - e.kp)
    )
    q_bracket = gta2 * (e.qa - 1.0) + tb2 * (e.qb - 1.0) - 2.0 * gtatb * e.kq
    p_bracket = gta2 * (e.pa - 1.0) + tb2 * (e.pb - 1.0) + 2.0 * gtatb * e.kp
    return 2.0 * (1.0 + g * g) * sum_bracket + q_bracket * p_bracket


def w_rob(state: TwoModeState) -> float:
    """Robustness witness ``(tr A - 2)(tr B - 2) - (k_q - k_p)^2``,
    independent of channel and gain; negative means some gain keeps the
    teleportation quantum for every partial attenuation."""
    e = state.entries
    return (e.qa + e.pa - 2.0) * (e.qb + e.pb - 2.0) - (e.kq - e.kp) ** 2


def w_full(state: TwoModeState) -> float:
    """Basis-free robustness witness
    ``(tr A - 2)(tr B - 2) - tr(C^T C) + 2 det C``; invariant under arbitrary
    independent local rotations and equal to ``w_rob`` whenever the
    correlation block is diagonal."""
    e = state.entries
    tr_ctc = e.kq ** 2 + e.k1 ** 2 + e.k2 ** 2 + e.kp ** 2
    det_c = e.kq * e.kp - e.k1 * e.k2
    return (e.qa + e.pa - 2.0) * (e.qb + e.pb - 2.0) - tr_ctc + 2.0 * det_c


def duan_check(state: TwoModeState, eta: float) -> DuanCheck:
    """Two-variance inseparability test with weights ``eta`` and ``1/eta``:
    passes when ``var(eta q_A - q_B/eta) + var(eta p_A + p_B/eta)`` drops
    below ``2 (eta^2 + 1/eta^2)``."""
    if not eta > 0.0:
        raise InvalidEta(f"eta must be strictly positive, got {eta}")
    e = state.entries
    eta2 = eta * eta
    inv2 = 1.0 / eta2
    var_sum = (
        eta2 * (e.qa + e.pa) + inv2 * (e.qb + e.pb) - 2.0 * e.kq + 2.0 * e.kp
    )
    bound = 2.0 * (eta2 + inv2)
    return DuanCheck(var_sum, bound, var_sum < bound - WITNESS_TOL)


def optimal_gain(state: TwoModeState, ch: ChannelParams) -> GainOptimum:
    """Gain at the interior minimum of the sum witness,
    ``t_b (k_q - k_p) / (t_a (tr A - 2))``."""
    e = state.entries
    tr_a_noise = e.qa + e.pa - 2.0
    if abs(tr_a_noise) < 1e-12:
        raise DegenerateAlice(
            "tr A = 2: the sum witness is linear in the gain, no interior optimum"
        )
    g = float(ch.t_b * (e.kq - e.kp) / (ch.t_a * tr_a_noise))
    return GainOptimum(value=g, out_of_domain=g < 0.0)


def max_quantum_ratio(state: TwoModeState, ch: ChannelParams) -> GainSearch:
    """Maximize ``fidelity / threshold`` over the gain (coarse log scan plus
    golden-section refinement, seeded at the sum-witness optimum)."""
    g, ratio = _kernels.best_gain_ratio(tuple(state.entries), ch.t_a, ch.t_b)
    return GainSearch(g, ratio)


def classify(state: TwoModeState, ch: ChannelParams, g: float) -> Region:
    """Label one configuration.

    Order of precedence: unphysical; separable; robust-quantum
    (``w_sum < 0`` and ``w_rob < 0``); fragile-quantum (fidelity above
    threshold); gain-rescuable entangled (``w_rob < 0``); remaining
    entangled states.
    """
    if not is_physical(state):
        return Region.UNPHYSICAL
    if not ppt_entangled(state):
        return Region.SEPARABLE
    if w_sum(state, ch, g) < -WITNESS_TOL and w_rob(state) < -WITNESS_TOL:
        return Region.ROBUST_QUANTUM
    if mean_fidelity(state, ch, g) > cft(g) + WITNESS_TOL:
        return Region.FRAGILE_QUANTUM
    if w_rob(state) < -WITNESS_TOL:
        return Region.ENTANGLED_GAIN_RESCUABLE
    return Region.ENTANGLED_CLASSICAL


def witness_report(state: TwoModeState, ch: ChannelParams, g: float) -> WitnessReport:
    """Evaluate every scalar diagnostic for one configuration."""
    var_u, var_v = epr_variances(state, ch, g)
    if ch.t_b > 0.0:
        eta = math.sqrt(g * ch.t_a / ch.t_b)
    else:
        eta = None
    return WitnessReport(
        w_all=w_all(state, ch, g),
        w_sum=w_sum(state, ch, g),
        w_prod=w_prod(state, ch, g),
        w_rob=w_rob(state),
        w_full=w_full(state),
        var_u=var_u,
        var_v=var_v,
        fidelity=mean_fidelity(state, ch, g),
        cft=cft(g),
        eta=eta,
    )
