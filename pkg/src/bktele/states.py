"""Two-mode Gaussian state model: covariance matrices, channels, rotations,
physicality and separability tests.

Conventions (fixed throughout the toolkit):

* quadrature ordering ``(q_A, p_A, q_B, p_B)``;
* commutators ``[q_i, p_j] = 2i delta_ij``, so the vacuum covariance matrix
  is the identity and a coherent state has unit quadrature variances;
* means vanish: displaced inputs are handled by the protocol itself, so
  states with nonzero mean are rejected at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ComplexEigenvalue, NonSymmetricBlock, UnphysicalInput

#: absolute slack on nu_minus >= 1, so exactly-pure states stay physical
#: under floating-point noise
PHYS_TOL = 1e-9

#: slack on strict witness/eigenvalue inequalities; boundary cases fall on
#: the non-strict (classical/separable) side
WITNESS_TOL = 1e-12

#: per-entry symmetry tolerance for covariance blocks
SYM_TOL = 1e-12

#: discriminant floor below which the symplectic spectrum is reported as
#: complex (corrupted input) instead of being clamped
DISC_TOL = -1e-9


class CovEntries(NamedTuple):
    """The ten independent entries of a two-mode covariance matrix.

    ``qa, ka, pa`` fill Alice's block ``[[qa, ka], [ka, pa]]``, ``qb, kb, pb``
    fill Bob's block, and ``kq, k1, k2, kp`` fill the correlation block
    ``[[kq, k1], [k2, kp]]`` (rows Alice, columns Bob).
    """

    qa: float
    ka: float
    pa: float
    qb: float
    kb: float
    pb: float
    kq: float
    k1: float
    k2: float
    kp: float


@dataclass(frozen=True)
class TwoModeState:
    """Immutable zero-mean two-mode Gaussian state.

    ``cov`` is the 4x4 covariance matrix in ``(q_A, p_A, q_B, p_B)``
    ordering. It is symmetrized on input (after a tolerance check) and
    stored read-only, so ``cov == cov.T`` holds exactly.
    """

    cov: np.ndarray

    def __init__(self, cov, mean=None):
        cov = np.array(cov, dtype=float)
        if cov.shape != (4, 4):
            raise ValueError(f"covariance matrix must be 4x4, got {cov.shape}")
        if np.max(np.abs(cov - cov.T)) > SYM_TOL:
            raise NonSymmetricBlock("covariance matrix is not symmetric")
        if mean is not None and np.any(np.asarray(mean, dtype=float) != 0.0):
            raise ValueError("only zero-mean states are supported")
        cov = (cov + cov.T) / 2.0
        cov.flags.writeable = False
        object.__setattr__(self, "cov", cov)

    @property
    def alice(self) -> np.ndarray:
        return self.cov[:2, :2]

    @property
    def bob(self) -> np.ndarray:
        return self.cov[2:, 2:]

    @property
    def corr(self) -> np.ndarray:
        return self.cov[:2, 2:]

    @property
    def entries(self) -> CovEntries:
        v = self.cov
        return CovEntries(
            qa=float(v[0, 0]), ka=float(v[0, 1]), pa=float(v[1, 1]),
            qb=float(v[2, 2]), kb=float(v[2, 3]), pb=float(v[3, 3]),
            kq=float(v[0, 2]), k1=float(v[0, 3]), k2=float(v[1, 2]),
            kp=float(v[1, 3]),
        )


@dataclass(frozen=True)
class ChannelParams:
    """Amplitude transmissibilities of the two independent attenuation
    channels; ``t == 1`` is lossless, ``t == 0`` replaces the mode by vacuum."""

    t_a: float = 1.0
    t_b: float = 1.0

    def __post_init__(self):
        for name, t in (("t_a", self.t_a), ("t_b", self.t_b)):
            if not 0.0 <= t <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {t}")


@dataclass(frozen=True)
class SymplecticInvariants:
    """Local-symplectic invariants of a two-mode covariance matrix and the
    symplectic spectra of the state and of its partial transpose."""

    det_a: float
    det_b: float
    det_c: float
    det_v: float
    delta: float
    delta_pt: float
    nu_minus: float
    nu_plus: float
    nu_pt_minus: float
    nu_pt_plus: float


def make_state(a, b, c) -> TwoModeState:
    """Assemble a state from Alice/Bob blocks ``a``, ``b`` and correlation
    block ``c``.

    ``a`` and ``b`` must be symmetric within ``SYM_TOL`` per entry; ``c`` is
    an arbitrary real 2x2 matrix. The assembled matrix is not required to be
    physical: physicality is reported separately by :func:`is_physical`.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    c = np.array(c, dtype=float)
    for name, block in (("alice", a), ("bob", b)):
        if block.shape != (2, 2):
            raise ValueError(f"{name} block must be 2x2, got {block.shape}")
        if abs(block[0, 1] - block[1, 0]) > SYM_TOL:
            raise NonSymmetricBlock(f"{name} block is not symmetric")
    if c.shape != (2, 2):
        raise ValueError(f"correlation block must be 2x2, got {c.shape}")
    a = (a + a.T) / 2.0
    b = (b + b.T) / 2.0
    cov = np.block([[a, c], [c.T, b]])
    return TwoModeState(cov)


def two_mode_squeezed(r: float) -> TwoModeState:
    """Pure two-mode squeezed vacuum with squeezing parameter ``r``:
    diagonal blocks ``cosh(2r) I`` and correlations ``diag(sinh 2r, -sinh 2r)``."""
    ch, sh = math.cosh(2.0 * r), math.sinh(2.0 * r)
    return make_state(
        [[ch, 0.0], [0.0, ch]],
        [[ch, 0.0], [0.0, ch]],
        [[sh, 0.0], [0.0, -sh]],
    )


def vacuum() -> TwoModeState:
    """Two uncorrelated vacuum modes."""
    return TwoModeState(np.eye(4))


def _det4_with_scale(e: CovEntries) -> tuple[float, float]:
    """Determinant of the assembled 4x4 matrix by complementary 2x2 minors,
    plus the magnitude scale of its terms (used to size rounding noise)."""
    r0 = (e.qa, e.ka, e.kq, e.k1)
    r1 = (e.ka, e.pa, e.k2, e.kp)
    r2 = (e.kq, e.k2, e.qb, e.kb)
    r3 = (e.k1, e.kp, e.kb, e.pb)

    def top(i, j):
        return r0[i] * r1[j] - r0[j] * r1[i]

    def bot(i, j):
        return r2[i] * r3[j] - r2[j] * r3[i]

    products = (
        top(0, 1) * bot(2, 3), -top(0, 2) * bot(1, 3), top(0, 3) * bot(1, 2),
        top(1, 2) * bot(0, 3), -top(1, 3) * bot(0, 2), top(2, 3) * bot(0, 1),
    )
    return math.fsum(products), sum(abs(p) for p in products)


def _spectrum(delta: float, det_v: float, noise: float) -> tuple[float, float]:
    disc = delta * delta - 4.0 * det_v
    if disc < min(DISC_TOL, -noise):
        raise ComplexEigenvalue(
            f"symplectic spectrum discriminant {disc} below noise level; "
            "input matrix is corrupted"
        )
    # Below the rounding noise of its inputs the discriminant sign is
    # meaningless; take the degenerate branch so exactly-pure states come
    # out with nu = 1 instead of 1 +- sqrt(eps).
    root = 0.0 if disc <= noise else math.sqrt(disc)
    lo = max((delta - root) / 2.0, 0.0)
    hi = max((delta + root) / 2.0, 0.0)
    return math.sqrt(lo), math.sqrt(hi)


def symplectic_invariants(state: TwoModeState) -> SymplecticInvariants:
    """Closed-form symplectic invariants.

    The squared symplectic eigenvalues are the roots of
    ``x^2 - delta x + det V`` with ``delta = det A + det B + 2 det C``; the
    partial-transpose spectrum uses ``delta_pt = det A + det B - 2 det C``.
    """
    e = state.entries
    det_a = e.qa * e.pa - e.ka * e.ka
    det_b = e.qb * e.pb - e.kb * e.kb
    det_c = e.kq * e.kp - e.k1 * e.k2
    det_v, scale = _det4_with_scale(e)
    noise = 256.0 * np.finfo(float).eps * max(scale, 1.0)
    delta = det_a + det_b + 2.0 * det_c
    delta_pt = det_a + det_b - 2.0 * det_c
    nu_minus, nu_plus = _spectrum(delta, det_v, noise)
    nu_pt_minus, nu_pt_plus = _spectrum(delta_pt, det_v, noise)
    return SymplecticInvariants(
        det_a=det_a, det_b=det_b, det_c=det_c, det_v=det_v,
        delta=delta, delta_pt=delta_pt,
        nu_minus=nu_minus, nu_plus=nu_plus,
        nu_pt_minus=nu_pt_minus, nu_pt_plus=nu_pt_plus,
    )


def is_physical(state: TwoModeState) -> bool:
    """True iff the smallest symplectic eigenvalue satisfies
    ``nu_minus >= 1 - PHYS_TOL`` (the uncertainty bound; implies
    ``det V >= 1``)."""
    return symplectic_invariants(state).nu_minus >= 1.0 - PHYS_TOL


def apply_attenuation(state: TwoModeState, ch: ChannelParams) -> TwoModeState:
    """Independent beam-splitter losses on the two modes:
    ``V -> L (V - I) L + I`` with ``L = diag(t_a, t_a, t_b, t_b)``."""
    scale = np.array([ch.t_a, ch.t_a, ch.t_b, ch.t_b])
    ll = np.outer(scale, scale)
    cov = ll * (state.cov - np.eye(4)) + np.eye(4)
    return TwoModeState(cov)


def rotation2(theta: float) -> np.ndarray:
    """Single-mode phase rotation, convention
    ``R(theta) = [[cos, sin], [-sin, cos]]``."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def local_rotation(state: TwoModeState, theta_a: float, theta_b: float) -> TwoModeState:
    """Independent phase rotations of the two modes,
    ``V -> (R(theta_a) (+) R(theta_b)) V (.)^T``.

    The fidelity-preserving subgroup is ``theta_b == -theta_a``.
    """
    s = np.zeros((4, 4))
    s[:2, :2] = rotation2(theta_a)
    s[2:, 2:] = rotation2(theta_b)
    return TwoModeState(s @ state.cov @ s.T)


def ppt_entangled(state: TwoModeState) -> bool:
    """Partial-transpose separability test, necessary and sufficient for
    two-mode Gaussian states: entangled iff ``nu_pt_minus < 1 - WITNESS_TOL``.

    Raises :class:`UnphysicalInput` when the state fails the uncertainty
    bound, where the test is meaningless.
    """
    inv = symplectic_invariants(state)
    if inv.nu_minus < 1.0 - PHYS_TOL:
        raise UnphysicalInput(
            f"separability test on a state with nu_minus = {inv.nu_minus:.6g} < 1"
        )
    return inv.nu_pt_minus < 1.0 - WITNESS_TOL


def random_physical_state(rng: np.random.Generator, margin: float = 1.001) -> TwoModeState:
    """Random bona-fide state: a random symmetric matrix shifted by the
    smallest ``s * I`` that makes it positive semidefinite with
    ``nu_minus >= margin``.

    The positivity guard matters: the uncertainty bound alone does not imply
    matrix positivity for arbitrary symmetric matrices, and without it the
    draw frequently produces non-states.
    """
    m = rng.normal(size=(4, 4))
    m = (m + m.T) / 2.0

    def admissible(shift: float) -> bool:
        v = m + shift * np.eye(4)
        if np.linalg.eigvalsh(v)[0] <= 1e-9:
            return False
        e = CovEntries(
            qa=v[0, 0], ka=v[0, 1], pa=v[1, 1],
            qb=v[2, 2], kb=v[2, 3], pb=v[3, 3],
            kq=v[0, 2], k1=v[0, 3], k2=v[1, 2], kp=v[1, 3],
        )
        det_a = e.qa * e.pa - e.ka * e.ka
        det_b = e.qb * e.pb - e.kb * e.kb
        det_c = e.kq * e.kp - e.k1 * e.k2
        delta = det_a + det_b + 2.0 * det_c
        det_v = float(np.linalg.det(v))
        disc = delta * delta - 4.0 * det_v
        if disc < 0.0:
            return False
        nu2 = (delta - math.sqrt(disc)) / 2.0
        return nu2 >= margin * margin

    lo, hi = 0.0, 1.0
    while not admissible(hi):
        hi *= 2.0
    for _ in range(80):
        mid = (lo + hi) / 2.0
        if admissible(mid):
            hi = mid
        else:
            lo = mid
    return TwoModeState(m + hi * np.eye(4))
