"""Independent numerical checks of the analytic fidelity: a Monte-Carlo
simulation of the measurement-and-displacement protocol, and direct grid
integration of the phase-space overlap between the output state and the
target coherent state."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    NonPositiveDefinite,
    NonPositiveOutputCovariance,
    UnphysicalInput,
)
from .fidelity import output_noise_matrix
from .states import ChannelParams, TwoModeState, apply_attenuation, is_physical

_BOOTSTRAP_RESAMPLES = 200
_BOOTSTRAP_KEY = 2**64 - 1  # block index never reaches this


@dataclass(frozen=True)
class GridSpec:
    """Integration grid: ``points_per_axis`` samples (odd, so the common
    mean sits on a grid point) spanning ``half_width_sigmas`` standard
    deviations of the widest marginal on each side."""

    half_width_sigmas: float = 8.0
    points_per_axis: int = 801

    def __post_init__(self):
        if self.points_per_axis < 3 or self.points_per_axis % 2 == 0:
            raise ValueError("points_per_axis must be odd and >= 3")
        if self.half_width_sigmas <= 0:
            raise ValueError("half_width_sigmas must be positive")


@dataclass(frozen=True)
class McEstimate:
    """Monte-Carlo fidelity estimate with a block-bootstrap standard error.
    Bit-identical for fixed ``(seed, n_samples)`` regardless of thread count."""

    fidelity_hat: float
    std_error: float
    n_samples: int
    seed: int


def _block_sizes(n: int) -> list[int]:
    size = max(1, min(16384, -(-n // 64)))
    full, rest = divmod(n, size)
    return [size] * full + ([rest] if rest else [])


def _symmetric_sqrt(cov: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(cov)
    if vals[0] < -1e-9:
        raise NonPositiveDefinite(
            f"covariance has eigenvalue {vals[0]} < 0; cannot sample"
        )
    return (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.T


def _fidelity_from_moments(mean, cov, target):
    e = cov + np.eye(2)
    det = e[0, 0] * e[1, 1] - e[0, 1] * e[1, 0]
    delta = mean - target
    quad = (
        e[1, 1] * delta[0] ** 2
        - 2.0 * e[0, 1] * delta[0] * delta[1]
        + e[0, 0] * delta[1] ** 2
    ) / det
    return 2.0 * math.exp(-0.5 * quad) / math.sqrt(det)


def mc_fidelity(state: TwoModeState, ch: ChannelParams, g: float,
                alpha: complex, n: int, seed: int,
                threads: int | None = None,
                alpha_lambda: float | None = None) -> McEstimate:
    """Simulate the protocol sample by sample.

    Phase-space samples of the attenuated shared state (via its symmetric
    matrix square root) and of the coherent input are pushed through the
    measurement-and-displacement rules
    ``q_out = q_B - g (q_A - q_in)``, ``p_out = p_B + g (p_A + p_in)``;
    the fidelity estimate plugs the sample moments of the output into the
    two-Gaussian overlap. Sampling is split into fixed blocks with
    counter-keyed streams, so the result depends only on ``(seed, n)``.

    With ``alpha_lambda`` set, ``alpha`` is ignored and each block draws its
    own input amplitude from the centered Gaussian prior
    ``p(a) ~ exp(-lambda |a|^2)``, with moments taken relative to each
    block's own target. The estimate is prior-independent, which is exactly
    the amplitude-independence of the fidelity.
    """
    if n < 2:
        raise ValueError("need at least 2 samples")
    if alpha_lambda is not None and alpha_lambda <= 0.0:
        raise ValueError("alpha_lambda must be positive")
    if not is_physical(state):
        raise UnphysicalInput("Monte-Carlo run requested on a non-physical state")
    seed = int(seed) % 2**64
    root = _symmetric_sqrt(apply_attenuation(state, ch).cov)
    alpha = complex(alpha)
    fixed_mean_in = np.array([2.0 * alpha.real, 2.0 * alpha.imag])
    # moments are accumulated relative to the (per-block) target, so the
    # displacement entering the overlap is just the residual mean
    target = np.zeros(2)

    def block_stats(args):
        index, count = args
        key = np.array([seed, index], dtype=np.uint64)
        gen = np.random.Generator(np.random.Philox(key=key))
        if alpha_lambda is None:
            mean_in = fixed_mean_in
        else:
            # quadrature means 2*Re(a), 2*Im(a) with Re/Im ~ N(0, 1/(2 lambda))
            mean_in = gen.normal(0.0, math.sqrt(2.0 / alpha_lambda), size=2)
        z = gen.standard_normal((count, 6))
        shared = z[:, :4] @ root  # root is symmetric
        q_in = mean_in[0] + z[:, 4]
        p_in = mean_in[1] + z[:, 5]
        q_out = shared[:, 2] - g * (shared[:, 0] - q_in) - g * mean_in[0]
        p_out = shared[:, 3] + g * (shared[:, 1] + p_in) - g * mean_in[1]
        out = np.stack([q_out, p_out], axis=1)
        return count, out.sum(axis=0), out.T @ out

    blocks = list(enumerate(_block_sizes(n)))
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            stats = list(pool.map(block_stats, blocks))
    else:
        stats = [block_stats(b) for b in blocks]

    counts = np.array([s[0] for s in stats], dtype=float)
    sums = np.array([s[1] for s in stats])
    squares = np.array([s[2] for s in stats])

    def combine(cnt, s1, s2):
        mean = s1 / cnt
        cov = (s2 - np.outer(s1, s1) / cnt) / (cnt - 1.0)
        return mean, cov

    mean, cov = combine(counts.sum(), sums.sum(axis=0), squares.sum(axis=0))
    fid = _fidelity_from_moments(mean, cov, target)

    # block bootstrap over the per-block sufficient statistics
    boot_key = np.array([seed, _BOOTSTRAP_KEY], dtype=np.uint64)
    boot = np.random.Generator(np.random.Philox(key=boot_key))
    idx = boot.integers(0, len(blocks), size=(_BOOTSTRAP_RESAMPLES, len(blocks)))
    estimates = np.empty(_BOOTSTRAP_RESAMPLES)
    for k in range(_BOOTSTRAP_RESAMPLES):
        sel = idx[k]
        m, c = combine(counts[sel].sum(), sums[sel].sum(axis=0),
                       squares[sel].sum(axis=0))
        estimates[k] = _fidelity_from_moments(m, c, target)
    std_error = float(np.std(estimates, ddof=1))
    return McEstimate(fidelity_hat=fid, std_error=std_error,
                      n_samples=n, seed=seed)


def grid_overlap_fidelity(state: TwoModeState, ch: ChannelParams, g: float,
                          alpha: complex, grid: GridSpec | None = None) -> float:
    """Trapezoid integration of ``2 pi * W_target * W_out`` on a square grid.

    The output state is the Gaussian with mean ``g * (2 Re a, 2 Im a)`` and
    covariance ``E - I``; the target is the coherent state at the same mean
    with unit covariance. Works at the formula level, so it accepts inputs
    that fail the uncertainty bound as long as the output covariance stays
    positive.
    """
    grid = grid or GridSpec()
    alpha = complex(alpha)
    e = output_noise_matrix(apply_attenuation(state, ch), g)
    sigma = e - np.eye(2)
    vals = np.linalg.eigvalsh(sigma)
    if vals[0] < -1e-9:
        raise NonPositiveOutputCovariance(
            f"output covariance eigenvalue {vals[0]} < 0"
        )
    det_sigma = vals[0] * vals[1]
    if det_sigma <= 0.0:
        raise NonPositiveOutputCovariance("output covariance is singular")
    inv = np.linalg.inv(sigma)

    center = np.array([2.0 * g * alpha.real, 2.0 * g * alpha.imag])
    half = grid.half_width_sigmas * max(1.0, math.sqrt(vals[1]))
    q = np.linspace(center[0] - half, center[0] + half, grid.points_per_axis)
    p = np.linspace(center[1] - half, center[1] + half, grid.points_per_axis)
    dq = (q - center[0])[:, None]
    dp = (p - center[1])[None, :]

    quad_out = inv[0, 0] * dq**2 + 2.0 * inv[0, 1] * dq * dp + inv[1, 1] * dp**2
    w_out = np.exp(-0.5 * quad_out) / (2.0 * math.pi * math.sqrt(det_sigma))
    w_target = np.exp(-0.5 * (dq**2 + dp**2)) / (2.0 * math.pi)
    inner = np.trapezoid(w_target * w_out, p, axis=1)
    # with unit-normalized phase-space densities in this scaling (vacuum
    # covariance = I), the state overlap is 4*pi * integral: identical pure
    # states must overlap to exactly one
    return 4.0 * math.pi * float(np.trapezoid(inner, q))
