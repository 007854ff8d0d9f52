"""Grid engines: region maps over the symmetric state family, fidelity
surfaces over the transmissibility plane, gain sweeps, and per-cell
gain-optimized robustness maps. Each grid serializes to CSV with a JSON
metadata sidecar."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._version import __version__
from .states import ChannelParams, TwoModeState, WITNESS_TOL, make_state
from .fidelity import cft
from .witness import REGION_FROM_CODE, Region, w_sum

#: CSV floats carry 9 significant digits
FLOAT_FMT = ".9g"


@dataclass(frozen=True)
class SymmetricFamilyParams:
    """Diagonal variances of the symmetric two-mode family
    ``A = B = diag(q, p)``, ``C = diag(kq_bar * q, kp_bar * p)`` with the
    normalized correlations ranging over ``[-1, 1]``."""

    q: float
    p: float


def symmetric_family_state(fam: SymmetricFamilyParams, kq_bar: float,
                           kp_bar: float) -> TwoModeState:
    if not (abs(kq_bar) <= 1.0 and abs(kp_bar) <= 1.0):
        raise ValueError("normalized correlations must lie in [-1, 1]")
    a = [[fam.q, 0.0], [0.0, fam.p]]
    c = [[kq_bar * fam.q, 0.0], [0.0, kp_bar * fam.p]]
    return make_state(a, a, c)


def _fmt(x) -> str:
    return format(float(x), FLOAT_FMT)


def _write_sidecar(path: str, meta: dict) -> None:
    with open(path + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


@dataclass
class RegionGrid:
    """Region codes over the normalized-correlation plane; ``labels[i, j]``
    belongs to ``(kq_bars[i], kp_bars[j])``."""

    kq_bars: np.ndarray
    kp_bars: np.ndarray
    labels: np.ndarray
    meta: dict = field(default_factory=dict)

    def region_at(self, i: int, j: int) -> Region:
        return REGION_FROM_CODE[int(self.labels[i, j])]

    def write_csv(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write("kq_bar,kp_bar,region\n")
            for i, kq in enumerate(self.kq_bars):
                for j, kp in enumerate(self.kp_bars):
                    fh.write(f"{_fmt(kq)},{_fmt(kp)},{self.region_at(i, j).value}\n")
        _write_sidecar(path, self.meta)


@dataclass
class SurfaceGrid:
    """Mean fidelity and quantum flag over the transmissibility plane;
    ``fidelity[i, j]`` belongs to ``(t_as[i], t_bs[j])``."""

    t_as: np.ndarray
    t_bs: np.ndarray
    fidelity: np.ndarray
    threshold: float
    quantum: np.ndarray
    meta: dict = field(default_factory=dict)

    def write_csv(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write("ta,tb,fidelity,cft,quantum\n")
            for i, ta in enumerate(self.t_as):
                for j, tb in enumerate(self.t_bs):
                    fh.write(
                        f"{_fmt(ta)},{_fmt(tb)},{_fmt(self.fidelity[i, j])},"
                        f"{_fmt(self.threshold)},{int(self.quantum[i, j])}\n"
                    )
        _write_sidecar(path, self.meta)


@dataclass
class GainCurve:
    """Fidelity, threshold and sum witness along a gain grid."""

    gains: np.ndarray
    fidelity: np.ndarray
    threshold: np.ndarray
    sum_witness: np.ndarray
    meta: dict = field(default_factory=dict)

    def write_csv(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write("g,fidelity,cft,w_sum\n")
            for k in range(self.gains.size):
                fh.write(
                    f"{_fmt(self.gains[k])},{_fmt(self.fidelity[k])},"
                    f"{_fmt(self.threshold[k])},{_fmt(self.sum_witness[k])}\n"
                )
        _write_sidecar(path, self.meta)


@dataclass
class RobustnessGrid:
    """Best gain, best fidelity-to-threshold ratio, and quantum flag over
    the transmissibility plane."""

    t_as: np.ndarray
    t_bs: np.ndarray
    best_g: np.ndarray
    max_ratio: np.ndarray
    quantum: np.ndarray
    meta: dict = field(default_factory=dict)

    def write_csv(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write("ta,tb,best_g,max_ratio,quantum\n")
            for i, ta in enumerate(self.t_as):
                for j, tb in enumerate(self.t_bs):
                    fh.write(
                        f"{_fmt(ta)},{_fmt(tb)},{_fmt(self.best_g[i, j])},"
                        f"{_fmt(self.max_ratio[i, j])},{int(self.quantum[i, j])}\n"
                    )
        _write_sidecar(path, self.meta)


def _base_meta(kind: str, **extra) -> dict:
    meta = {"kind": kind, "version": __version__,
            "kernel": _kernels.IMPLEMENTATION,
            "ordering": "(q_A, p_A, q_B, p_B)"}
    meta.update(extra)
    return meta


def region_scan(fam: SymmetricFamilyParams, ch: ChannelParams, g: float,
                steps: int) -> RegionGrid:
    """Classify every cell of the ``steps x steps`` grid over the
    normalized correlations in ``[-1, 1]^2``. Cells that fail the
    uncertainty bound are labeled, not skipped."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    kq_bars = np.linspace(-1.0, 1.0, steps)
    kp_bars = np.linspace(-1.0, 1.0, steps)
    labels = _kernels.region_grid(fam.q, fam.p, kq_bars, kp_bars,
                                  g, ch.t_a, ch.t_b)
    meta = _base_meta("region", family={"Q": fam.q, "P": fam.p}, g=g,
                      t_a=ch.t_a, t_b=ch.t_b,
                      grid={"steps": steps, "kq_bar": [-1.0, 1.0],
                            "kp_bar": [-1.0, 1.0]})
    return RegionGrid(kq_bars, kp_bars, labels, meta)


def fidelity_surface(state: TwoModeState, g: float, steps: int) -> SurfaceGrid:
    """Mean fidelity over ``(t_a, t_b)`` in ``(0, 1]^2``; the axes start at
    ``1/steps`` because total attenuation leaves nothing shared."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    t = np.linspace(1.0 / steps, 1.0, steps)
    fid = _kernels.surface_grid(tuple(state.entries), g, t, t)
    threshold = cft(g)
    quantum = fid > threshold + WITNESS_TOL
    meta = _base_meta("surface", state={"V": state.cov.tolist()}, g=g,
                      grid={"steps": steps, "ta": [float(t[0]), 1.0],
                            "tb": [float(t[0]), 1.0]})
    return SurfaceGrid(t, t, fid, threshold, quantum, meta)


def gain_sweep(state: TwoModeState, ch: ChannelParams, gains) -> GainCurve:
    """Fidelity, threshold and sum witness along a user-supplied gain grid."""
    gains = np.asarray(gains, dtype=float)
    if gains.ndim != 1 or gains.size < 2:
        raise ValueError("gain grid must be a 1-D array with >= 2 points")
    if np.any(gains < 0.0):
        raise ValueError("gains must be non-negative")
    entries = tuple(state.entries)
    det = np.array([_kernels.det_e(entries, g, ch.t_a, ch.t_b) for g in gains])
    fid = 2.0 / np.sqrt(det)
    threshold = 1.0 / (1.0 + gains * gains)
    sum_w = np.array([w_sum(state, ch, g) for g in gains])
    meta = _base_meta("gain", state={"V": state.cov.tolist()},
                      t_a=ch.t_a, t_b=ch.t_b,
                      grid={"g": [float(gains[0]), float(gains[-1])],
                            "steps": int(gains.size)})
    return GainCurve(gains, fid, threshold, sum_w, meta)


def robustness_sweep(state: TwoModeState, steps: int) -> RobustnessGrid:
    """For every ``(t_a, t_b)`` in ``(0, 1]^2``, maximize
    fidelity/threshold over the gain; a cell is quantum when the best ratio
    exceeds one."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    t = np.linspace(1.0 / steps, 1.0, steps)
    best_g, max_ratio = _kernels.robustness_grid(tuple(state.entries), t, t)
    quantum = max_ratio > 1.0 + WITNESS_TOL
    meta = _base_meta("robustness", state={"V": state.cov.tolist()},
                      grid={"steps": steps, "ta": [float(t[0]), 1.0],
                            "tb": [float(t[0]), 1.0]})
    return RobustnessGrid(t, t, best_g, max_ratio, quantum, meta)
