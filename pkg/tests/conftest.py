import math
import os

import numpy as np
import pytest

import bktele as bk

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")

COSH2 = math.cosh(2.0)
SINH2 = math.sinh(2.0)
EXP_M2 = math.exp(-2.0)

# single-mode symplectic form for the eigen-decomposition oracle,
# independent of the closed-form invariant implementation
_J = np.array([[0.0, 1.0], [-1.0, 0.0]])
OMEGA = np.block([[_J, np.zeros((2, 2))], [np.zeros((2, 2)), _J]])


def eig_spectrum(cov):
    """|eig(Omega V)| sorted ascending; each symplectic eigenvalue twice."""
    return np.sort(np.abs(np.linalg.eigvals(OMEGA @ cov)))


def eig_pt_spectrum(cov):
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    return eig_spectrum(flip @ cov @ flip)


def entries_state(row):
    qa, ka, pa, qb, kb, pb, kq, k1, k2, kp = row
    return bk.make_state([[qa, ka], [ka, pa]],
                         [[qb, kb], [kb, pb]],
                         [[kq, k1], [k2, kp]])


@pytest.fixture
def tmss():
    return bk.two_mode_squeezed(1.0)


@pytest.fixture
def asym():
    """The bundled fragile asymmetric matrix (fails the uncertainty bound)."""
    return bk.make_state([[2.1, 0.0], [0.0, 2.6]],
                         [[2.2, 0.0], [0.0, 2.4]],
                         [[1.9, 0.0], [0.0, -0.7]])


@pytest.fixture
def ch_id():
    return bk.ChannelParams(1.0, 1.0)


def random_states(seed, n, margin=1.001):
    rng = np.random.default_rng(seed)
    return [bk.random_physical_state(rng, margin) for _ in range(n)]
