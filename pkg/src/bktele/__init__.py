"""Two-mode Gaussian toolkit for coherent-state teleportation: average
fidelity under channel attenuations and classical gain, the quantum/classical
witness hierarchy, attenuation-robustness tests, region maps, and independent
Monte-Carlo / quadrature oracles.

Hot grid loops run in a compiled extension when available; a pure-numpy
fallback is selected automatically at import (``bktele.KERNEL_IMPLEMENTATION``
tells which one is active).
"""

from ._version import __version__
from ._kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .errors import (
    CanonicalizationFailed,
    ComplexEigenvalue,
    DegenerateAlice,
    DegenerateE,
    InvalidEta,
    NonPositiveDefinite,
    NonPositiveOutputCovariance,
    NonSymmetricBlock,
    ToolkitError,
    UnphysicalInput,
)
from .states import (
    ChannelParams,
    CovEntries,
    PHYS_TOL,
    SymplecticInvariants,
    TwoModeState,
    WITNESS_TOL,
    apply_attenuation,
    is_physical,
    local_rotation,
    make_state,
    ppt_entangled,
    random_physical_state,
    symplectic_invariants,
    two_mode_squeezed,
    vacuum,
)
from .fidelity import (
    cft,
    det_e_expanded,
    is_quantum,
    mean_fidelity,
    output_noise_matrix,
    pointwise_fidelity,
)
from .witness import (
    DuanCheck,
    EprVariances,
    GainOptimum,
    GainSearch,
    Region,
    WitnessReport,
    classify,
    duan_check,
    epr_variances,
    max_quantum_ratio,
    optimal_gain,
    w_all,
    w_full,
    w_prod,
    w_rob,
    w_sum,
    witness_report,
)
from .symmetry import (
    CanonicalBasisResult,
    canonicalize,
    cross_term,
    diagonalize_correlation,
    invariance_angle,
)
from .oracle import GridSpec, McEstimate, grid_overlap_fidelity, mc_fidelity
from .scan import (
    GainCurve,
    RegionGrid,
    RobustnessGrid,
    SurfaceGrid,
    SymmetricFamilyParams,
    fidelity_surface,
    gain_sweep,
    region_scan,
    robustness_sweep,
    symmetric_family_state,
)

__all__ = [
    "__version__",
    "KERNEL_IMPLEMENTATION",
    # errors
    "ToolkitError", "NonSymmetricBlock", "ComplexEigenvalue", "UnphysicalInput",
    "DegenerateE", "InvalidEta", "DegenerateAlice", "NonPositiveDefinite",
    "NonPositiveOutputCovariance", "CanonicalizationFailed",
    # states
    "TwoModeState", "ChannelParams", "CovEntries", "SymplecticInvariants",
    "PHYS_TOL", "WITNESS_TOL", "make_state", "two_mode_squeezed", "vacuum",
    "symplectic_invariants", "is_physical", "apply_attenuation",
    "local_rotation", "ppt_entangled", "random_physical_state",
    # fidelity
    "output_noise_matrix", "mean_fidelity", "pointwise_fidelity",
    "det_e_expanded", "cft", "is_quantum",
    # witnesses
    "Region", "WitnessReport", "EprVariances", "DuanCheck", "GainOptimum",
    "GainSearch", "epr_variances", "w_sum", "w_prod", "w_all", "w_rob",
    "w_full", "duan_check", "optimal_gain", "max_quantum_ratio", "classify",
    "witness_report",
    # symmetry
    "CanonicalBasisResult", "cross_term", "invariance_angle", "canonicalize",
    "diagonalize_correlation",
    # oracles
    "McEstimate", "GridSpec", "mc_fidelity", "grid_overlap_fidelity",
    # scans
    "SymmetricFamilyParams", "symmetric_family_state", "RegionGrid",
    "SurfaceGrid", "GainCurve", "RobustnessGrid", "region_scan",
    "fidelity_surface", "gain_sweep", "robustness_sweep",
]
