"""Exception types raised by the toolkit."""


class ToolkitError(Exception):
    """Base class for all bktele errors."""


class NonSymmetricBlock(ToolkitError):
    """A single-mode covariance block is not symmetric within tolerance."""


class ComplexEigenvalue(ToolkitError):
    """The symplectic-eigenvalue discriminant is significantly negative.

    This signals a corrupted or badly non-symmetric input matrix, not a
    merely unphysical state.
    """


class UnphysicalInput(ToolkitError):
    """An operation that requires a bona-fide state received one that fails
    the uncertainty bound."""


class DegenerateE(ToolkitError):
    """The output-noise matrix has non-positive determinant; only reachable
    from unphysical inputs."""


class InvalidEta(ToolkitError):
    """The variance-test weight must be strictly positive."""


class DegenerateAlice(ToolkitError):
    """Alice's mode carries exactly vacuum noise, so the sum witness is
    linear in the gain and has no interior minimum."""


class NonPositiveDefinite(ToolkitError):
    """A covariance matrix required to be positive semidefinite is not."""


class NonPositiveOutputCovariance(ToolkitError):
    """The output-mode covariance is not positive semidefinite."""


class CanonicalizationFailed(ToolkitError):
    """The computed rotation angle failed to cancel the determinant cross
    term; indicates an angle-branch bug."""
