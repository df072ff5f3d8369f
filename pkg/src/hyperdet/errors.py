"""Exception hierarchy for hyperdet."""


class HyperdetError(Exception):
    """Base class for all hyperdet errors."""


# --- polynomial layer ---

class ZeroDirection(HyperdetError):
    """Direction (u, v) = (0, 0) passed where a nonzero direction is required."""


class DegenerateLeadingCoefficient(HyperdetError):
    """Univariate leading coefficient is (numerically) zero."""


class NotReal(HyperdetError):
    """A real polynomial/matrix was required but imaginary parts are too large."""


class DegreeMismatch(HyperdetError):
    """Two forms of different degrees were combined."""


class LeadingCoefficientZero(HyperdetError):
    """coeff(t^d) = 0: the form cannot be normalized to the monic slice."""


# --- path layer ---

class EndpointNotStrict(HyperdetError):
    """The universal path endpoint failed the strict-hyperbolicity certificate."""


# --- determinantal map layer ---

class IllConditionedNodes(HyperdetError):
    """Coefficient-recovery node set too ill-conditioned after resampling."""


class NonRealRoots(HyperdetError):
    """Roots expected to be real carry imaginary parts above tolerance."""


# --- homotopy layer ---

class BasisConditioningFailed(HyperdetError):
    """No acceptably conditioned dual basis found after repeated resampling."""


class SingularJacobian(HyperdetError):
    """LU of the tracking Jacobian hit a negligible pivot."""


# --- pipeline layer ---

class StartNotStrict(HyperdetError):
    """Could not sample a strictly hyperbolic start polynomial."""


class NotHyperbolic(HyperdetError):
    """Input polynomial failed the hyperbolicity certificate."""


class SolveFailed(HyperdetError):
    """All solve attempts exhausted."""

    def __init__(self, message, attempts=None):
        super().__init__(message)
        self.attempts = attempts or []


class DegenerateD(HyperdetError):
    """Diagonal entries too close to canonicalize."""


# --- conic oracle ---

class RepeatedD(HyperdetError):
    """Conic has a repeated diagonal entry along the probe direction."""


class InternalInconsistency(HyperdetError):
    """Closed-form conic solution contradicts hyperbolicity of the input."""


# --- text parsing ---

class ParseError(HyperdetError):
    """Malformed polynomial expression."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class InhomogeneousInput(HyperdetError):
    """Polynomial expression is not homogeneous."""
