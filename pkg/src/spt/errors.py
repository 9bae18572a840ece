"""Exception hierarchy for the toolkit.

Every failure mode raised by an operation is a subclass of :class:`SptError`
so callers (and the suite harness) can catch toolkit errors uniformly and
record them as check failures instead of crashes.
"""


class SptError(Exception):
    """Base class for all toolkit errors."""


class BadGrid(SptError):
    """Grid specification is invalid (dims too small, bad spacing, ...)."""


class NonPositiveReference(SptError):
    """Reference transverse form is not positive after adding psi0."""


class NotPlurisubharmonic(SptError):
    """Input function fails the transverse positivity test."""


class NotBasic(SptError):
    """Function is not invariant under the required torus action."""


class DegenerateDeformation(SptError):
    """1 + eta(rho) fails to stay positive on the sample set."""


class BadExponent(SptError):
    """Mixed-measure exponent outside 0..n."""


class InvalidCandidate(SptError):
    """Capacity candidate violates 0 <= phi <= 1 or positivity."""


class NewtonDiverged(SptError):
    """Damped Newton iteration failed to reach tolerance."""

    def __init__(self, message, last_residual=None, beta=None):
        super().__init__(message)
        self.last_residual = last_residual
        self.beta = beta


class ObstacleViolated(SptError):
    """Envelope exceeds its obstacle beyond tolerance."""


class IterationLimit(SptError):
    """Fixed-point sweep hit its iteration cap before converging."""


class EndpointNotPlurisubharmonic(SptError):
    """Geodesic endpoint fails the positivity margin requirement."""


class OrderViolated(SptError):
    """Pointwise ordering hypothesis (u <= v) fails."""


class SignViolated(SptError):
    """Sign hypothesis (u <= 0) fails."""


class DegenerateDensity(SptError):
    """Monge-Ampere density too close to zero for entropy evaluation."""


class PoissonNotSolvable(SptError):
    """Poisson right-hand side has nonzero mean beyond tolerance."""


class SingularGram(SptError):
    """Gram matrix of the bilinear form is numerically singular."""


class ConfigError(SptError):
    """Malformed configuration file or unknown option."""
