"""Exception types for domain and guard failures."""


class CKError(Exception):
    """Base class for all library-specific failures."""


class BarrierSingularity(CKError):
    """A coordinate hit the centrifugal 1/q**2 wall with its barrier active."""


class DomainError(CKError):
    """Evaluation requested outside a formula's real domain."""


class ChartDomainError(DomainError):
    """Point outside the coordinate chart (no real preimage/image)."""


class JacobianSingular(DomainError):
    """Coordinate-map Jacobian is singular; momenta cannot be transported."""


class DegenerateMetric(CKError):
    """Operation undefined on a degenerate (kappa2 = 0) metric."""


class SingularityReached(CKError):
    """A flow ran into a singularity guard; the last good state is recorded."""


class NonFiniteState(CKError):
    """A flow produced a non-finite state."""
