"""Exception hierarchy shared by all modules."""


class PlanarPeriodicError(Exception):
    """Base class for every error raised by this package."""


class FieldOverflowError(PlanarPeriodicError, ArithmeticError):
    """A field evaluation or a trajectory produced a non-finite value."""


class MaxStepsExceeded(PlanarPeriodicError):
    """The integrator ran out of its step budget before reaching t = T."""


class ControlViolation(PlanarPeriodicError, ValueError):
    """The control inequality |grad G(u)| <= xi(G(u)) fails at a sampled point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class GradientMismatch(PlanarPeriodicError, ValueError):
    """A gradient oracle disagrees with finite differences of its potential."""


class VanishingDenominator(PlanarPeriodicError):
    """|g(r e^{i theta}) - c| dropped below the normalisation floor."""

    def __init__(self, message, theta=None):
        super().__init__(message)
        self.theta = theta


class WindingError(PlanarPeriodicError):
    """A winding number could not be certified."""


class PoleProximityError(WindingError):
    """A curve sample came within the pole tolerance."""


class RefinementBudgetExceeded(WindingError):
    """Adaptive refinement used up its evaluation budget."""


class InconsistentTurnSum(WindingError):
    """The accumulated turn is not within 0.1 of an integer."""


class ClosureError(WindingError):
    """curve(0) and curve(2 pi) disagree beyond the closure tolerance."""


class RoucheInternalError(PlanarPeriodicError):
    """The Rouché inequality held but the two windings differ."""


class RadiusNotFound(PlanarPeriodicError):
    """Radius doubling reached r_max without a Rouché certificate."""


class LimitCurveVanishes(PlanarPeriodicError):
    """The limit curve passes through the pole."""


class NoAprioriBound(PlanarPeriodicError):
    """The field is neither bounded nor of gradient type."""


class PolishFailed(PlanarPeriodicError):
    """Newton polishing did not reach the residual tolerance."""


class SingularJacobian(PolishFailed):
    """The finite-difference Jacobian is numerically singular."""


class VerificationFailed(PlanarPeriodicError):
    """Re-integration of a candidate solution does not close up."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class StepSizeUnderflow(MaxStepsExceeded):
    """The adaptive step collapsed below round-off (typically near blow-up)."""


class NoZeroCertified(PlanarPeriodicError):
    """The boundary winding of the search region is zero."""
