"""Exception types raised by the levy_info package.

Every error raised on purpose by this package derives from ``LevyInfoError``,
so callers can catch numerical/validation problems with a single handler
while letting genuine bugs (TypeError, etc.) propagate.
"""


class LevyInfoError(Exception):
    """Base class for all levy_info errors."""


class InvalidParameter(LevyInfoError):
    """A model or filter parameter violates its constraint (says which)."""


class OutOfDomain(LevyInfoError):
    """An exponent argument lies outside the admissible set of the model."""


class OutOfRange(LevyInfoError):
    """A target value is not attained by the marginal exponent."""


class ConvergenceFailure(LevyInfoError):
    """An iterative solver hit its iteration cap without converging."""


class EmptyPrior(LevyInfoError):
    """A prior was constructed with no atoms."""


class NonPositiveWeight(LevyInfoError):
    """A prior atom has weight <= 0."""


class ZeroMass(LevyInfoError):
    """A density integrates to zero (numerically) over the given interval."""


class IncompatibleSupport(LevyInfoError):
    """Prior atoms fall outside the admissible set of the noise model.

    The offending atom positions are available as the ``atoms`` attribute.
    """

    def __init__(self, message, atoms=()):
        super().__init__(message)
        self.atoms = tuple(atoms)


class NonFiniteValue(LevyInfoError):
    """A user-supplied function returned a non-finite value on an atom."""


class DegenerateWeights(LevyInfoError):
    """Every posterior log-weight underflowed to -inf; the observation is
    incompatible with the model/prior pairing."""


class UnsupportedRepresentation(LevyInfoError):
    """The requested alternative construction does not exist for the family."""


class GridExceedsHorizon(LevyInfoError):
    """A bridge grid contains times at or beyond the horizon (or past the
    configured time-change cap)."""


class TooFewSamples(LevyInfoError):
    """A statistical test was invoked with fewer samples than it supports."""


class UsageError(LevyInfoError):
    """Bad command line arguments (CLI only)."""
