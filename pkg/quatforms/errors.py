"""
Exception hierarchy for quatforms.

Every error carries the process exit code the CLI uses when it escapes a
command: 1 for bad input or unmet preconditions, 2 for internal defects.
"""


class QuatFormsError(Exception):
    """Base class for all quatforms errors."""

    exit_code = 2


class InputError(QuatFormsError):
    """An argument violates a documented precondition."""

    exit_code = 1


class ComputationDefect(QuatFormsError):
    """An internal consistency check failed; valid inputs never trigger this."""

    exit_code = 2


class ConfigValidationError(InputError):
    pass


class PrecisionInsufficient(InputError):
    pass


class NonUnitConstantTerm(InputError):
    pass


class NegativeWeightOnPolynomial(InputError):
    pass


class EvenNorm(InputError):
    pass


class NoUnitCoordinate(InputError):
    pass


class InvalidMonoidElement(ComputationDefect):
    pass


class NoLiftInBound(ComputationDefect):
    pass


class SingularToPrecision(ComputationDefect):
    pass


class DecompositionFailed(ComputationDefect):
    pass


class WitnessNotFound(ComputationDefect):
    pass


class UnstableLift(ComputationDefect):
    pass


class RankDeficient(ComputationDefect):
    pass


class IndistinctRoots(ComputationDefect):
    pass


class InconsistentRatios(ComputationDefect):
    pass
