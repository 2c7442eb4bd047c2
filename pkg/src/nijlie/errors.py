"""Exception hierarchy.

Every error carries a category used by the command line front end to pick an
exit code: ``validation`` (1), ``budget`` (2), ``input`` (3), ``internal`` (4).
"""


class NijlieError(Exception):
    category = "validation"


# malformed input
class InputError(NijlieError):
    category = "input"


class DimensionMismatch(InputError):
    pass


class FieldMismatch(InputError):
    pass


class MalformedDocument(InputError):
    pass


# structural validation failures
class NotASubspace(NijlieError):
    pass


class NotALieAlgebra(NijlieError):
    pass


class NotNijenhuis(NijlieError):
    pass


class InvalidRepresentation(NijlieError):
    pass


class HypothesisViolation(NijlieError):
    def __init__(self, name, detail=""):
        self.name = name
        super().__init__(f"{name}: {detail}" if detail else name)


class NotACocycle(NijlieError):
    pass


class ValueOutsideKernel(NijlieError):
    pass


class WitnessInvalid(NijlieError):
    pass


class KernelNotAbelian(NijlieError):
    pass


class NotInvariant(NijlieError):
    pass


class NotAutomorphism(NijlieError):
    pass


class NotDerivation(NijlieError):
    pass


class LambdaInvalid(NijlieError):
    pass


class IncompatiblePair(NijlieError):
    pass


class NotSplit(NijlieError):
    pass


class BudgetExceeded(NijlieError):
    category = "budget"

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(f"enumeration of {required} candidates exceeds budget {budget}")


class InternalInvariantError(NijlieError):
    """A computed object failed a check that a theorem guarantees."""

    category = "internal"


class InvalidExtension(NijlieError):
    pass


class NotASection(NijlieError):
    pass
