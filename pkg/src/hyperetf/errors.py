"""Exception types raised across the package."""


class HyperEtfError(Exception):
    """Base class for all errors raised by hyperetf."""


# finite fields
class RejectDegree(HyperEtfError, ValueError):
    pass


class RejectNotPrimitive(HyperEtfError, ValueError):
    pass


class MixedFields(HyperEtfError, ValueError):
    pass


class BadDegreeDivision(HyperEtfError, ValueError):
    pass


# cyclotomic arithmetic
class ConductorMismatch(HyperEtfError, ValueError):
    pass


# designs
class NotBibd(HyperEtfError, ValueError):
    pass


class NotHyperoval(HyperEtfError, ValueError):
    pass


class OddOrder(HyperEtfError, ValueError):
    pass


class BadRowChoice(HyperEtfError, ValueError):
    pass


class NotResolvable(HyperEtfError, ValueError):
    pass


# frames
class NonconstantColumnSum(HyperEtfError, ValueError):
    pass


class SizeMismatch(HyperEtfError, ValueError):
    pass


class UnsupportedOrder(HyperEtfError, ValueError):
    pass


class NotAffineForm(HyperEtfError, ValueError):
    pass


class BadHadamard(HyperEtfError, ValueError):
    pass


class ConditionViolated(HyperEtfError, ValueError):
    pass


class PreconditionViolated(HyperEtfError, ValueError):
    pass


class NotDecomposedForm(HyperEtfError, ValueError):
    pass


# verification
class SpecMismatch(HyperEtfError, ValueError):
    pass


class DegenerateN(HyperEtfError, ValueError):
    pass


class NotPlusMinusOne(HyperEtfError, ValueError):
    pass


class NotZeroSum(HyperEtfError, ValueError):
    pass


# groups
class NotDifferenceSet(HyperEtfError, ValueError):
    pass


class TooLarge(HyperEtfError, ValueError):
    pass


class FrameFileError(HyperEtfError, ValueError):
    """A frame file is malformed or uses an unknown format."""
