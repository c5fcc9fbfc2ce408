"""Exception types shared across the package."""


class HeckeError(Exception):
    """Base class for every failure mode this package raises on purpose."""


class NoRelationWithinBound(HeckeError):
    """Searched for a linear relation up to the stated degree and found none."""


class TooLarge(HeckeError):
    """The requested object exceeds the sizes this exact engine supports."""


class NotIrreducible(HeckeError):
    """A module expected to be (absolutely) irreducible is not."""


class SystemMismatch(HeckeError):
    """Operands were built over different coefficient systems."""


class ParityViolation(HeckeError):
    """A coefficient's grading is incompatible with its basis element."""


class WindowExhausted(HeckeError):
    """Laurent-polynomial exponents left the defensive window."""


class GapTooLarge(HeckeError):
    """Coset enumeration is only implemented for congruence gaps <= 2."""


class TooShort(HeckeError):
    """The element is too short to factor (length below 2)."""


class WrongModularCase(HeckeError):
    """The requested construction needs a different divisibility of q-1/q+1 by l."""


class NotBiEquivariant(HeckeError):
    """A candidate intertwiner fails the required two-sided equivariance."""


class TauMismatch(HeckeError):
    """Two ingredients disagree on the index parameter tau."""


class NotCuspidal(HeckeError):
    """The supplied representation has nonzero coinvariants for a unipotent radical."""
