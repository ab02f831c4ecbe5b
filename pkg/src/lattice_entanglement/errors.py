"""Exception hierarchy shared by all modules."""


class LatticeError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpec(LatticeError, ValueError):
    pass


class EvenSide(InvalidSpec):
    pass


class NonPositiveCoupling(InvalidSpec):
    pass


class NegativeTrap(InvalidSpec):
    pass


class UnsupportedDimension(InvalidSpec):
    pass


class ZeroModeDivergence(LatticeError, ArithmeticError):
    """A thermal or ground-state mode sum hit the x = 0 centre-of-mass mode."""


class BadSeparation(LatticeError, ValueError):
    pass


class DomainError(LatticeError, ValueError):
    pass


class QuadratureFailure(LatticeError, ArithmeticError):
    pass


class UnsupportedSeparation(LatticeError, ValueError):
    pass


class NotEntangled(LatticeError):
    pass


class NoVanishing(LatticeError):
    pass


class NotOrthogonal(LatticeError, ValueError):
    pass


class TooLarge(LatticeError, ValueError):
    pass


class CutoffInsufficient(LatticeError):
    pass


class Unphysical(LatticeError, ValueError):
    pass


class InvalidRequest(LatticeError, ValueError):
    pass


class IoFailure(LatticeError, OSError):
    pass
