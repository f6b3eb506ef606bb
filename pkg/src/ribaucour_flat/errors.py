"""Exception hierarchy shared by all modules."""


class RibaucourError(Exception):
    """Base class for every error raised by this package."""


class OutOfRange(RibaucourError, ValueError):
    def __init__(self, key, value, message=None):
        self.key = key
        self.value = value
        super().__init__(message or f"{key}={value!r} is out of range")


class ConstraintViolated(RibaucourError, ValueError):
    pass


class DegenerateGenerator(RibaucourError, ValueError):
    pass


class GeneratorOverflow(RibaucourError, OverflowError):
    pass


class DegeneratePoint(RibaucourError, ArithmeticError):
    pass


class SingularPoint(RibaucourError, ArithmeticError):
    """Raised when a parameter point lies on (or numerically at) the excluded set."""


class StencilHitsSingularity(SingularPoint):
    pass


class GridTooLarge(RibaucourError, ValueError):
    pass


class NearPole(RibaucourError, ArithmeticError):
    pass


class EmptyMesh(RibaucourError, ValueError):
    pass


class UnprojectedMesh(RibaucourError, ValueError):
    pass


class MeshIOError(RibaucourError, OSError):
    pass


class ConfigError(RibaucourError, ValueError):
    """Malformed configuration file or flag."""
