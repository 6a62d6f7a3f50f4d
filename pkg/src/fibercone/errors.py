"""Exception hierarchy; the CLI maps each family to an exit code."""


class FiberConeError(Exception):
    exit_code = 1


class InputError(FiberConeError, ValueError):
    """Malformed or mathematically invalid input (exit code 2)."""

    exit_code = 2


class ParseError(InputError):
    pass


class RingMismatchError(InputError):
    pass


class NotPrimaryError(InputError):
    """The ideal does not contain a power of the maximal ideal within the cap."""

    exit_code = 3  # decided by a cap, so reported as a resource limit


class NotReductionError(InputError):
    exit_code = 3


class PresentationError(InputError):
    pass


class NoReductionFound(InputError):
    """Randomized search exhausted its attempts (inconclusive)."""

    exit_code = 3


class ResourceCapError(FiberConeError):
    """A configured size or degree cap was exceeded (exit code 3)."""

    exit_code = 3


class TheoremConsistencyError(FiberConeError, AssertionError):
    """A verified identity failed; indicates a bug (exit code 4)."""

    exit_code = 4
