"""Exception hierarchy shared by the library and the CLI."""


class MasaError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MasaError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceLimitError(MasaError):
    """A requested object is larger than the configured limits allow."""


class UsageError(MasaError):
    """The operation was invoked in a state where it makes no sense."""


class MachineFault(MasaError):
    """The simulated machine did something undefined (head fell off the tape)."""

    def __init__(self, message, configurations=()):
        super().__init__(message)
        self.configurations = tuple(configurations)


class BudgetExceeded(MasaError):
    """A computation did not halt within its step budget."""

    def __init__(self, message, input_vector=None):
        super().__init__(message)
        self.input_vector = input_vector


class MachineFormatError(MasaError):
    """A machine definition file is malformed or violates an invariant."""
