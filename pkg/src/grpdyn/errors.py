"""Exception types shared across the package."""


class GroupValidationError(ValueError):
    """Raised when a table or generator list does not describe a group."""


class CapabilityError(RuntimeError):
    """Raised when a computation exceeds a configured size or budget."""


class WitnessError(ValueError):
    """A rejection that carries a concrete counterexample.

    ``witness`` is a small JSON-friendly payload (element indices, pairs)
    that reproduces the failure when re-evaluated.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotNormalError(WitnessError):
    pass


class NotHomomorphismError(WitnessError):
    pass


class NotInvariantError(WitnessError):
    pass
