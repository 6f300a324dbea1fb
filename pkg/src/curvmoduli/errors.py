"""Error types shared across the package.

Every rejected precondition carries a short stable code so that callers
(and the CLI exit-status mapping) can react without parsing messages.
"""


class GeometryError(ValueError):
    """Raised when an operation's precondition fails.

    code: short stable identifier, e.g. "empty-body" or "not-centered".
    """

    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)


class HypothesisError(GeometryError):
    """A certified construction's hypothesis does not hold for the inputs."""

    def __init__(self, message: str = ""):
        super().__init__("hypothesis-violated", message)
