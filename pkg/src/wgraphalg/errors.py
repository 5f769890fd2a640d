"""Exception hierarchy shared by all layers."""


class WGraphAlgError(Exception):
    pass


class UnsupportedOrderError(WGraphAlgError):
    pass


class IncompatibleFieldError(WGraphAlgError):
    pass


class ParseError(WGraphAlgError):
    """Raised on malformed input; ``position`` is a character offset when known."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ValidationError(WGraphAlgError):
    pass


class GroupTooLargeError(WGraphAlgError):
    def __init__(self, cap, partial):
        super().__init__(f"group exceeds cap {cap} (enumerated {partial} elements so far)")
        self.cap = cap
        self.partial = partial


class InconsistentProductError(WGraphAlgError):
    pass


class NotAProductError(WGraphAlgError):
    pass


class SizeError(WGraphAlgError):
    pass


class BoundError(WGraphAlgError):
    pass


class InconsistencyError(WGraphAlgError):
    """An internal cross-check failed (e.g. a relation does not annihilate a module)."""


class UnverifiedCertificateError(WGraphAlgError):
    pass
