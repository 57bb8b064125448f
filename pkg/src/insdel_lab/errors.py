class DomainError(ValueError):
    """Raised when an operation receives inputs outside its domain."""


class OuterListOverflow(DomainError):
    """The outer decoder found more candidates than its list cap allows."""

    def __init__(self, found, cap):
        super().__init__(f"outer list overflow: {found} candidates exceed cap {cap}")
        self.found = found
        self.cap = cap
