"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An argument violates a documented precondition."""


class UnsupportedKernel(InvalidArgument):
    """The operator has no pointwise kernel (e.g. a multiplication operator)."""


class NumericFailure(ArithmeticError):
    """A numerical routine did not converge or produced non-finite output."""


class ParseError(ValueError):
    """Malformed operator expression; ``offset`` is the byte position of the fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
