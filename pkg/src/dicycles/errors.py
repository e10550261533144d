"""Exception types shared across the library."""


class PreconditionError(ValueError):
    """A stated hypothesis of the requested operation does not hold.

    Raised when the caller hands an operation inputs outside its contract,
    e.g. an insertion target that already lies on the path.
    """


class CounterexampleError(RuntimeError):
    """A guaranteed structural conclusion failed to materialize.

    This signals evidence against one of the statements the library
    verifies.  It must never be swallowed: any campaign that triggers it
    has found a would-be counterexample and should surface it loudly.
    """


class ParseError(ValueError):
    """Malformed digraph text; carries the offending line and column."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
