class ParseError(ValueError):
    """Malformed context file, constraint file or attribute expression.

    ``line`` is 1-based and ``pos`` is a 0-based column offset; either may
    be ``None`` when it does not apply.
    """

    def __init__(self, message: str, line: int | None = None, pos: int | None = None):
        self.line = line
        self.pos = pos
        where = []
        if line is not None:
            where.append(f"line {line}")
        if pos is not None:
            where.append(f"position {pos}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class UnknownNameError(ValueError):
    """An object or attribute name that is not part of the context."""


class CapacityError(ValueError):
    """A size cap (attribute count, enumeration width) was exceeded."""
