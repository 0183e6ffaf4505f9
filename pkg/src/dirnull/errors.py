"""Exception types raised across the package."""


class GraphInputError(ValueError):
    """Malformed or out-of-range graph input (bad edge, bad line, bad id)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DistributionError(ValueError):
    """Target degree distributions that cannot drive a generator."""
