"""Exception types shared across the package.

Two broad categories matter for callers (and for the CLI's exit codes):
``InputError`` covers malformed user input, ``ComputationError`` covers
well-formed input the engine cannot handle.
"""


class SplineError(Exception):
    """Base class for every package-specific error."""


class InputError(SplineError):
    """Malformed input: files, expressions, graph data, schemas."""


class ComputationError(SplineError):
    """Valid input on which the requested computation cannot proceed."""


class UnsupportedRing(ComputationError):
    """The operation is not defined over the given coefficient ring."""


class TooLarge(ComputationError):
    """An enumeration guard tripped."""


class DisconnectedInput(ComputationError):
    """A connected graph (or a connectivity-respecting edge order) was required."""


class ParseError(InputError):
    """Syntax error in a polynomial/integer expression.

    Carries the 0-based character ``position`` and a short description of
    what was expected there.
    """

    def __init__(self, message: str, position: int, expected: str | None = None):
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
        self.position = position
        self.expected = expected


class UnknownVariable(ParseError):
    """An identifier does not name a variable of the ring."""


class UnknownVertex(InputError):
    """An edge endpoint does not name a declared vertex."""


class MixedRings(InputError):
    """An element does not belong to the ring it is used with."""


class NoSuchEdge(InputError):
    """The named edge is not present in the graph."""


class NoSuchVertex(InputError):
    """The named vertex is not present in the graph."""


class UnrelatedGraphs(InputError):
    """Two graphs do not differ by a single supported operation."""


class SchemaError(InputError):
    """A JSON document does not match the expected schema."""
