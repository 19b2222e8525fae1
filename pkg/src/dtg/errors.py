"""Exception types shared across the package."""


class GraphParseError(ValueError):
    """Malformed edge-list / graph6 / certificate input."""


class ContractViolation(ValueError):
    """A documented precondition was not met by the caller."""


class InternalContradiction(RuntimeError):
    """A step that is guaranteed to succeed for valid inputs failed.

    Seeing this means either the caller violated an unverifiable precondition
    (e.g. handed in orders that do not define the graph) or there is a bug in
    the pipeline; it is never a legitimate "reject" answer.
    """
