"""Error types shared across the package.

Argument errors (bad indices, dimension mismatches, malformed inputs) are
plain ``ValueError``s.  The classes below mark failures that arise at run
time from a structurally valid request; the CLI maps them to exit code 1
while ``ValueError`` maps to exit code 2.
"""


class CapacityError(RuntimeError):
    """An exhaustive or dense operation was asked to exceed its size cap."""


class NoConsistentListError(RuntimeError):
    """Decision-list peeling found no qualifying gate for the remaining data."""


class InconsistentDataError(ValueError):
    """The dataset contains duplicate inputs with contradictory labels."""
