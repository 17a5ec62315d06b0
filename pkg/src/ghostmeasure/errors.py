"""Exception types shared across the package.

The CLI maps these onto exit codes: DomainError -> 2, ResourceCapError -> 3,
I/O failures -> 4.
"""


class DomainError(ValueError):
    """A mathematical precondition on the input was violated."""


class ResourceCapError(RuntimeError):
    """The requested computation exceeds the configured size caps."""


class CatalogError(DomainError):
    """Unknown catalog entry name."""
