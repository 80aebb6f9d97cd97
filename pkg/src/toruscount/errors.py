"""Exception types shared across the package."""


class SchemaError(ValueError):
    """Input document is structurally malformed (missing/ill-typed fields)."""


class SpecValidationError(ValueError):
    """Input parses but violates a semantic requirement (bad generator, unstable multiset, ...)."""


class NotFaithfulError(SpecValidationError):
    """Operation requires a faithful coweight system but the kernel is nontrivial."""


class EnumerationCapError(RuntimeError):
    """An enumeration would exceed its configured size cap."""


class LatticeNotPreservedError(ValueError):
    """Matrix does not map the relation lattice into itself."""
