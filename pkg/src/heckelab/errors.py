"""Exception taxonomy shared across the package."""


class HeckelabError(Exception):
    """Base class for package-specific failures."""


class CoverageError(HeckelabError):
    """An eigenvalue for a prime outside the supported prime list was requested."""


class ConstructionError(HeckelabError):
    """An internal consistency check failed while building a graph or spectrum."""


class DegeneracyError(ConstructionError):
    """Eigenvalue clusters could not be separated after reseeding."""


class DataFormatError(HeckelabError):
    """A bundled or cached data file failed validation."""


class ResourceLimitError(HeckelabError):
    """An input exceeds a configured size cap."""


class NumericError(HeckelabError):
    """An iterative numeric routine failed to converge."""
