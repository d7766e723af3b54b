"""Exception taxonomy shared by all modules."""


class BellqError(Exception):
    """Base class for all toolkit errors."""


class ShapeError(BellqError):
    """Dimension or length mismatch between operands."""


class ZeroStateError(BellqError):
    """State construction produced the zero vector."""


class BipartitionError(BellqError):
    """Invalid split of the qubit set."""


class NotPositiveError(BellqError):
    """Density matrix has an eigenvalue below the noise floor."""


class NotUnitaryError(BellqError):
    """Matrix fails the unitarity check."""


class SizeLimitError(BellqError):
    """Requested computation exceeds the dense-vector size caps."""


class NotApplicableError(BellqError):
    """Requested analytic construction does not apply to this input."""


class DomainError(BellqError):
    """Numeric argument outside its mathematical domain."""


class DegenerateFitError(BellqError):
    """Fit requested through coincident abscissae."""
