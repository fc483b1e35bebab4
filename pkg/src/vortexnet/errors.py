"""Exception types shared across the package."""


class VortexNetError(Exception):
    """Base class for library-specific errors."""


class FieldFormatError(VortexNetError):
    """A field file has a malformed header or an unparseable payload."""


class DimensionMismatchError(FieldFormatError):
    """Declared grid size disagrees with the number of stored values."""


class NonFiniteValueError(VortexNetError):
    """A vorticity array contains NaN or infinite entries."""


class MemoryCapError(VortexNetError):
    """Materializing the dense matrix would exceed the caller's byte cap."""


class PowerIterationError(VortexNetError):
    """Power iteration did not converge within the iteration budget.

    Carries the index of the eigenpair that stalled, the last observed
    iterate-to-iterate residual, and the number of iterations spent.
    """

    def __init__(self, pair_index: int, residual: float, iterations: int):
        self.pair_index = pair_index
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"eigenpair {pair_index} not converged after {iterations} "
            f"iterations (last residual {residual:.3e})"
        )


class DegenerateSampleError(VortexNetError):
    """Every eigenvalue of the sampled principal block fell below the
    pseudo-inverse cutoff; the sample carries no usable spectral mass
    and should be redrawn."""
