"""Exception hierarchy.

``InvalidInput`` subclasses signal bad arguments (CLI exit 1);
``NumericalFailure`` subclasses signal that a valid problem could not be
solved to tolerance (CLI exit 2).
"""


class SublatticeError(Exception):
    """Base class for every error raised by this package."""

    code = "error"


class InvalidInput(SublatticeError, ValueError):
    code = "invalid-argument"


class UnstableCouplingError(InvalidInput):
    code = "unstable-coupling"


class UnphysicalSpectrumError(InvalidInput):
    code = "unphysical-spectrum"


class DivergentEntropyError(InvalidInput):
    code = "divergent-entropy"


class InvalidCorrelatorError(InvalidInput):
    code = "invalid-correlator"


class NumericalFailure(SublatticeError, ArithmeticError):
    code = "numerical-failure"


class EigensolverStalled(NumericalFailure):
    code = "eigensolver-stalled"


class QuadratureError(NumericalFailure):
    code = "quadrature-nonconvergence"


class SpectrumTooFlatError(NumericalFailure):
    code = "spectrum-too-flat"

    def __init__(self, mode: int, n_max: float):
        super().__init__(
            f"mode {mode} needs {n_max:.3g} ladder levels (limit 1e8)"
        )
        self.mode = mode
        self.n_max = n_max
