"""Exception hierarchy.

Every exception carries a stable machine-readable ``code`` string so that
callers (and the command line front end) can react without parsing messages.
"""

from __future__ import annotations


class QuadCoherentError(Exception):
    """Base class for all library errors."""

    code = "error"


class InvalidInput(QuadCoherentError):
    """Malformed external input (JSON document, flag value, ...)."""

    code = "invalid_input"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class DimensionMismatch(QuadCoherentError):
    code = "dimension_mismatch"


class NotSymmetric(QuadCoherentError):
    code = "not_symmetric"


class DegenerateSpectrum(QuadCoherentError):
    code = "degenerate_spectrum"


class SingularEigenbasis(QuadCoherentError):
    code = "singular_eigenbasis"


class GammaNotReal(QuadCoherentError):
    code = "gamma_not_real"


class NotTrapRegime(QuadCoherentError):
    code = "not_trap_regime"


class SingularAlphaMatrix(QuadCoherentError):
    code = "singular_alpha_matrix"


class AsymmetricSolution(QuadCoherentError):
    code = "asymmetric_solution"


class NotNormalizable(QuadCoherentError):
    code = "not_normalizable"


class SingularMomentSystem(QuadCoherentError):
    code = "singular_moment_system"


class InvalidParams(QuadCoherentError):
    code = "invalid_params"


class NumericalBreakdown(QuadCoherentError):
    code = "numerical_breakdown"


class GridTooCoarse(QuadCoherentError):
    code = "grid_too_coarse"


class RangeError(QuadCoherentError):
    code = "range_error"
