"""Rudin-Shapiro and Fekete polynomials: exact construction, unit-circle
evaluation, M_q norms and Mahler measures by two independent methods, and
numerical checks of the associated identities and theorems.
"""

from .errors import (ConstructionError, ConvergenceError, DomainError,
                     MahlerError, SizeError, UndersamplingError)
from .evaluate import (CircleSamples, default_grid_size, evaluate_at_roots,
                       evaluate_at_roots_any, evaluate_point, evaluate_points)
from .measures import (Arc, MeasureResult, MomentSeries, QuadratureConfig,
                       RootConfig, RootSet, mahler_jensen, mahler_quadrature,
                       moment_log_identity, moment_series, mq_norm,
                       roots_aberth)
from .polynomials import (Family, NormalizedPolynomial, RudinShapiroPair,
                          SignPolynomial, fekete, fekete_shifted,
                          legendre_symbol, negate_variable, normalize,
                          rudin_shapiro)

__all__ = [
    "Arc", "CircleSamples", "ConstructionError", "ConvergenceError",
    "DomainError", "Family", "MahlerError", "MeasureResult", "MomentSeries",
    "NormalizedPolynomial", "QuadratureConfig", "RootConfig", "RootSet",
    "RudinShapiroPair", "SignPolynomial", "SizeError", "UndersamplingError",
    "default_grid_size", "evaluate_at_roots", "evaluate_at_roots_any",
    "evaluate_point", "evaluate_points", "fekete", "fekete_shifted",
    "legendre_symbol", "mahler_jensen", "mahler_quadrature",
    "moment_log_identity", "moment_series", "mq_norm", "negate_variable",
    "normalize", "roots_aberth", "rudin_shapiro",
]

__version__ = "0.1.0"
