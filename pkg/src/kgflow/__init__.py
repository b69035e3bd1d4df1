"""Truncated Lie-series flow of torus Hamiltonians.

Exact sparse trig-polynomial algebra drives the symbolic stage (coordinate
Lie series, Jacobian determinant series, conformal-factor inversion); a
deterministic numeric lattice stage produces fields, sign maps, error
diagnostics, and metric-degeneration times.
"""

from . import errors
from .conformal import (
    ConformalSeries,
    ConformalValue,
    TrigPolySeries,
    build_conformal_series,
    conformal_series,
    error_indicator,
    eval_conformal,
    jacobian_series,
    real_time_jacobian_series,
)
from .estimator import ConformalFactorModel, check_sample_points
from .expressions import format_trigpoly, parse_expression, parse_hamiltonian
from .fields import (
    FieldGrid,
    GridEvaluator,
    SignMap,
    critical_time,
    diagonal_errmap,
    eval_points,
    evaluate_field,
    real_flow_oracle,
    sign_map,
)
from .lieseries import (
    CoordLieSeries,
    build_lie_series,
    hamiltonian_derivation,
    naive_lie_series,
)
from .scalars import PiRational, rat
from .trigpoly import TrigPoly, linear_combine

__version__ = "0.1.0"

__all__ = [
    "ConformalFactorModel",
    "ConformalSeries",
    "ConformalValue",
    "CoordLieSeries",
    "FieldGrid",
    "GridEvaluator",
    "PiRational",
    "SignMap",
    "TrigPoly",
    "TrigPolySeries",
    "build_conformal_series",
    "build_lie_series",
    "check_sample_points",
    "conformal_series",
    "critical_time",
    "diagonal_errmap",
    "error_indicator",
    "errors",
    "eval_conformal",
    "eval_points",
    "evaluate_field",
    "format_trigpoly",
    "hamiltonian_derivation",
    "jacobian_series",
    "linear_combine",
    "naive_lie_series",
    "parse_expression",
    "parse_hamiltonian",
    "rat",
    "real_flow_oracle",
    "real_time_jacobian_series",
    "sign_map",
    "__version__",
]
