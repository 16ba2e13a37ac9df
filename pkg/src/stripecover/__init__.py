"""Exact piecewise-linear stripe covers, coordinate approximators, McShane
extensions, 1-D derivation models and projection experiments."""

from .coord_approx import CoordApproximator
from .errors import (BudgetError, ConsistencyError, DomainError, InvariantError,
                     PreconditionError, SchemaError, StripeCoverError)
from .extension import SampleSet, bounded_mcshane_extend, mcshane_extend, pointwise_lip
from .null1d import Measure1D, OpenCover1D, StepFunction, apply_derivation_1d, build_phi_1d
from .pl import PLFunction, pointwise_max, pointwise_min, scalar
from .projections import Direction, four_corner, project_length, projection_report
from .stripes import Arrangement, Curve, Stripe, covers, disjointify, uncross

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "BudgetError", "ConsistencyError", "CoordApproximator", "Curve", "Direction",
    "DomainError", "InvariantError", "Measure1D", "OpenCover1D", "PLFunction",
    "PreconditionError", "SampleSet", "SchemaError", "StepFunction", "Stripe",
    "StripeCoverError", "apply_derivation_1d", "bounded_mcshane_extend", "build_phi_1d",
    "covers", "disjointify", "four_corner", "mcshane_extend", "pointwise_lip", "pointwise_max",
    "pointwise_min", "project_length", "projection_report", "scalar", "uncross",
]
