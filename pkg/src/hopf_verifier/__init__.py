"""Exact verification of a null-plane quantum deformation of the Poincare algebra."""

from .algebra import (AlgebraError, NCPolynomial, NonConvergent, NonTerminating, Presentation,
                      TensorRing, UnknownGenerator, UnmappedGenerator, apply_generator_map,
                      check_jacobi, nc_commutator, nc_exp, nc_multiply, normal_order)
from .dsl import ParseError, UndeclaredGenerator, parse_presentation, serialize
from .hopf import antipode, check_hopf_axioms, coproduct, counit, flip, tensor_multiply
from .matrixrep import RepMatrix, ReductionFailure, build_rep
from .nullplane import UnknownPresentation, build_presentation
from .report import CheckResult, Report
from .rmatrix import UniversalR, build_universal_R
from .series import ZSeries, series_arith, series_exp_inv
from .suites import SuiteConfig, run_suite

__version__ = "0.1.0"
