"""Computation in finite-dimensional commutative unitary algebras.

Structure-constant algebras, A-derivatives and Cauchy-Riemann checks, and
polynomial root finding through a complete orthogonal idempotent system.
"""

__version__ = "0.1.0"

from .algebra import (AlgebraPolynomial, AlgebraTable, AxiomReport, FieldTag, add, eval_poly,
                      mul, neg, parse_algebra, regular_representation, scalar_mul, verify_algebra)
from .errors import (DimensionError, HypalgError, IncompleteSystem, NonSplit,
                     NotSemisimpleOrDegenerate, ParseError, SpectralError, UnsupportedOrder,
                     VerificationFailed)
from .fixtures import load_fixture
from .holomorphy import (a_derivative, check_cauchy_riemann, directional_derivative,
                         formal_poly_derivative, taylor_eval)
from .polysolve import (ComponentSolution, RootSet, SolutionKind, SolveOptions, reduce, residual,
                        solve, solve_scalar)
from .spectral import (IdempotentSystem, SpectralConfig, find_idempotent_system, pierce_project,
                       recombine, verify_idempotent_system)

__all__ = [
    "AlgebraPolynomial", "AlgebraTable", "AxiomReport", "FieldTag", "add", "eval_poly", "mul",
    "neg", "parse_algebra", "regular_representation", "scalar_mul", "verify_algebra",
    "DimensionError", "HypalgError", "IncompleteSystem", "NonSplit", "NotSemisimpleOrDegenerate",
    "ParseError", "SpectralError", "UnsupportedOrder", "VerificationFailed",
    "a_derivative", "check_cauchy_riemann", "directional_derivative", "formal_poly_derivative",
    "taylor_eval", "ComponentSolution", "RootSet", "SolutionKind", "SolveOptions", "reduce",
    "residual", "solve", "solve_scalar", "IdempotentSystem", "SpectralConfig",
    "find_idempotent_system", "pierce_project", "recombine", "verify_idempotent_system",
    "load_fixture",
]
