"""Symmetry-preserving finite element schemes in one dimension."""

from .groups import (
    BurgersElement,
    ExpGroupElement,
    PainleveElement,
    Sl2Element,
    SuperpositionElement,
    act_jet,
    act_point,
    compose,
    inverse,
)
from .mesh import DiscreteJet, Mesh, build_uniform_mesh, hat_deriv, hat_eval, stencil_quantities
from .schemes import LinearProblem, SchemeId, StartUp, march_ivp
from .solvers import ConvergenceTable, NewtonConfig, estimate_order, newton_scalar, solve_tridiagonal

__version__ = "0.1.0"
