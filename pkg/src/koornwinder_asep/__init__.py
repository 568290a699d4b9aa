"""Exact computation of Koornwinder moments through the two-species ASEP."""

from .ansatz import ParamPoint, build_operators, random_points
from .chains import Rates, ansatz_weights, build_chain, simulate, stationary
from .exact import DegenerateParameterError, GaussianRational, Poly, exact_determinant
from .moments import K, Z, Z_two_species, jacobi_trudi_K
from .q1 import K_hook, Q1Params
from .report import Report

__version__ = "0.1.0"
