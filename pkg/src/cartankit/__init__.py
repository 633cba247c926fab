"""cartankit: exact exterior calculus for Einstein-Cartan gravity on the
orthonormal frame bundle, with a brute-force lemma verification harness."""

from .scalars import Q, ScalarExpr, parse_polynomial, qstr
from .forms import (Form, VectorIndex, basis_beta, basis_gamma, d_dx,
                    equal_by_evaluation, ext_d, interior, rho, wedge)
from .lorentz import (LorentzAlgebraElement, LorentzGroupElement,
                      PoincareDual, PoincareElement, adjoint, bracket,
                      cayley, cayley_from_parameters, coadjoint,
                      epsilon_equivariance_check, group_derivative, pairing,
                      poincare_basis, poincare_dual_basis, standard_basis,
                      structure_constants)

__all__ = [
    "Q", "ScalarExpr", "parse_polynomial", "qstr",
    "Form", "VectorIndex", "basis_beta", "basis_gamma", "d_dx",
    "equal_by_evaluation", "ext_d", "interior", "rho", "wedge",
    "LorentzAlgebraElement", "LorentzGroupElement", "PoincareDual",
    "PoincareElement", "adjoint", "bracket", "cayley",
    "cayley_from_parameters", "coadjoint", "epsilon_equivariance_check",
    "group_derivative", "pairing", "poincare_basis", "poincare_dual_basis",
    "standard_basis", "structure_constants",
]

__version__ = "0.1.0"
