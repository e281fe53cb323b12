"""Eigenprojections, Drazin inverses and matrix components from annihilating polynomials."""

from .applications import (
    LaplacianMatrix, StochasticMatrix, cesaro_oracle, laplacian_forest_projection, markov_limit,
)
from .charpoly import CharData, IndexInfo, charpoly, faddeev, index_of, index_of_power, index_power_check
from .components import (
    ComponentSet, Spectrum, check_power_indices, component_from_eigenvalues, components,
    eigenprojection_at, eigenprojection_from_eigenvalues, eigenvalues, exp_values, matrix_function,
    minimal_polynomial, minimal_polynomial_of_power, poly_values, resolvent_values,
)
from .drazin import (
    DrazinMethod, DrazinResult, drazin_inverse, drazin_power, drazin_shifted, group_inverse,
    verify_drazin_axioms,
)
from .eigenprojection import (
    Eigenprojection, Source, build_h, eigenprojection, eigenprojection_from_annihilator,
    oracle_adjugate, oracle_basis, oracle_limit, split_annihilator, verify_characterizations,
)
from .errors import *  # noqa: F401,F403
from .io import format_matrix, parse_matrix
from .numcore import Backend, CRational, Poly, ToleranceConfig, as_matrix, to_exact, to_float
from .verify import verify_matrix
