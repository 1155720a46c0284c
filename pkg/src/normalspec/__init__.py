"""Normal matrices with prescribed spectra, majorization of point families,
and doubly stochastic witnesses for the zeros of polynomials.

Submodules
----------
poly           complex polynomials and an Aberth-Ehrlich root finder
linalg         unitary completions, compound matrices, characteristic polynomials
lp             dense phase-1 simplex for nonnegative feasibility
majorization   the hull order, the doubly stochastic order, scalar majorization
inverse        normal matrices from two spectra; Weyl function; Hessenberg form
gauss_lucas    witnesses relating the roots of p and p'
mason_shapiro  eigenpolynomials of f -> (Q f)^(k)
convex         descriptors of convex test functions
svg            static root scatter plots
cli            command-line front end
"""

__version__ = '0.1.0'

from . import errors  # noqa: E402
from .errors import *  # noqa: E402,F401,F403
from .poly import (ComplexPoly, as_poly, from_roots, derivative, roots,  # noqa: E402
                   cauchy_bound, match_roots, merge_multiple_roots)
from .linalg import (unitary_with_last_row, compound, char_poly,  # noqa: E402
                     unitary_stochastic, schur_triangularize)
from .lp import LPResult, lp_feasible  # noqa: E402
from .convex import ConvexFunction, random_battery  # noqa: E402
from .majorization import (BistochasticWitness, MajorizationReport,  # noqa: E402
                           point_in_hull, prec_check, prec_ds_check, majorize,
                           hlp_check, t_transform_witness, petrov_extend,
                           projection_probe)
from .inverse import (SpectralPair, NormalModel, HessenbergForm,  # noqa: E402
                      WeylFunction, residues, solvable, solve_inverse,
                      principal_residual, weyl_function, weyl_eval,
                      quasi_jacobi, compress, compression_check,
                      pair_from_weights, multiplicity_diagnostic)
from .gauss_lucas import (gl_witness, sk_witness, block_row_sum_probe,  # noqa: E402
                          prodeq_check, debruijn_check, schoenberg_check,
                          dft_normal_witness, diagonal_majorization_probe,
                          hull_corollary_check)
from .mason_shapiro import (TqOperator, MSReport, tq_matrix, eigen_poly,  # noqa: E402
                            ms_zero_report)

__all__ = errors.__all__ + [
    'ComplexPoly', 'as_poly', 'from_roots', 'derivative', 'roots', 'cauchy_bound',
    'match_roots', 'merge_multiple_roots',
    'unitary_with_last_row', 'compound', 'char_poly', 'unitary_stochastic',
    'schur_triangularize',
    'LPResult', 'lp_feasible',
    'ConvexFunction', 'random_battery',
    'BistochasticWitness', 'MajorizationReport', 'point_in_hull', 'prec_check',
    'prec_ds_check', 'majorize', 'hlp_check', 't_transform_witness', 'petrov_extend',
    'projection_probe',
    'SpectralPair', 'NormalModel', 'HessenbergForm', 'WeylFunction', 'residues',
    'solvable', 'solve_inverse', 'principal_residual', 'weyl_function', 'weyl_eval',
    'quasi_jacobi', 'compress', 'compression_check', 'pair_from_weights',
    'multiplicity_diagnostic',
    'gl_witness', 'sk_witness', 'block_row_sum_probe', 'prodeq_check', 'debruijn_check',
    'schoenberg_check', 'dft_normal_witness', 'diagonal_majorization_probe',
    'hull_corollary_check',
    'TqOperator', 'MSReport', 'tq_matrix', 'eigen_poly', 'ms_zero_report',
]
