"""Tangential interpolation by contractive multipliers between weighted
Hardy spaces: Pick matrices, solution parametrization and verification."""
from .analytic import AnalyticMatrixFunction, constant, from_callable, rational
from .errors import (DomainError, EvaluationError, InvalidArgumentError, SolverPreconditionError,
                     UnstablePairError, UnsupportedProblemError, WeightedPickError)
from .estimator import TangentialInterpolator
from .pick import (PsdClass, PsdVerdict, SolvabilityReport, is_psd, kernel_block_matrix, np_data,
                   np_pick_closed_form, pick_matrix, solvability)
from .solver import (SchurParameter, ThetaRealization, central_solution, choose_mu, random_schur_parameter,
                     solve_parametrized, theta_blocks, theta_eval, theta_identity_residual, theta_realization)
from .statespace import (GramianResult, InterpolationData, TangentialResult, growth_rate, kernel_at_operator,
                         obs_apply, obs_coeffs, obs_function, obs_gramian, obs_gramian_series,
                         shift_adjoint_coeffs, solve_stein, spectral_radius, stein_residual, tangential_eval,
                         taylor_coeffs, tilde_obs_matrix)
from .verify import (REFERENCE_KHAT, CounterexampleReport, GridSpec, InterpolationCheck, check_contractive,
                     check_interpolation, contractivity_witness, counterexample_function, counterexample_report,
                     default_grid, multiplier_kernel_gram)
from .weights import (WeightSequence, hardy, kernel_eval, kernel_matrix, kernel_tilde_eval, kernel_tilde_matrix,
                      make_weight_bergman, make_weight_explicit, psi_apply, weight_from_spec)

__version__ = "0.1.0"
