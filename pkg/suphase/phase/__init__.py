from .polar import Convention, PolarFactors, as_convention
from .polar import positive_factor, partial_isometry, numeric_kernel, polar_factors
from .polar import su2_invariant_completion, su2_shift_E, phase_hermitian
from .polar import cartan_commutation_residual, d_identity_residuals
from .complementarity import PauliPair, ComplementarySolution, AdditiveSolution, ClosureReport, CompletionSearch
from .complementarity import pauli_generators, pauli_relation_residuals, pauli_order_residual
from .complementarity import complementary_E12, complementary_E23, complementary_E13, complementary_solution
from .complementarity import complementary_phase, complementarity_check, additivity_solve, polar_constraint_residual
from .complementarity import common_eigenbasis, monomial_residual, pauli_closure_check
from .complementarity import complementary_completion_search
from .noncommutativity import NoncommutativityReport, DEFAULT_ROOTS
from .noncommutativity import formula_su3, formula_su4, formula_value, group_commutator, phase_operator
from .noncommutativity import noncommutativity_norm, sweep, decay_fit
from .gamma import GammaSu2, GammaSu3, IntertwinerK, DftEigensystem
from .gamma import gamma_su2, gamma_su2_commutation_residual, nonhermiticity_witness, intertwiner
from .gamma import hermitize, hermitize_check, s_recursion_check, k_commutation_residual, spectrum_residual
from .gamma import gamma_phase_part, gamma_phase_residual, gamma_su3, gamma_su3_commutation_residual
from .gamma import su3_limit_deviation, dft_eigensystem
