from .weightspace import OccupationState, WeightVector, RootLabel, OrderedBasis, StringPartition, EdgeOverlap
from .weightspace import enumerate_basis, basis_dimension, weight_of, root_vector, cartesian_embedding
from .weightspace import su2_strings, kernel_states, edge_overlap_count
from .repmatrix import ComplexMatrix, GeneratorSet, Su2Matrices
from .repmatrix import generator_matrix, cartan_matrix, number_matrix, generator_set
from .repmatrix import commutation_residual, su2_matrices, su2_commutation_residual, schwinger_residual
from .repmatrix import hermitian_pairing_residual, cartan_weight_residual
