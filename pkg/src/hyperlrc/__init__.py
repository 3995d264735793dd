"""Optimal locally repairable codes from sparse hypergraphs.

Finite-field arithmetic, exact linear algebra, sparse hypergraph generation,
two parity-check constructions and exhaustive certifiers for their
distance, locality and erasure-recovery properties.
"""

from .errors import DecodeFailure, FieldMismatchError, ParameterError, WorkCapExceeded
from .galois import Field, FieldElement, field_new, parse_field_spec
from .matgf import MatrixGF, columns_independent, nullspace, rank, rref, solve, vandermonde
from .hypergraph import (FreenessSpec, Hypergraph, check_generating_system, greedy_sparse,
                         is_free, is_simultaneously_free, random_sparse)
from .construct import (LrcCode, construct_a, construct_a_repeated, construct_b,
                        from_hypergraph_a, from_hypergraph_b)
from .verify import (DistanceResult, ErasurePattern, OptimalityReport, distance_search, lemma_nk,
                     meets_recovery_conditions, min_distance, recoverable, singleton_report, verify_locality)
from .codec import decode_erasures, encode, generator_matrix, local_repair
from .extend import (GsdCode, HlrcCode, gsd_construct_c, gsd_construct_d, gsd_verify,
                     hlrc_bound_check, hlrc_construct)

__version__ = "0.1.0"
