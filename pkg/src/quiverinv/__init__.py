"""Exact invariant theory of quivers and matrix tuples."""
from .fields import GF, QQ, FieldMismatchError, parse_field
from .linalg import ExactMatrix, rank_and_nullspace
from .characters import (
    DominantWeight, NotAGoodCharacterError, TorusCharacter, schur_character, schur_decompose,
    weight_multiplicity,
)
from .quiver import (
    GroupElement, MatrixTuple, Quiver, QuiverRep, act, chi_sigma, embed_rep, kronecker_quiver,
    loop_quiver, path_counts, sigma_norm,
)
from .invariants import (
    CycleInvariant, WordInvariant, char_coeffs, cycle_generators, enumerate_word_generators,
    eval_word_invariant, expand_invariant, phi_star_eval,
)
from .nullcone import BlockSemiInvariant, eval_block_det, nullcone_family, nullcone_member, weight_check
from .hilbert import (
    cauchy_dimension_check, hilbert_truncation, invariant_dim, matrix_invariants,
    matrix_semi_invariants, quiver_invariants, quiver_semi_invariants, rep_character,
)
from .harness import (
    BoundRequest, DegreeProfile, ResourceLimitError, bound_value, generation_profile,
    lie_invariant_dim, nullcone_zero_locus_check, separate,
)
from .kernels import BACKEND

__version__ = "0.1.0"
