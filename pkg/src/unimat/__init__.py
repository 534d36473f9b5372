"""Exact unimodular matrix completion and primitivity probabilities."""

from .bounds import (
    BoundParams,
    limit_probability,
    min_usable_s,
    oversimplified_bound,
    simple_bound,
    theorem1_bound,
)
from .completion import (
    CompletionResult,
    RngSpec,
    complete_one_row,
    complete_unimodular,
    determinant_reduce,
    iterated_determinant_reduce,
    random_extension,
)
from .experiments import ExperimentConfig, ExperimentReport, empirical_probability, run_table
from .linalg import (
    HnfResult,
    det,
    extended_gcd_vector,
    hnf,
    lattices_equal,
    left_kernel_primitive,
    rank_mod_p,
    solve_nonsingular,
)
from .matrix import EmptyMat, IntMat, max_norm, parse_matrix, serialize_matrix
from .primitivity import is_primitive, is_primitive_minor_oracle, unprimitive_witness

__version__ = "0.1.0"
