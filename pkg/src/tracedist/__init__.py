"""Distinguishing bit strings from deletion-channel traces.

Mean profiles and potential statistics, exact integer polynomial analysis
(root multiplicity at 1, sign changes), certified maximum modulus on shifted
circles, block-structure decomposition, explicit hard pairs at edit
distance 4, and equal-power-sum set extraction.
"""

from .channel import (
    MeanProfile,
    TraceBatch,
    empirical_mean_profile,
    exact_mean_profile,
    exact_potential_expectation,
    read_trace_file,
    sample_batch,
    sample_trace,
    write_trace_file,
)
from .construct import (
    HardPairSpec,
    PairAnalysis,
    alternating_pair,
    analyze_pair,
    cyclotomic_product,
    hard_pair,
    pte_degree,
    pte_degree_from_sets,
    pte_sets,
    read_pair_file,
    verify_pte,
    write_pair_file,
)
from .distinguish import (
    Decision,
    mean_based_distinguish,
    potential_distinguish,
    required_samples,
    select_k,
)
from .errors import InvariantViolation
from .polynomial import (
    CircleParams,
    IntPolynomial,
    SupremumCertificate,
    circle_supremum,
    from_string,
    modulus_on_circle,
    mult_to_sup_lower_bound,
    multiplicity_at_one,
    norms,
    quotient_mass_bound,
    sign_changes,
    string_difference,
)
from .strings import (
    BitString,
    Block,
    BlockDecomposition,
    WeightMismatchError,
    block_decompose,
    edit_distance,
    edit_distance_within,
    hamming_distance,
)

__version__ = "0.1.0"

__all__ = [
    "BitString",
    "Block",
    "BlockDecomposition",
    "CircleParams",
    "Decision",
    "HardPairSpec",
    "IntPolynomial",
    "InvariantViolation",
    "MeanProfile",
    "PairAnalysis",
    "SupremumCertificate",
    "TraceBatch",
    "WeightMismatchError",
    "alternating_pair",
    "analyze_pair",
    "block_decompose",
    "circle_supremum",
    "cyclotomic_product",
    "edit_distance",
    "edit_distance_within",
    "empirical_mean_profile",
    "exact_mean_profile",
    "exact_potential_expectation",
    "from_string",
    "hamming_distance",
    "hard_pair",
    "mean_based_distinguish",
    "modulus_on_circle",
    "mult_to_sup_lower_bound",
    "multiplicity_at_one",
    "norms",
    "potential_distinguish",
    "pte_degree",
    "pte_degree_from_sets",
    "pte_sets",
    "quotient_mass_bound",
    "read_pair_file",
    "read_trace_file",
    "required_samples",
    "sample_batch",
    "sample_trace",
    "select_k",
    "sign_changes",
    "string_difference",
    "verify_pte",
    "write_pair_file",
    "write_trace_file",
]
