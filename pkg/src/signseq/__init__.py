"""Signs for sequences of unit-ball vectors in normed planes with bounded prefix sums."""

from .admissible import (
    AdmissibleSet,
    Atom,
    EnumerationCapExceeded,
    InputTooLong,
    insert,
    insert_step,
    is_admissible,
    pi_set,
    radius,
)
from .adversary import AdversaryConfig, build_lower_bound_sequence, choose_unit_vector, verify_adversary
from .highdim import euclidean_family, family_radius_lower_bound, maxnorm_family
from .norms import EUCLIDEAN, L1, LINF, NormSpec, build_gauge, norm, parse_norm, rotate
from .oracle import OracleResult, all_patterns_exceed, brute_force_minmax
from .signer import SignResult, greedy_sign, sign_sequence, verify_sign_result

__version__ = "0.1.0"
