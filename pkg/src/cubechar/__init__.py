"""Exact verification toolkit for the character family mu(Fix(s))^alpha on
the tower of permutation groups of finite binary cubes."""

from .appendix import (
    CyclePair,
    MkGenerators,
    SiFamily,
    SiVerification,
    construct_si,
    lemma_g1,
    minimal_level,
    mk_generators,
    verify_si_properties,
)
from .characters import (
    Alpha,
    BasePower,
    GramReport,
    centrality_check,
    char_eval,
    char_power,
    fixproj_identity_check,
    gram_matrix,
    multiplicativity_check,
    psd_check_exact,
    psd_check_float,
    quadratic_form,
)
from .certreal import Enclosure, certify_sign
from .cube import (
    DEFAULT_LEVEL_CAP,
    BinaryWord,
    NiceSet,
    measure,
    nice_intersect,
    nice_product,
    nice_union,
)
from .dyadic import Dyadic, parse_dyadic
from .errors import (
    CapExceededError,
    FalsificationError,
    InternalInconsistencyError,
    LevelMismatchError,
    PreconditionError,
)
from .gnsfinite import (
    ProjectionIdentityReport,
    RepMatrix,
    TruncatedRep,
    matrix_character,
    projection_identity_checks,
    rep_matrix,
    scan_is_constant,
    stabilization_scan,
    tensor_character,
    weighted_inner,
    xi_vector,
)
from .obstruction import (
    ObstructionReport,
    alt_trace_bruteforce,
    alt_trace_closed_form,
    c_alpha_integer,
    c_alpha_real,
    noninteger_witness,
    signed_derangement_sum,
    signed_derangement_sum_bruteforce,
    signed_fixcount_distribution,
    stirling2,
    stirling2_recurrence,
)
from .perm import (
    CubePermutation,
    CycleType,
    ProductFormPermutation,
    all_permutations,
    apply_to_nice,
    are_conjugate,
    compose,
    conjugate,
    cycle_string,
    cycle_type,
    cycle_type_of,
    embed_head,
    embed_tail,
    fixed_count,
    fixed_fraction,
    fixed_fraction_of,
    fixed_set,
    flip_perm,
    from_cycles,
    identity,
    odometer,
    parse_permutation,
    random_permutation,
    table_string,
    transposition,
    uniform_distance,
)

__version__ = "0.1.0"
