"""List decoding of insertions and deletions: bounds, codes, decoders and oracles."""
from .bounds import (
    BoundResult,
    EditWitness,
    RadiusProfile,
    delta_insdel,
    deletion_only_bound,
    equal_radius_bound,
    johnson_bound,
    johnson_condition,
    lemma1_bound,
    plotkin_bound,
    radius_curves,
    summary_bound,
    wz_u_value,
)
from .channel_oracle import brute_force_list, corrupt, list_size_profile, max_code_search, max_list_size
from .concat_codec import (
    ConcatParams,
    concat_encode,
    derive_insertion_params,
    derive_params,
    list_decode_insdel,
    list_decode_insertions,
)
from .field_rs import Polynomial, PrimeField, brute_force_recover, rs_encode, sudan_list_recover
from .inner_code import InnerCode, inner_encode, inner_list_decode, search_inner_code
from .metric import CodeBook, Word, in_insdel_ball, lcs, levenshtein_distance, min_code_distance

__version__ = "0.1.0"
