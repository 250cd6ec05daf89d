"""Exact symbolic dynamics on finitely presented one-sided subshifts."""

from .errors import (DepthOverflow, EntryOverflow, HorizonTooSmall, InadmissibleWord, InputError,
                     NotIrreducible, OracleDepthExceeded, SearchSpaceTooLarge, SymDynError,
                     TrivialShift, TruncationTooShallow, UnsupportedPresentation)
from .language import (Alphabet, LanguageOracle, Subshift, Verdict, admissible_words,
                       builtin_oracle, follower_set, higher_block, is_admissible, is_irreducible,
                       is_nontrivial, predecessor_set)
from .lgs import (LambdaGraphSystem, TransitionMatrixSystem, build_minimal_lgs,
                  check_compatibility, check_condition_I, check_left_resolving,
                  check_predecessor_separated, presented_words, projection_expansion,
                  transition_matrices)
from .sofic import (FischerCover, HatMatrix, determinize_left, export_ck_relations,
                    factor_map_apply, fischer_cover, hat_alphabet, hat_matrix, minimize)
from .sync import (PastClass, SyncVerdict, is_l_synchronizing, is_lambda_synchronizing,
                   past_equivalence_classes, synchronizing_words)

__version__ = "0.1.0"

__all__ = [
    "DepthOverflow", "EntryOverflow", "HorizonTooSmall", "InadmissibleWord", "InputError",
    "NotIrreducible", "OracleDepthExceeded", "SearchSpaceTooLarge", "SymDynError", "TrivialShift",
    "TruncationTooShallow", "UnsupportedPresentation", "Alphabet", "LanguageOracle", "Subshift",
    "Verdict", "admissible_words", "builtin_oracle", "follower_set", "higher_block",
    "is_admissible", "is_irreducible", "is_nontrivial", "predecessor_set", "LambdaGraphSystem",
    "TransitionMatrixSystem", "build_minimal_lgs", "check_compatibility", "check_condition_I",
    "check_left_resolving", "check_predecessor_separated", "presented_words",
    "projection_expansion", "transition_matrices", "FischerCover", "HatMatrix",
    "determinize_left", "export_ck_relations", "factor_map_apply", "fischer_cover",
    "hat_alphabet", "hat_matrix", "minimize", "PastClass", "SyncVerdict", "is_l_synchronizing",
    "is_lambda_synchronizing", "past_equivalence_classes", "synchronizing_words",
]
