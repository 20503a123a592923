"""
Translations between display sequents/proofs and labeled polytree
sequents/proofs.
"""
from .notation import to_display, to_labeled
from .equivalence import (derive_equivalence, derive_partition_invariance,
                          derive_root_relabel, derive_toggle, normalize)
from .display_to_labeled import sigma_l, translate_d2l
from .labeled_to_display import sigma_d, translate_l2d
from .trace import TranslationTrace

__all__ = [
    "to_display", "to_labeled", "normalize", "derive_equivalence",
    "derive_partition_invariance", "derive_toggle", "derive_root_relabel",
    "translate_d2l", "translate_l2d", "sigma_l", "sigma_d", "TranslationTrace",
]
