"""Quasi-cyclic alternant codes on the projective line and key recovery from their invariant subcodes."""

from .agcode import ALTERNANT, GRS, AgSpec, Divisor, alternant_code, eval_code
from .attack import AttackInput, AttackResult, attack, verify_certificate
from .errors import AttackFailure, QcaltError
from .falg import LinearCode
from .ff import GF, FieldTower, make_tower, tower_for
from .invariant import fold, invariant_subcode, predict_invariant, restrict_to_reps
from .projline import Homography, ProjPoint, classify
from .qckeygen import keygen, standard_homography

__version__ = "0.1.0"

__all__ = [
    "ALTERNANT", "GRS", "AgSpec", "AttackFailure", "AttackInput", "AttackResult", "Divisor", "FieldTower",
    "GF", "Homography", "LinearCode", "ProjPoint", "QcaltError", "alternant_code", "attack", "classify",
    "eval_code", "fold", "invariant_subcode", "keygen", "make_tower", "predict_invariant",
    "restrict_to_reps", "standard_homography", "tower_for", "verify_certificate",
]
