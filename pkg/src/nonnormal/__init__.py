"""Proof search, cut elimination and uniform interpolation for non-normal
modal and conditional logics."""

from .calculus import LOGICS, logic
from .cutelim import eliminate_cut
from .interpolation import (exists_formula, forall_formula, forall_sequent,
                            lyndon_interpolant, plain_exists, plain_forall,
                            search_craig_interpolant, translate_s, translate_t)
from .prover import Proof, check_proof, prove, provable
from .sequent import Sequent, parse_sequent, print_sequent
from .syntax import Language, Polarity, parse_formula, print_formula
from .verify import verify_interpolant

__all__ = [
    "LOGICS", "logic", "eliminate_cut", "exists_formula", "forall_formula",
    "forall_sequent", "lyndon_interpolant", "plain_exists", "plain_forall",
    "search_craig_interpolant", "translate_s", "translate_t", "Proof",
    "check_proof", "prove", "provable", "Sequent", "parse_sequent",
    "print_sequent", "Language", "Polarity", "parse_formula", "print_formula",
    "verify_interpolant",
]
