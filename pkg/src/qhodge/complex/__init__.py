"""Braided exterior algebra of the coinvariant 1-forms and its operators."""
from .tower import (ComplexError, ResourceCapError, Level, Tower, reduced_word,
                    shuffles, perm_sign)
from .operators import WoronowiczComplex, build_complex
from .modular import modular_fields, multi_prime_exterior

__all__ = [
    "ComplexError", "ResourceCapError", "Level", "Tower", "reduced_word",
    "shuffles", "perm_sign", "WoronowiczComplex", "build_complex",
    "modular_fields", "multi_prime_exterior",
]
