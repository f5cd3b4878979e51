"""Frobenius translators over finite fields, the permutations they induce,
and bent functions built from those permutations."""

from .errors import FrobError
from .field import Field, FieldElement, field_new
from .translators import FunctionTable, TranslatorWitness, check_translator, find_translators
from .perms import LinearizedMap, PermTable, check_An, is_permutation
from .bent import BentCertificate, BooleanFunction, WalshSpectrum, certify_bent, is_bent, walsh_transform

__all__ = [
    "BentCertificate", "BooleanFunction", "Field", "FieldElement", "FrobError",
    "FunctionTable", "LinearizedMap", "PermTable", "TranslatorWitness", "WalshSpectrum",
    "certify_bent", "check_An", "check_translator", "field_new", "find_translators",
    "is_bent", "is_permutation", "walsh_transform",
]
__version__ = "0.1.0"
