"""Search and modular elimination for a^x + b^y = c^z over prime bases."""

from .classnum import class_number_analytic, class_number_forms, z2_candidates
from .enumeration import Solution, Triple, find_solutions, parity_class
from .sieve import CandidateSet, CaseSplit, EliminationCertificate, eliminate_b

__all__ = [
    "CandidateSet",
    "CaseSplit",
    "EliminationCertificate",
    "Solution",
    "Triple",
    "class_number_analytic",
    "class_number_forms",
    "eliminate_b",
    "find_solutions",
    "parity_class",
    "z2_candidates",
]
