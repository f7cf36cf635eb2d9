"""Arithmetical rank of simplicial toric varieties of codimension 2."""

from .analyze import AraReport, ConditionReport, analyze, check_conditions_ABCD, check_conditions_I_II, classify
from .construct import TripleResult, almost_sci_triple, build_A_matrices
from .gluing import (
    GluingCertificate,
    GluingTree,
    check_p_gluing,
    completely_p_glued,
    stci_pair_example35,
    stci_pair_prime_power,
)
from .model import Binomial, SemigroupSet, Variety, enumerate_ideal_binomials, generator_set, in_ideal, normalize

__all__ = [
    "AraReport", "ConditionReport", "analyze", "check_conditions_ABCD", "check_conditions_I_II", "classify",
    "TripleResult", "almost_sci_triple", "build_A_matrices",
    "GluingCertificate", "GluingTree", "check_p_gluing", "completely_p_glued",
    "stci_pair_example35", "stci_pair_prime_power",
    "Binomial", "SemigroupSet", "Variety", "enumerate_ideal_binomials", "generator_set", "in_ideal", "normalize",
]
