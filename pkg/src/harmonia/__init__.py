"""Exact-arithmetic checks for K-invariants and K-harmonic polynomials on su(n,1), so(2n,1), so(2n+1,1)."""

from .liealg import FAMILIES, SO_EVEN, SO_ODD, SU, Family, MatrixLieAlgebra, build_algebra
from .ratpoly import DifferentialOperator, Polynomial
from .invariants import InvariantSet, generator_polynomials
from .harmonics import harmonic_space, verify_direct_sum
from .repthy import TorusCharacter, decompose, irreducible_character, multiplicity_report
from .stabilizers import centralizer_in_k, trivial_stabilizer_element, verify_trivial_stabilizer
from .report import RunManifest, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "FAMILIES", "SU", "SO_EVEN", "SO_ODD", "Family", "MatrixLieAlgebra", "build_algebra",
    "Polynomial", "DifferentialOperator", "InvariantSet", "generator_polynomials",
    "harmonic_space", "verify_direct_sum", "TorusCharacter", "decompose",
    "irreducible_character", "multiplicity_report", "centralizer_in_k", "trivial_stabilizer_element",
    "verify_trivial_stabilizer", "RunManifest", "VerificationReport", "__version__",
]
