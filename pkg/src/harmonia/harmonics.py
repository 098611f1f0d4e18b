"""K-harmonic polynomials on g, degree by degree.

The harmonic space H^d is the joint kernel on P^d of the operators d(u_i),
where u_i runs over the generators of P(g)^K transported to S(g) through
the trace form.  Since d(uv) = d(u) d(v), the generators alone cut out the
same space as the whole ideal S_+(g)^K.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from . import linalg
from .invariants import InvariantSet
from .liealg import MatrixLieAlgebra
from .ratpoly import (
    Polynomial,
    coefficient_row,
    homogeneous_basis,
    kernel_of_linear_maps,
    monomial_index,
    operator_matrix,
)
from .report import VerificationReport, status_of


@dataclass(frozen=True)
class HarmonicSpace:
    degree: int
    basis: tuple[Polynomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class HilbertData:
    degrees: tuple[int, ...]
    coefficients: tuple[int, ...]


def dualize(f: Polynomial, algebra: MatrixLieAlgebra) -> Polynomial:
    """Transport f in P(g) to S(g) via the trace form.

    The coordinate function c_a corresponds to sum_b G^{-1}_{ab} X_b, so each
    variable is replaced by the matching row of the inverse Gram matrix.
    """
    ginv = algebra.gram_inverse
    images = [Polynomial.linear(row) for row in ginv]
    return f.substitute_linear(images)


def undualize(u: Polynomial, algebra: MatrixLieAlgebra) -> Polynomial:
    images = [Polynomial.linear(row) for row in algebra.gram]
    return u.substitute_linear(images)


@lru_cache(maxsize=None)
def dual_symbols(inv: InvariantSet) -> tuple[Polynomial, ...]:
    return tuple(dualize(g.poly, inv.algebra) for g in inv.generators)


def harmonic_rows(inv: InvariantSet, degree: int) -> list[dict[int, Fraction]]:
    basis = homogeneous_basis(inv.algebra.dim, degree)
    rows: list[dict[int, Fraction]] = []
    for g, u in zip(inv.generators, dual_symbols(inv)):
        if 1 <= g.degree <= degree:
            rows.extend(operator_matrix(u, basis))
    return rows


@lru_cache(maxsize=None)
def harmonic_space(inv: InvariantSet, degree: int) -> HarmonicSpace:
    """Joint kernel of the dualized generators on P^degree(g)."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    basis = homogeneous_basis(inv.algebra.dim, degree)
    return HarmonicSpace(degree, tuple(kernel_of_linear_maps([harmonic_rows(inv, degree)], basis)))


def ideal_rows(inv: InvariantSet, degree: int) -> list[dict[int, Fraction]]:
    """Coordinates of m * g_i for every generator g_i and monomial m of complementary degree."""
    dim = inv.algebra.dim
    index = monomial_index(dim, degree)
    rows = []
    for g in inv.generators:
        rest = degree - g.degree
        if rest < 0:
            continue
        for m in homogeneous_basis(dim, rest):
            rows.append(coefficient_row(Polynomial(dim, {m: 1}) * g.poly, index))
    return rows


@lru_cache(maxsize=None)
def ideal_dimension(inv: InvariantSet, degree: int) -> int:
    if degree < 0:
        raise ValueError("degree must be non-negative")
    n = len(homogeneous_basis(inv.algebra.dim, degree))
    return linalg.blocked_rank(ideal_rows(inv, degree), n)


def verify_direct_sum(inv: InvariantSet, degree: int) -> VerificationReport:
    """dim P^d = dim ideal^d + dim H^d and the two pieces intersect trivially."""
    dim = inv.algebra.dim
    total = comb(dim + degree - 1, degree)
    ideal = ideal_rows(inv, degree)
    ideal_dim = linalg.blocked_rank(ideal, total)
    h = harmonic_space(inv, degree)
    index = monomial_index(dim, degree)
    joint = linalg.blocked_rank(ideal + [coefficient_row(p, index) for p in h.basis], total)
    fam = inv.algebra.family
    ok = total == ideal_dim + h.dimension and joint == ideal_dim + h.dimension
    return VerificationReport(
        id="harmonic-direct-sum",
        family=fam.tag,
        n=fam.n,
        params={"degree": degree},
        expected={"dim_P": total},
        computed={"ideal": ideal_dim, "harmonic": h.dimension, "joint_rank": joint},
        status=status_of(ok),
    )


def hilbert_coefficients(degrees: Sequence[int], dim_g: int, cutoff: int) -> HilbertData:
    """Coefficients of prod(1 - t^d_i) / (1 - t)^dim_g up to ``cutoff``."""
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    num = numerator_coefficients(degrees, cutoff)
    coeffs = tuple(sum(num[j] * comb(dim_g - 1 + k - j, k - j) for j in range(k + 1))
                   for k in range(cutoff + 1))
    return HilbertData(tuple(degrees), coeffs)


def numerator_coefficients(degrees: Sequence[int], cutoff: int) -> list[int]:
    """Coefficients of prod(1 - t^d_i) truncated at ``cutoff``."""
    num = [1] + [0] * cutoff
    for d in degrees:
        for k in range(cutoff, d - 1, -1):
            num[k] -= num[k - d]
    return num
