"""Generators of the K-invariant polynomials on g and related tests.

Generators (coordinates are those of the algebra basis):

* su(n,1):      f_i = Tr x^(i+1), i = 1..n;   phi_j = Tr b^j, j = 1..n,
                where b is the gl(n) block of pr x.
* so(2n,1):     f_i = Tr x^(2i), i = 1..n;    phi_j = Tr (pr x)^(2j), j < n,
                phi_n = Pf(G0 . B) with B the 2n x 2n block of pr x.
* so(2n+1,1):   f_i = Tr x^(2i), i = 1..n;    f_(n+1) = Pf(G . x),
                phi_j = Tr (pr x)^(2j), j = 1..n.

For X with X^t = -G X G the matrix G X is skew-symmetric, so the Pfaffian
generators square to det(G) * det(X).  ``det(G0) = (-1)^n`` for both
orthogonal shapes; that constant is recorded in ``InvariantSet.pfaffian_signs``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .liealg import (
    SO_EVEN,
    SO_ODD,
    SU,
    Family,
    MatrixLieAlgebra,
    coadjoint_derivation,
    gamma0,
    is_nilpotent,
)
from .ratpoly import Polynomial, evaluate, homogeneous_basis, kernel_of_linear_maps

SymMatrix = list[list[Polynomial]]


class NotSkewSymmetric(ValueError):
    pass


# -- symbolic matrices -------------------------------------------------------

def sym_matmul(a: SymMatrix, b: SymMatrix) -> SymMatrix:
    n, m, r = len(a), len(b), len(b[0])
    nvars = a[0][0].nvars
    out = []
    for i in range(n):
        row = []
        for j in range(r):
            acc = Polynomial.zero(nvars)
            for t in range(m):
                if a[i][t] and b[t][j]:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def trace_power(x: SymMatrix, k: int) -> Polynomial:
    """Tr x^k, computed as sum_ij (x^a)_ij (x^b)_ji with a + b = k."""
    nvars = x[0][0].nvars
    if k == 0:
        return Polynomial.constant(len(x), nvars)
    a = (k + 1) // 2
    powers = [x]
    while len(powers) < a:
        powers.append(sym_matmul(powers[-1], x))
    pa, pb = powers[a - 1], powers[k - a - 1] if k - a else None
    total = Polynomial.zero(nvars)
    size = len(x)
    if pb is None:
        for i in range(size):
            total = total + pa[i][i]
        return total
    for i in range(size):
        for j in range(size):
            if pa[i][j] and pb[j][i]:
                total = total + pa[i][j] * pb[j][i]
    return total


def _sym_scale(g: np.ndarray, x: SymMatrix) -> SymMatrix:
    """Left multiplication of a symbolic matrix by a rational matrix."""
    nvars = x[0][0].nvars
    size = len(x)
    out = []
    for i in range(size):
        row = []
        for j in range(len(x[0])):
            acc = Polynomial.zero(nvars)
            for t in range(size):
                if g[i, t]:
                    acc = acc + x[t][j].scale(g[i, t])
            row.append(acc)
        out.append(row)
    return out


def pfaffian(m: Sequence[Sequence]) -> Polynomial | Fraction:
    """Pfaffian by expansion along the first row.

    Normalized so that the block form with ``[[0, 1], [-1, 0]]`` blocks has
    Pfaffian +1.  Entries may be polynomials or rationals.
    """
    size = len(m)
    if size % 2:
        raise NotSkewSymmetric("Pfaffian needs an even-sized matrix")
    for i in range(size):
        if len(m[i]) != size:
            raise NotSkewSymmetric("matrix is not square")
        for j in range(i, size):
            if m[i][j] != -m[j][i]:
                raise NotSkewSymmetric(f"entries ({i},{j}) and ({j},{i}) are not opposite")
    sample = next((v for row in m for v in row if isinstance(v, Polynomial)), None)
    one = Polynomial.constant(1, sample.nvars) if sample is not None else Fraction(1)
    memo: dict[tuple[int, ...], object] = {}

    def pf(idx: tuple[int, ...]):
        if not idx:
            return one
        if idx in memo:
            return memo[idx]
        i0, rest = idx[0], idx[1:]
        acc = one * 0
        for pos, j in enumerate(rest):
            entry = m[i0][j]
            if not entry:
                continue
            sub = pf(rest[:pos] + rest[pos + 1:])
            term = entry * sub
            acc = acc - term if pos % 2 else acc + term
        memo[idx] = acc
        return acc

    return pf(tuple(range(size)))


def determinant(m: Sequence[Sequence]) -> Polynomial | Fraction:
    """Symbolic determinant by Laplace expansion with memoized minors."""
    size = len(m)
    sample = next((v for row in m for v in row if isinstance(v, Polynomial)), None)
    one = Polynomial.constant(1, sample.nvars) if sample is not None else Fraction(1)
    memo: dict[tuple[int, ...], object] = {}

    def minor(row: int, cols: tuple[int, ...]):
        if row == size:
            return one
        key = cols
        if key in memo:
            return memo[key]
        acc = one * 0
        for pos, c in enumerate(cols):
            entry = m[row][c]
            if not entry:
                continue
            term = entry * minor(row + 1, cols[:pos] + cols[pos + 1:])
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(size)))


# -- generator sets ----------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    label: str
    poly: Polynomial
    degree: int


@dataclass(frozen=True, eq=False)
class InvariantSet:
    algebra: MatrixLieAlgebra
    generators: tuple[Generator, ...]
    # label -> c with generator^2 = c * det(matrix it was built from)
    pfaffian_signs: dict[str, int] = field(default_factory=dict)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    @property
    def polys(self) -> tuple[Polynomial, ...]:
        return tuple(g.poly for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def values_at(self, x: np.ndarray) -> tuple[Fraction, ...]:
        c = self.algebra.coordinates(x)
        return tuple(evaluate(g.poly, c) for g in self.generators)

    @cached_property
    def split(self) -> tuple[tuple[Generator, ...], tuple[Generator, ...]]:
        """(f generators, phi generators)."""
        fs = tuple(g for g in self.generators if g.label.startswith("f"))
        phis = tuple(g for g in self.generators if g.label.startswith("phi"))
        return fs, phis


def generator_degrees(family: Family) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Degrees of (f_1.., phi_1..) without building the polynomials."""
    n = family.n
    if family.tag == SU:
        return tuple(range(2, n + 2)), tuple(range(1, n + 1))
    if family.tag == SO_EVEN:
        return tuple(range(2, 2 * n + 1, 2)), tuple(range(2, 2 * n - 1, 2)) + (n,)
    return tuple(range(2, 2 * n + 1, 2)) + (n + 1,), tuple(range(2, 2 * n + 1, 2))


_GEN_CACHE: dict[int, InvariantSet] = {}


def generator_polynomials(algebra: MatrixLieAlgebra) -> InvariantSet:
    key = id(algebra)
    if key in _GEN_CACHE and _GEN_CACHE[key].algebra is algebra:
        return _GEN_CACHE[key]
    n = algebra.family.n
    tag = algebra.family.tag
    x = algebra.generic_element()
    prx = algebra.generic_element(k_only=True)
    gens: list[Generator] = []
    signs: dict[str, int] = {}
    if tag == SU:
        for i in range(1, n + 1):
            gens.append(Generator(f"f{i}", trace_power(x, i + 1), i + 1))
        b = [row[:n] for row in prx[:n]]
        for j in range(1, n + 1):
            gens.append(Generator(f"phi{j}", trace_power(b, j), j))
    elif tag == SO_EVEN:
        for i in range(1, n + 1):
            gens.append(Generator(f"f{i}", trace_power(x, 2 * i), 2 * i))
        for j in range(1, n):
            gens.append(Generator(f"phi{j}", trace_power(prx, 2 * j), 2 * j))
        block = [row[:2 * n] for row in prx[:2 * n]]
        g0 = gamma0(algebra)
        gens.append(Generator(f"phi{n}", pfaffian(_sym_scale(g0, block)), n))
        signs[f"phi{n}"] = int(linalg.determinant(g0.tolist()))
    else:
        for i in range(1, n + 1):
            gens.append(Generator(f"f{i}", trace_power(x, 2 * i), 2 * i))
        gens.append(Generator(f"f{n + 1}", pfaffian(_sym_scale(algebra.gamma, x)), n + 1))
        signs[f"f{n + 1}"] = int(linalg.determinant(algebra.gamma.tolist()))
        for j in range(1, n + 1):
            gens.append(Generator(f"phi{j}", trace_power(prx, 2 * j), 2 * j))
    inv = InvariantSet(algebra, tuple(gens), signs)
    _GEN_CACHE[key] = inv
    return inv


def reference_sign(algebra: MatrixLieAlgebra) -> int:
    """Sign usually quoted in the squared identity for the Pfaffian generator."""
    n = algebra.family.n
    if algebra.family.tag == SO_EVEN:
        return (-1) ** n
    if algebra.family.tag == SO_ODD:
        return (-1) ** (n + 1)
    raise ValueError("su has no Pfaffian generator")


def squared_identity_residual(inv: InvariantSet) -> tuple[str, int, Polynomial]:
    """Return (label, c, Pf^2 - c*det) for the Pfaffian generator."""
    algebra = inv.algebra
    (label, c), = inv.pfaffian_signs.items()
    gen = next(g for g in inv.generators if g.label == label)
    if algebra.family.tag == SO_ODD:
        mat = algebra.generic_element()
    else:
        s = 2 * algebra.family.n
        mat = [row[:s] for row in algebra.generic_element(k_only=True)[:s]]
    return label, c, gen.poly * gen.poly - determinant(mat).scale(c)


def is_invariant(f: Polynomial, algebra: MatrixLieAlgebra) -> bool:
    return all(coadjoint_derivation(i, f, algebra).is_zero() for i in algebra.k_indices)


def derivation_rows(algebra: MatrixLieAlgebra, degree: int) -> list[dict[int, Fraction]]:
    """Stacked matrices of all k-derivations on P^degree (rows: target monomials)."""
    basis = homogeneous_basis(algebra.dim, degree)
    rows: list[dict[int, Fraction]] = []
    for z in algebra.k_indices:
        target: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for j, m in enumerate(basis):
            img = coadjoint_derivation(z, Polynomial(algebra.dim, {m: 1}), algebra)
            for tm, c in img.items():
                target.setdefault(tm, {})[j] = c
        rows.extend(target.values())
    return rows


def invariant_basis(algebra: MatrixLieAlgebra, degree: int) -> list[Polynomial]:
    basis = homogeneous_basis(algebra.dim, degree)
    return kernel_of_linear_maps([derivation_rows(algebra, degree)], basis)


def invariant_dimension(algebra: MatrixLieAlgebra, degree: int) -> int:
    """dim P^degree(g)^K, by exact kernel computation."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    return len(invariant_basis(algebra, degree))


def invariant_series(degrees: Sequence[int], cutoff: int) -> list[int]:
    """Coefficients of prod 1/(1 - t^d) up to ``cutoff``."""
    coeffs = [1] + [0] * cutoff
    for d in degrees:
        for k in range(d, cutoff + 1):
            coeffs[k] += coeffs[k - d]
    return coeffs


def jacobian_at(inv: InvariantSet, point: Sequence) -> list[list[Fraction]]:
    return [[evaluate(g.poly.derivative(a), point) for a in range(inv.algebra.dim)]
            for g in inv.generators]


def jacobian_generic_rank(inv: InvariantSet, seed: int = 0, attempts: int = 5) -> int:
    """Max rank of the generators' Jacobian over seeded integer points.

    Points are drawn from [-9, 9]^dim; each retry doubles the box.
    """
    rng = random.Random(seed)
    best, box = 0, 9
    target = len(inv)
    for _ in range(attempts):
        point = [rng.randint(-box, box) for _ in range(inv.algebra.dim)]
        best = max(best, linalg.matrix_rank(jacobian_at(inv, point)))
        if best == target:
            break
        box *= 2
    return best


# -- varieties ---------------------------------------------------------------

@dataclass(frozen=True)
class VarietySpec:
    xi: tuple[Fraction, ...]
    eta: tuple[Fraction, ...]

    @classmethod
    def nilpotent(cls, algebra: MatrixLieAlgebra) -> "VarietySpec":
        return cls((Fraction(0),) * algebra.rank_g, (Fraction(0),) * algebra.rank_k)

    @classmethod
    def at(cls, inv: InvariantSet, x: np.ndarray) -> "VarietySpec":
        vals = dict(zip((g.label for g in inv.generators), inv.values_at(x)))
        fs, phis = inv.split
        return cls(tuple(vals[g.label] for g in fs), tuple(vals[g.label] for g in phis))


def in_variety(x: np.ndarray, spec: VarietySpec, inv: InvariantSet) -> bool:
    """True iff every generator takes its prescribed value at ``x``."""
    algebra = inv.algebra
    if len(spec.xi) != algebra.rank_g or len(spec.eta) != algebra.rank_k:
        raise ValueError("variety spec does not match the algebra's ranks")
    return VarietySpec.at(inv, x) == VarietySpec(tuple(map(Fraction, spec.xi)), tuple(map(Fraction, spec.eta)))


def nilpotency_check(x: np.ndarray, algebra: MatrixLieAlgebra) -> tuple[bool, bool]:
    """(x nilpotent, pr x nilpotent)."""
    return is_nilpotent(x), is_nilpotent(algebra.project_to_k(x))
