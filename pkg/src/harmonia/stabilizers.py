"""Elements of g with trivial stabilizer in K and their centralizers.

* su(n,1):      x = the (n+1) x (n+1) elementary Jordan block.
* so(2n+1,1):   x = [[J, 0, e_n, 0], [0, -J^t, 0, e_1], [0, -e_n^t, 0, 0],
                     [-e_1^t, 0, 0, 0]]; up to signs a cyclic permutation matrix.
* so(2n,1):     x = x0 + y with x0 = [[J, D, 0], [0, -J^t, 0], [0, 0, 0]]
                principal nilpotent in k and y = [[0, 0, 0], [0, 0, e_1],
                [-e_1^t, 0, 0]] in p.

J is the n x n elementary Jordan block, D has +1 at (n-1, n) and -1 at
(n, n-1) (1-based), e_j the standard column vectors.

Only the Lie-algebra statement is certified: a zero-dimensional centralizer
in k.  The finite part of the stabilizer (the center of SL(n+1) in the su
case) is not modelled.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .invariants import VarietySpec, generator_polynomials, in_variety, nilpotency_check
from .liealg import (
    SO_EVEN,
    SO_ODD,
    SU,
    Family,
    MatrixLieAlgebra,
    bracket,
    build_algebra,
    is_zero_matrix,
    zeros,
)
from .report import VerificationReport, status_of


@dataclass(frozen=True)
class TrivialStabilizerElement:
    family: Family
    x: np.ndarray
    x0: np.ndarray | None = None
    y: np.ndarray | None = None


@dataclass(frozen=True)
class CentralizerResult:
    basis: tuple[np.ndarray, ...]
    coordinates: tuple[dict[int, Fraction], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def jordan_block(n: int) -> np.ndarray:
    j = zeros(n)
    for i in range(n - 1):
        j[i, i + 1] = 1
    return j


def principal_nilpotent_x0(n: int) -> np.ndarray:
    """x0 in k for so(2n,1), as a (2n+1) x (2n+1) matrix."""
    m = zeros(2 * n + 1)
    j = jordan_block(n)
    m[:n, :n] = j
    m[n:2 * n, n:2 * n] = -j.T
    if n >= 2:
        m[n - 2, 2 * n - 1] = 1
        m[n - 1, 2 * n - 2] = -1
    return m


def trivial_stabilizer_element(family: Family | str, n: int | None = None) -> TrivialStabilizerElement:
    if not isinstance(family, Family):
        family = Family(family, n)
    n = family.n
    if family.tag == SU:
        return TrivialStabilizerElement(family, jordan_block(n + 1))
    if family.tag == SO_ODD:
        size = 2 * n + 2
        x = zeros(size)
        j = jordan_block(n)
        x[:n, :n] = j
        x[n:2 * n, n:2 * n] = -j.T
        x[n - 1, 2 * n] = 1           # e_n in the third block column
        x[2 * n, 2 * n - 1] = -1      # -e_n^t in the third block row
        x[n, 2 * n + 1] = 1           # e_1 in the last column
        x[2 * n + 1, 0] = -1          # -e_1^t in the last row
        return TrivialStabilizerElement(family, x)
    x0 = principal_nilpotent_x0(n)
    y = zeros(2 * n + 1)
    y[n, 2 * n] = 1
    y[2 * n, 0] = -1
    return TrivialStabilizerElement(family, x0 + y, x0, y)


def centralizer_in_k(x: np.ndarray, algebra: MatrixLieAlgebra) -> CentralizerResult:
    """Kernel of Z -> [Z, x] on k, in reduced echelon form over the k-basis."""
    algebra.coordinates(x)
    size = algebra.size
    images = [bracket(z, x) for z in algebra.k_basis]
    rows = []
    for i in range(size):
        for j in range(size):
            row = {a: img[i, j] for a, img in enumerate(images) if img[i, j]}
            if row:
                rows.append(row)
    vectors = linalg.nullspace(rows, algebra.dim_k)
    basis = []
    for v in vectors:
        m = zeros(size)
        for a, c in v.items():
            m = m + algebra.k_basis[a] * c
        basis.append(m)
    return CentralizerResult(tuple(basis), tuple(vectors))


def bracket_rank(x: np.ndarray, algebra: MatrixLieAlgebra) -> int:
    """Rank of Z -> [Z, x] on k."""
    rows = [[v for v in bracket(z, x).flat] for z in algebra.k_basis]
    return linalg.matrix_rank(rows)


def orbit_dimension(x: np.ndarray, algebra: MatrixLieAlgebra) -> int:
    return algebra.dim_k - centralizer_in_k(x, algebra).dimension


def exp_nilpotent(m: np.ndarray, t: int | Fraction = 1) -> np.ndarray:
    """exp(t m) for a nilpotent matrix, exactly."""
    size = m.shape[0]
    out = np.identity(size, dtype=object)
    term = np.identity(size, dtype=object)
    for k in range(1, size + 1):
        term = term.dot(m) * (Fraction(t) / k)
        if is_zero_matrix(term):
            return out
        out = out + term
    if not is_zero_matrix(term.dot(m)):
        raise ValueError("matrix is not nilpotent")
    return out


def conjugate(x: np.ndarray, nilpotent: np.ndarray, t: int | Fraction = 1) -> np.ndarray:
    """Ad(exp(t N)) x."""
    return exp_nilpotent(nilpotent, t).dot(x).dot(exp_nilpotent(nilpotent, -t))


def nilpotent_k_directions(algebra: MatrixLieAlgebra) -> list[np.ndarray]:
    return [algebra.basis[a] for a in algebra.k_indices if any(algebra.weights[a])]


def random_k_conjugate(x: np.ndarray, algebra: MatrixLieAlgebra, rng: random.Random, steps: int = 3) -> np.ndarray:
    dirs = nilpotent_k_directions(algebra)
    for _ in range(steps):
        if not dirs:
            break
        x = conjugate(x, rng.choice(dirs), rng.choice([-2, -1, 1, 2]))
    return x


def verify_trivial_stabilizer(family: Family | str, n: int | None = None, seed: int = 0) -> VerificationReport:
    """Trivial centralizer, orbit dim = dim k = dim N(xi, eta) for the explicit element."""
    if not isinstance(family, Family):
        family = Family(family, n)
    algebra = build_algebra(family)
    elem = trivial_stabilizer_element(family)
    in_g = algebra.contains(elem.x) and algebra.satisfies_relation(elem.x)
    cdim = centralizer_in_k(elem.x, algebra).dimension
    orbit = algebra.dim_k - cdim
    dim_g, dim_k, ell, k = algebra.dims
    variety_dim = dim_g - ell - k
    computed = {
        "in_g": in_g,
        "centralizer_dim": cdim,
        "orbit_dim": orbit,
        "variety_dim": variety_dim,
    }
    if family.tag == SO_EVEN:
        computed["x0_centralizer_dim"] = centralizer_in_k(elem.x0, algebra).dimension
    ok = in_g and cdim == 0 and orbit == dim_k and variety_dim == dim_k
    if family.tag == SO_EVEN:
        ok = ok and computed["x0_centralizer_dim"] == family.n
    params: dict = {}
    # generator values are only cheap to produce at desk scale
    if algebra.dim <= 28:
        inv = generator_polynomials(algebra)
        spec = VarietySpec.at(inv, elem.x)
        params = {"xi": list(spec.xi), "eta": list(spec.eta)}
    expected = {"centralizer_dim": 0, "orbit_dim": dim_k, "variety_dim": dim_k}
    if family.tag == SO_EVEN:
        expected["x0_centralizer_dim"] = family.n
    return VerificationReport(
        id="trivial-stabilizer",
        family=family.tag,
        n=family.n,
        params=params,
        expected=expected,
        computed=computed,
        status=status_of(ok),
    )


# -- centralizer of x0 for so(2n,1) ---------------------------------------------

def _block_k(n: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m = zeros(2 * n + 1)
    m[:n, :n] = a
    m[:n, n:2 * n] = b
    m[n:2 * n, n:2 * n] = -a.T
    return m


def explicit_centralizer(n: int, alphas: Sequence) -> tuple[np.ndarray, np.ndarray]:
    """The displayed (A, B) blocks for n = 7 and n = 6, entered literally."""
    a1, a2, a3, a4, a5, a6 = alphas[:6]
    if n == 7:
        a7 = alphas[6]
        A = [[0, a7, 0, a6, 0, a5, -a4],
             [0, 0, a7, 0, a6, 0, a5],
             [0, 0, 0, a7, 0, a6, 0],
             [0, 0, 0, 0, a7, 0, a6],
             [0, 0, 0, 0, 0, a7, 0],
             [0, 0, 0, 0, 0, 0, a7],
             [0, 0, 0, 0, 0, 0, 0]]
        B = [[0, a1, 0, a2, 0, a3, a4],
             [-a1, 0, -a2, 0, -a3, 0, a5],
             [0, a2, 0, a3, 0, -2 * a5, 0],
             [-a2, 0, -a3, 0, 2 * a5, 0, a6],
             [0, a3, 0, -2 * a5, 0, -2 * a6, 0],
             [-a3, 0, 2 * a5, 0, 2 * a6, 0, a7],
             [-a4, -a5, 0, -a6, 0, -a7, 0]]
    elif n == 6:
        A = [[0, a6, 0, a5, 0, a4 - a3],
             [0, 0, a6, 0, a5, 0],
             [0, 0, 0, a6, 0, a5],
             [0, 0, 0, 0, a6, 0],
             [0, 0, 0, 0, 0, a6],
             [0, 0, 0, 0, 0, 0]]
        B = [[0, a1, 0, a2, 0, a3],
             [-a1, 0, -a2, 0, -a4, 0],
             [0, a2, 0, a4, 0, a5],
             [-a2, 0, -a4, 0, -2 * a5, 0],
             [0, a4, 0, 2 * a5, 0, a6],
             [-a3, 0, -a5, 0, -a6, 0]]
    else:
        raise ValueError("explicit matrices exist only for n = 6 and n = 7")
    return np.array(A, dtype=object), np.array(B, dtype=object)


def pattern_constraints(n: int) -> list[tuple[str, tuple[int, int], dict[int, int]]]:
    """Entries of (A, B) fixed by the parametrized description, as linear forms in alpha.

    Each item is (block, (row, col), {alpha index (1-based): coefficient}).
    Covered: first row of B, last column of B, first row of A.  Entries
    with an empty form must vanish.
    """
    out: list[tuple[str, tuple[int, int], dict[int, int]]] = []
    if n % 2:
        k = (n - 1) // 2
        # first row of B: 0 a1 0 a2 ... 0 a_k a_{k+1}
        row = [dict() for _ in range(n)]
        for j in range(1, k + 1):
            row[2 * j - 1] = {j: 1}
        row[n - 1] = {k + 1: 1}
        # last column of B: a_{k+1} a_{k+2} 0 a_{k+3} 0 ... a_{2k+1} 0
        col = [dict() for _ in range(n)]
        col[0] = {k + 1: 1}
        if n > 1:
            col[1] = {k + 2: 1}
        for j in range(k + 3, 2 * k + 2):
            col[2 * (j - k - 2) + 1] = {j: 1}
        # first row of A: 0 a_{2k+1} 0 a_{2k} ... 0 a_{k+2} -a_{k+1}
        arow = [dict() for _ in range(n)]
        for j in range(2 * k + 1, k + 1, -1):
            arow[2 * (2 * k + 1 - j) + 1] = {j: 1}
        arow[n - 1] = {k + 1: -1}
    else:
        k = n // 2
        row = [dict() for _ in range(n)]
        for j in range(1, k + 1):
            row[2 * j - 1] = {j: 1}
        # last column of B: a_k 0 a_{k+2} 0 a_{k+3} ... 0 a_{2k} 0
        col = [dict() for _ in range(n)]
        col[0] = {k: 1}
        for j in range(k + 2, 2 * k + 1):
            col[2 * (j - k - 1)] = {j: 1}
        # first row of A: 0 a_{2k} 0 a_{2k-1} ... 0 a_{k+2} 0 (a_{k+1} - a_k)
        arow = [dict() for _ in range(n)]
        for j in range(2 * k, k + 1, -1):
            arow[2 * (2 * k - j) + 1] = {j: 1}
        arow[n - 1] = {k + 1: 1, k: -1}
    for c, form in enumerate(row):
        out.append(("B", (0, c), form))
    for r, form in enumerate(col):
        out.append(("B", (r, n - 1), form))
    for c, form in enumerate(arow):
        out.append(("A", (0, c), form))
    return out


def _blocks(n: int, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return z[:n, :n], z[:n, n:2 * n], z[n:2 * n, :n]


def verify_centralizer_structure(n: int) -> VerificationReport:
    """Compare the computed centralizer of x0 in k with the parametrized form.

    Checks: dimension n; every element has C = 0 and A an upper-triangular
    Toeplitz matrix (a polynomial in J with zero diagonal); the projection
    onto (first row of B, last column of B, first row of A) is exactly the
    span of the alpha-pattern.  For n = 6, 7 the explicit matrices are also
    checked to commute with x0 for every unit parameter.
    """
    if not 2 <= n <= 7:
        raise ValueError("n must be between 2 and 7")
    algebra = build_algebra(Family(SO_EVEN, n))
    x0 = principal_nilpotent_x0(n)
    cent = centralizer_in_k(x0, algebra)
    computed: dict = {"centralizer_dim": cent.dimension}

    shape_ok = True
    for z in cent.basis:
        a, _, c = _blocks(n, z)
        toeplitz = all(a[i, j] == (a[0, j - i] if j > i else 0) for i in range(n) for j in range(n))
        shape_ok &= toeplitz and is_zero_matrix(c)
    computed["A_polynomial_in_J_and_C_zero"] = shape_ok

    # projection of the centralizer onto the constrained entries
    constraints = pattern_constraints(n)

    def entry(z, block, rc):
        a, b, _ = _blocks(n, z)
        return (a if block == "A" else b)[rc]

    proj_cent = [[entry(z, blk, rc) for blk, rc, _ in constraints] for z in cent.basis]
    proj_pattern = [[form.get(i, 0) for _, _, form in constraints] for i in range(1, n + 1)]
    r_cent = linalg.matrix_rank(proj_cent)
    r_pat = linalg.matrix_rank(proj_pattern)
    r_both = linalg.matrix_rank(proj_cent + proj_pattern)
    computed["pattern_projection"] = {"centralizer": r_cent, "pattern": r_pat, "joint": r_both}
    proj_ok = r_cent == r_pat == r_both == n

    explicit_ok = True
    if n in (6, 7):
        for i in range(n):
            alphas = [int(j == i) for j in range(7)]
            a, b = explicit_centralizer(n, alphas)
            z = _block_k(n, a, b)
            explicit_ok &= algebra.contains(z) and is_zero_matrix(bracket(z, x0))
        computed["explicit_matrices_commute"] = explicit_ok

    ok = cent.dimension == n and shape_ok and proj_ok and explicit_ok
    return VerificationReport(
        id="centralizer-structure",
        family=SO_EVEN,
        n=n,
        params={},
        expected={"centralizer_dim": n},
        computed=computed,
        status=status_of(ok),
    )


# -- nilpotent variety sampling --------------------------------------------------

def _regular_cocharacter(algebra: MatrixLieAlgebra) -> tuple[int, ...]:
    """Integer lambda with lambda(w) != 0 for every nonzero root weight."""
    bound = 1 + max(abs(c) for w in algebra.weights for c in w)
    return tuple((2 * bound + 1) ** i for i in range(algebra.rank_k))


def _positive_element(algebra: MatrixLieAlgebra, rng: random.Random, part: range | None = None) -> np.ndarray:
    lam = _regular_cocharacter(algebra)
    idx = part if part is not None else range(algebra.dim)
    coords = [0] * algebra.dim
    for a in idx:
        if sum(l * w for l, w in zip(lam, algebra.weights[a])) > 0:
            coords[a] = rng.randint(-3, 3)
    return algebra.element(coords)


def variety_samples(algebra: MatrixLieAlgebra, count: int = 100, seed: int = 0) -> list[tuple[str, np.ndarray]]:
    """Seeded mix of elements inside and outside the nilpotent variety.

    Kinds cycle through: random elements; positive-weight combinations
    (x and pr x nilpotent); their K-conjugates; their conjugates by
    exp(t N) with N a p root vector (x stays nilpotent, pr x usually does
    not); random elements of p; positive-weight elements of p.
    """
    rng = random.Random(seed)
    p_dirs = [algebra.basis[a] for a in algebra.p_indices if any(algebra.weights[a])]
    kinds = ("generic", "positive", "k-conjugate", "p-conjugate", "p-random", "p-positive")
    out = []
    for i in range(count):
        kind = kinds[i % len(kinds)]
        if kind == "generic":
            x = algebra.element([rng.randint(-3, 3) for _ in range(algebra.dim)])
        elif kind == "positive":
            x = _positive_element(algebra, rng)
        elif kind == "k-conjugate":
            x = random_k_conjugate(_positive_element(algebra, rng), algebra, rng)
        elif kind == "p-conjugate":
            x = conjugate(_positive_element(algebra, rng), rng.choice(p_dirs), rng.choice([-1, 1, 2]))
        elif kind == "p-random":
            coords = [0] * algebra.dim
            for a in algebra.p_indices:
                coords[a] = rng.randint(-3, 3)
            x = algebra.element(coords)
        else:
            x = _positive_element(algebra, rng, algebra.p_indices)
        out.append((kind, x))
    return out


def verify_nilpotent_variety(family: Family | str, n: int | None = None,
                             count: int = 100, seed: int = 0) -> VerificationReport:
    """On seeded samples, all generators vanish iff x and pr x are nilpotent."""
    if not isinstance(family, Family):
        family = Family(family, n)
    algebra = build_algebra(family)
    inv = generator_polynomials(algebra)
    spec = VarietySpec.nilpotent(algebra)
    tally: dict[str, int] = {"in_N": 0, "x_nilpotent_only": 0, "neither": 0, "pr_nilpotent_only": 0}
    disagreements = []
    for i, (kind, x) in enumerate(variety_samples(algebra, count, seed)):
        nil_x, nil_pr = nilpotency_check(x, algebra)
        inside = in_variety(x, spec, inv)
        if inside != (nil_x and nil_pr):
            disagreements.append({"sample": i, "kind": kind})
        key = "in_N" if nil_x and nil_pr else "x_nilpotent_only" if nil_x else "pr_nilpotent_only" if nil_pr else "neither"
        tally[key] += 1
    return VerificationReport(
        id="nilpotent-variety",
        family=family.tag,
        n=family.n,
        params={"samples": count, "seed": seed},
        expected={"disagreements": 0},
        computed={"disagreements": len(disagreements), "tally": tally, "first_disagreements": disagreements[:5]},
        status=status_of(not disagreements),
    )
